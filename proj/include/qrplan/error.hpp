#pragma once

#include <stdexcept>
#include <string>

namespace qrplan {

// Raised for input, validation, and budget problems. The CLI maps it to
// exit code 1; infeasible-but-valid outcomes are reported as values, not
// exceptions (see PlanResult / Infeasibility).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

[[noreturn]] inline void fail(const std::string& message) {
    throw Error(message);
}

}  // namespace qrplan
