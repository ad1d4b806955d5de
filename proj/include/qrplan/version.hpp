#pragma once

namespace qrplan {

// Written into every solution file; deliberately a constant so repeated
// runs produce byte-identical outputs.
inline constexpr const char* tool_version = "0.1.0";

}  // namespace qrplan
