#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qrplan/error.hpp"

namespace qrplan {

enum class Algorithm { sca, mca_gp, mca_flex, exact };

inline const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::sca: return "sca";
        case Algorithm::mca_gp: return "mca-gp";
        case Algorithm::mca_flex: return "mca-flex";
        case Algorithm::exact: return "exact";
    }
    return "sca";
}

inline Algorithm algorithm_from_string(const std::string& s) {
    if (s == "sca") return Algorithm::sca;
    if (s == "mca-gp") return Algorithm::mca_gp;
    if (s == "mca-flex") return Algorithm::mca_flex;
    if (s == "exact") return Algorithm::exact;
    fail("unknown algorithm \"" + s + "\" (expected sca, mca-gp, mca-flex, or exact)");
}

enum class CenterProvenance { access_rule, greedy_cover };

struct Center {
    std::string id;
    CenterProvenance provenance = CenterProvenance::greedy_cover;
};

// Centers in selection order; order matters for frontier-style invariants.
struct CenterSet {
    std::vector<Center> entries;

    bool contains(const std::string& id) const {
        for (const auto& c : entries)
            if (c.id == id) return true;
        return false;
    }
    std::vector<std::string> ids_in_order() const {
        std::vector<std::string> out;
        out.reserve(entries.size());
        for (const auto& c : entries) out.push_back(c.id);
        return out;
    }
    std::vector<std::string> sorted_ids() const {
        auto out = ids_in_order();
        std::sort(out.begin(), out.end());
        return out;
    }
    size_t size() const { return entries.size(); }
};

// A repeater site created by cutting a link. `offset_km` is measured from
// endpoint `edge_a`, where (edge_a, edge_b) names a link of the topology the
// plan was computed against, in canonical (lex-smaller first) orientation.
// Several cuts of one link appear in ascending offset order.
struct SyntheticNode {
    std::string id;
    std::string edge_a;
    std::string edge_b;
    double offset_km = 0.0;
};

struct PlanConfig {
    double l_max_km = 0.0;
    int k = 1;
    Algorithm algorithm = Algorithm::sca;
};

struct Placement {
    Algorithm algorithm = Algorithm::sca;
    double l_max_km = 0.0;
    int k = 1;
    std::string topology_name;
    CenterSet centers;
    std::vector<std::string> intermediates;    // sorted lexicographically
    std::vector<SyntheticNode> synthetic_added;  // creation order

    int total_repeaters() const {
        return static_cast<int>(centers.size() + intermediates.size() + synthetic_added.size());
    }

    // Every selected repeater id: centers, intermediates, then synthetics.
    std::vector<std::string> repeater_ids() const {
        std::vector<std::string> out = centers.ids_in_order();
        out.insert(out.end(), intermediates.begin(), intermediates.end());
        for (const auto& s : synthetic_added) out.push_back(s.id);
        return out;
    }
};

// Why a run could not produce a feasible placement. Carries the first
// offending pair or node when one is known.
struct Infeasibility {
    std::string reason;
    std::optional<std::pair<std::string, std::string>> failing_pair;
    std::optional<std::string> node;
};

struct PlanResult {
    std::optional<Placement> placement;
    std::optional<Infeasibility> infeasibility;

    bool feasible() const { return placement.has_value(); }

    static PlanResult ok(Placement p) { return PlanResult{std::move(p), std::nullopt}; }
    static PlanResult fail(Infeasibility i) { return PlanResult{std::nullopt, std::move(i)}; }
};

}  // namespace qrplan
