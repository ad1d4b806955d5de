#pragma once

#include <set>
#include <string>
#include <vector>

#include "qrplan/distance.hpp"
#include "qrplan/topology.hpp"

namespace qrplan {

// Nodes within graph-path distance l_max of a center, boundary inclusive.
// Ghost nodes are never members and never centers; coverage reasons about
// repeater sites only.
struct CoverageSet {
    std::string center;
    double l_max_km = 0.0;
    std::vector<std::string> members;  // sorted lexicographically, includes the center
};

inline CoverageSet coverage(const Topology& t, const DistanceOracle& o,
                            const std::string& center_id, double l_max) {
    const int c = t.index_of(center_id);
    if (t.is_ghost(c)) fail("node \"" + center_id + "\" is a ghost and cannot act as a center");
    CoverageSet cs{center_id, l_max, {}};
    for (int v = 0; v < t.node_count(); ++v) {
        if (t.is_ghost(v)) continue;
        if (o.at(c, v) <= l_max) cs.members.push_back(t.node(v).id);
    }
    return cs;
}

// How many of the still-uncovered nodes the candidate would cover.
inline int coverage_score(const Topology& t, const DistanceOracle& o, const std::string& node_id,
                          const std::set<std::string>& uncovered, double l_max) {
    const int c = t.index_of(node_id);
    if (t.is_ghost(c)) fail("node \"" + node_id + "\" is a ghost and cannot act as a center");
    int score = 0;
    for (const auto& uid : uncovered) {
        const int u = t.index_of(uid);
        if (t.is_ghost(u)) continue;
        if (o.at(c, u) <= l_max) ++score;
    }
    return score;
}

}  // namespace qrplan
