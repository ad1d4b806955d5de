#pragma once

#include <string>
#include <vector>

#include "qrplan/distance.hpp"
#include "qrplan/placement.hpp"
#include "qrplan/topology.hpp"
#include "qrplan/verify.hpp"

namespace qrplan {

struct OracleBudget {
    int max_candidate_nodes = 20;
    long long max_subsets = 5'000'000;
};

// Exhaustive minimum placement over the existing non-ghost nodes, by rising
// cardinality; within one cardinality subsets are tried in lexicographic id
// order, so the first feasible one is the canonical answer. Never invents
// synthetic nodes. Budget overruns are hard errors; a network that stays
// infeasible even with every candidate selected is reported with the pair
// that cannot be connected.
inline PlanResult exact_min_placement(const Topology& t, const DistanceOracle& o,
                                      double l_max_km, int k,
                                      const OracleBudget& budget = OracleBudget{}) {
    if (k < 1) fail("k must be at least 1");
    if (!(l_max_km > 0.0)) fail("l_max_km must be positive");

    const std::vector<int> cand = t.non_ghost_indices();  // id-sorted
    const int n = static_cast<int>(cand.size());
    if (n > budget.max_candidate_nodes)
        fail("exhaustive search limited to " + std::to_string(budget.max_candidate_nodes) +
             " candidate nodes, got " + std::to_string(n));

    std::vector<int> endpoints;
    if (t.has_ghosts()) {
        for (int i = 0; i < t.node_count(); ++i)
            if (t.is_ghost(i)) endpoints.push_back(i);
    } else {
        endpoints = cand;
    }
    // Endpoints with a partner out of direct reach need k distinct repeaters
    // nearby, one head per route; cheap necessary condition before the full
    // route check.
    std::vector<int> constrained;
    for (size_t i = 0; i < endpoints.size(); ++i) {
        bool far = false;
        for (size_t j = 0; j < endpoints.size() && !far; ++j)
            far = j != i && o.at(endpoints[i], endpoints[j]) > l_max_km;
        if (far) constrained.push_back(endpoints[i]);
    }

    auto ids_of = [&](const std::vector<int>& pick) {
        std::vector<std::string> ids;
        for (int i : pick) ids.push_back(t.node(cand[static_cast<size_t>(i)]).id);
        return ids;
    };
    auto finish = [&](const std::vector<int>& pick) {
        Placement p;
        p.algorithm = Algorithm::exact;
        p.l_max_km = l_max_km;
        p.k = k;
        p.topology_name = t.name();
        for (const auto& id : ids_of(pick))
            p.centers.entries.push_back(Center{id, CenterProvenance::greedy_cover});
        return PlanResult::ok(p);
    };

    long long tried = 0;
    auto within_budget = [&]() {
        if (++tried > budget.max_subsets)
            fail("exhaustive search exceeded the subset budget of " +
                 std::to_string(budget.max_subsets));
    };

    // With every candidate selected infeasibility is final, and the failing
    // pair is the witness no subset can fix.
    {
        within_budget();
        std::vector<int> all(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) all[static_cast<size_t>(i)] = i;
        const VerifyReport rep = verify_node_set(t, o, ids_of(all), l_max_km, k);
        if (!rep.feasible) {
            Infeasibility inf;
            inf.failing_pair = rep.failing_pair;
            inf.reason = "no repeater subset can connect \"" + rep.failing_pair->first +
                         "\" and \"" + rep.failing_pair->second + "\"";
            return PlanResult::fail(inf);
        }
    }

    for (int m = 0; m <= n; ++m) {
        std::vector<int> pick(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) pick[static_cast<size_t>(i)] = i;
        for (;;) {
            within_budget();
            bool plausible = true;
            for (size_t ci = 0; ci < constrained.size() && plausible; ++ci) {
                int near = 0;
                for (int i : pick)
                    if (o.at(constrained[ci], cand[static_cast<size_t>(i)]) <= l_max_km) ++near;
                plausible = near >= k;
            }
            if (plausible && verify_node_set(t, o, ids_of(pick), l_max_km, k).feasible)
                return finish(pick);

            // next lexicographic m-combination of {0..n-1}
            int i = m - 1;
            while (i >= 0 && pick[static_cast<size_t>(i)] == n - m + i) --i;
            if (i < 0) break;
            ++pick[static_cast<size_t>(i)];
            for (int j = i + 1; j < m; ++j)
                pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
        }
    }
    fail("exhaustive search fell through (internal error)");
}

// Extra repeaters a heuristic spent relative to the exhaustive answer.
inline int optimality_gap(const Placement& heuristic, const Placement& exact) {
    if (heuristic.topology_name != exact.topology_name ||
        heuristic.l_max_km != exact.l_max_km || heuristic.k != exact.k)
        fail("placements compare different problems (topology \"" + heuristic.topology_name +
             "\" l_max " + std::to_string(heuristic.l_max_km) + " k " +
             std::to_string(heuristic.k) + " vs topology \"" + exact.topology_name +
             "\" l_max " + std::to_string(exact.l_max_km) + " k " + std::to_string(exact.k) + ")");
    return heuristic.total_repeaters() - exact.total_repeaters();
}

}  // namespace qrplan
