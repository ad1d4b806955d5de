#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qrplan/detail/work_topo.hpp"
#include "qrplan/distance.hpp"
#include "qrplan/placement.hpp"
#include "qrplan/topology.hpp"
#include "qrplan/verify.hpp"

namespace qrplan {

// Coverage-greedy planner. Each redundancy level starts from scratch: pick
// the unselected node that reaches the most nodes, then repeatedly extend
// from already-covered candidates toward uncovered ones. When no covered
// node can extend and only one level is requested, the closest
// covered-uncovered pair is bridged with a relay chain; with more levels a
// stall is a hard failure. Selections accumulate across levels and a node
// never serves two levels.
inline PlanResult run_sca_robust(const Topology& t, const PlanConfig& cfg,
                                 const DistanceOracle* precomputed = nullptr) {
    if (cfg.k < 1) fail("k must be at least 1");
    if (!(cfg.l_max_km > 0.0)) fail("l_max_km must be positive");
    std::optional<DistanceOracle> own;
    if (!precomputed) own = apsp(t);
    const DistanceOracle& o = precomputed ? *precomputed : *own;

    // Nothing to place if every endpoint pair already has enough direct routes.
    if (verify_node_set(t, o, {}, cfg.l_max_km, cfg.k).feasible) {
        Placement p;
        p.algorithm = Algorithm::sca;
        p.l_max_km = cfg.l_max_km;
        p.k = cfg.k;
        p.topology_name = t.name();
        return PlanResult::ok(p);
    }

    detail::WorkTopo w(t, o);
    const int base_n = t.node_count();
    std::set<int> selected;
    CenterSet centers;
    std::vector<std::string> intermediates;

    auto reach_count = [&](int v) {
        int c = 0;
        for (int u = 0; u < base_n; ++u)
            if (!t.is_ghost(u) && o.at(v, u) <= cfg.l_max_km) ++c;
        return c;
    };

    for (int level = 1; level <= cfg.k; ++level) {
        std::vector<char> covered(static_cast<size_t>(base_n), 0);
        auto mark_reach = [&](int r) {
            for (int u = 0; u < base_n; ++u)
                if (!t.is_ghost(u) && w.dist(r, u) <= cfg.l_max_km)
                    covered[static_cast<size_t>(u)] = 1;
        };
        auto select_center = [&](int v) {
            selected.insert(v);
            centers.entries.push_back(Center{t.node(v).id, CenterProvenance::greedy_cover});
            mark_reach(v);
        };

        {
            int best = -1, best_cov = 0;
            for (int v = 0; v < base_n; ++v) {
                if (t.is_ghost(v) || selected.count(v)) continue;
                const int c = reach_count(v);
                if (c > best_cov) {
                    best_cov = c;
                    best = v;
                }
            }
            if (best < 0) {
                Infeasibility inf;
                inf.reason = "every node is already selected before redundancy level " +
                             std::to_string(level);
                return PlanResult::fail(inf);
            }
            select_center(best);
        }

        for (;;) {
            std::vector<int> remaining;
            for (int u = 0; u < base_n; ++u)
                if (!t.is_ghost(u) && !covered[static_cast<size_t>(u)]) remaining.push_back(u);
            if (remaining.empty()) break;

            int best = -1;
            int best_score = 0;
            for (int c = 0; c < base_n; ++c) {
                if (t.is_ghost(c) || !covered[static_cast<size_t>(c)] || selected.count(c)) continue;
                int score = 0;
                for (int u : remaining)
                    if (o.at(c, u) <= cfg.l_max_km) ++score;
                if (score > best_score) {
                    best_score = score;
                    best = c;
                }
            }
            if (best >= 0) {
                select_center(best);
                continue;
            }

            if (cfg.k > 1) {
                Infeasibility inf;
                inf.node = t.node(remaining.front()).id;
                inf.reason = "redundancy level " + std::to_string(level) +
                             " cannot reach node \"" + *inf.node + "\" without reusing selections";
                return PlanResult::fail(inf);
            }

            // Bridge: connect the closest covered-uncovered pair with a chain.
            int bf = -1, bu = -1;
            double bd = 0.0;
            for (int f = 0; f < base_n; ++f) {
                if (t.is_ghost(f) || !covered[static_cast<size_t>(f)]) continue;
                for (int u : remaining) {
                    const double d = o.at(f, u);
                    if (bf < 0 || d < bd) {
                        bd = d;
                        bf = f;
                        bu = u;
                    }
                }
            }
            if (bf < 0) fail("coverage stalled with no bridgeable pair (internal error)");
            if (!selected.count(bf)) select_center(bf);
            const auto path = w.shortest_path(bf, bu);
            if (path.size() < 2) fail("no path for bridge (internal error)");
            const auto walk = detail::walk_chain(w, path, cfg.l_max_km,
                                                 [&](int x) { return selected.count(x) > 0; });
            for (int x : walk.anchors) {
                if (!selected.count(x)) {
                    selected.insert(x);
                    if (w.is_base(x)) intermediates.push_back(w.id(x));
                }
                mark_reach(x);
            }
        }
    }

    Placement p;
    p.algorithm = Algorithm::sca;
    p.l_max_km = cfg.l_max_km;
    p.k = cfg.k;
    p.topology_name = t.name();
    p.centers = centers;
    p.intermediates = intermediates;
    std::sort(p.intermediates.begin(), p.intermediates.end());
    p.synthetic_added = w.synthetics();

    const VerifyReport rep = verify(t, p);
    if (!rep.feasible) {
        Infeasibility inf;
        inf.failing_pair = rep.failing_pair;
        inf.reason = "planned repeaters do not connect \"" + rep.failing_pair->first +
                     "\" and \"" + rep.failing_pair->second + "\" with " +
                     std::to_string(cfg.k) + " route(s)";
        return PlanResult::fail(inf);
    }
    return PlanResult::ok(p);
}

inline PlanResult run_sca(const Topology& t, double l_max_km) {
    PlanConfig cfg;
    cfg.l_max_km = l_max_km;
    cfg.k = 1;
    cfg.algorithm = Algorithm::sca;
    return run_sca_robust(t, cfg);
}

}  // namespace qrplan
