#pragma once

#include <algorithm>
#include <map>
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

struct CentersOutcome {
    std::optional<CenterSet> centers;
    std::optional<Infeasibility> infeasible;
};

namespace detail {

// Access nodes forced by far-apart leaves: a node adjacent to at least two
// degree-1 neighbours that cannot talk to each other directly must relay for
// them. Degrees are taken over the non-ghost graph minus excluded nodes;
// distances always come from the unmodified oracle.
inline std::vector<int> access_rule_centers(const Topology& t, const DistanceOracle& o,
                                            double l_max_km, const std::set<int>& excluded) {
    const int n = t.node_count();
    auto usable = [&](int v) { return !t.is_ghost(v) && !excluded.count(v); };
    std::vector<std::vector<int>> nbrs(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) {
        if (!usable(v)) continue;
        for (const auto& [u, w] : t.adjacency(v)) {
            (void)w;
            if (usable(u)) nbrs[static_cast<size_t>(v)].push_back(u);
        }
    }
    std::vector<int> out;
    for (int a = 0; a < n; ++a) {
        if (!usable(a)) continue;
        std::vector<int> leaves;
        for (int u : nbrs[static_cast<size_t>(a)])
            if (nbrs[static_cast<size_t>(u)].size() == 1) leaves.push_back(u);
        bool forced = false;
        for (size_t i = 0; i < leaves.size() && !forced; ++i)
            for (size_t j = i + 1; j < leaves.size() && !forced; ++j)
                forced = o.at(leaves[i], leaves[j]) > l_max_km;
        if (forced) out.push_back(a);
    }
    return out;
}

// MST over the centers under shortest-path distance, Kruskal with ties
// broken on the id pair. Edges come back in acceptance order, each oriented
// with the lexicographically smaller center first.
inline std::vector<std::pair<int, int>> center_mst_edges(const Topology& t,
                                                         const DistanceOracle& o,
                                                         const std::vector<int>& centers) {
    struct Cand {
        double w;
        std::string a, b;
        int u, v;
    };
    std::vector<Cand> cands;
    for (size_t i = 0; i < centers.size(); ++i)
        for (size_t j = i + 1; j < centers.size(); ++j) {
            const int u = centers[i], v = centers[j];
            std::string a = t.node(u).id, b = t.node(v).id;
            int uu = u, vv = v;
            if (b < a) {
                std::swap(a, b);
                std::swap(uu, vv);
            }
            cands.push_back({o.at(u, v), a, b, uu, vv});
        }
    std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
        if (x.w != y.w) return x.w < y.w;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    std::map<int, int> comp;
    for (size_t i = 0; i < centers.size(); ++i) comp[centers[i]] = static_cast<int>(i);
    DisjointSets ds(static_cast<int>(centers.size()));
    std::vector<std::pair<int, int>> mst;
    for (const auto& c : cands) {
        const int cu = ds.find(comp[c.u]), cv = ds.find(comp[c.v]);
        if (cu == cv) continue;
        ds.unite(cu, cv);
        mst.emplace_back(c.u, c.v);
        if (mst.size() + 1 == centers.size()) break;
    }
    return mst;
}

}  // namespace detail

// Coverage centers with optional redundancy. Level r of k asks every node to
// be inside the reach of at least r distinct centers; each level first takes
// the access nodes forced by far-apart leaves (degrees recomputed with the
// already chosen centers removed), then greedily picks the not-yet-covered
// node whose reach contains the most demand, smallest id on ties. A level
// that still has demand no remaining candidate can touch is a hard failure.
inline CentersOutcome choose_centers_robust(const Topology& t, const DistanceOracle& o,
                                            double l_max_km, int k) {
    if (k < 1) fail("k must be at least 1");
    if (!(l_max_km > 0.0)) fail("l_max_km must be positive");
    const int n = t.node_count();
    CenterSet cs;
    std::set<int> selected;
    std::vector<int> cover_count(static_cast<size_t>(n), 0);

    auto add_center = [&](int v, CenterProvenance why) {
        selected.insert(v);
        cs.entries.push_back(Center{t.node(v).id, why});
        for (int u = 0; u < n; ++u)
            if (!t.is_ghost(u) && o.at(v, u) <= l_max_km) ++cover_count[static_cast<size_t>(u)];
    };

    for (int level = 1; level <= k; ++level) {
        for (int a : detail::access_rule_centers(t, o, l_max_km, selected))
            add_center(a, CenterProvenance::access_rule);

        auto demand = [&]() {
            std::vector<int> d;
            for (int u = 0; u < n; ++u)
                if (!t.is_ghost(u) && cover_count[static_cast<size_t>(u)] < level) d.push_back(u);
            return d;
        };
        for (std::vector<int> dem = demand(); !dem.empty(); dem = demand()) {
            int best = -1;
            size_t best_score = 0;
            for (int c : dem) {
                if (selected.count(c)) continue;
                size_t score = 0;
                for (int u : dem)
                    if (o.at(c, u) <= l_max_km) ++score;
                if (score > best_score) {
                    best_score = score;
                    best = c;
                }
            }
            if (best < 0) {
                Infeasibility inf;
                inf.node = t.node(dem.front()).id;
                inf.reason = "no remaining candidate can cover node \"" + *inf.node +
                             "\" at redundancy level " + std::to_string(level);
                return CentersOutcome{std::nullopt, inf};
            }
            add_center(best, CenterProvenance::greedy_cover);
        }
    }
    return CentersOutcome{cs, std::nullopt};
}

inline CentersOutcome choose_centers(const Topology& t, const DistanceOracle& o, double l_max_km) {
    return choose_centers_robust(t, o, l_max_km, 1);
}

struct IntermediatesOutcome {
    std::vector<std::string> intermediate_ids;   // newly selected existing nodes, sorted
    std::vector<SyntheticNode> synthetic_added;  // creation order
    std::optional<Infeasibility> infeasible;
};

namespace detail {

inline IntermediatesOutcome finish_intermediates(const WorkTopo& w, const std::set<int>& chosen,
                                                 const std::vector<int>& center_idx) {
    IntermediatesOutcome out;
    const std::set<int> centers(center_idx.begin(), center_idx.end());
    for (int v : chosen)
        if (!centers.count(v) && w.is_base(v)) out.intermediate_ids.push_back(w.id(v));
    std::sort(out.intermediate_ids.begin(), out.intermediate_ids.end());
    out.synthetic_added = w.synthetics();
    return out;
}

inline std::vector<int> center_indices(const Topology& t, const CenterSet& cs) {
    std::vector<int> idx;
    for (const auto& id : cs.sorted_ids()) idx.push_back(t.index_of(id));
    return idx;
}

}  // namespace detail

// Chains every pair of adjacent centers in the center MST: walk the current
// shortest path, keep relay gaps at most l_max, cut hops that are too long
// on their own. Relays picked for one chain are reused by later ones.
inline IntermediatesOutcome intermediates_gp(const Topology& t, const DistanceOracle& o,
                                             const CenterSet& cs, double l_max_km) {
    detail::WorkTopo w(t, o);
    const std::vector<int> centers = detail::center_indices(t, cs);
    std::set<int> chosen(centers.begin(), centers.end());
    for (const auto& [u, v] : detail::center_mst_edges(t, o, centers)) {
        const auto path = w.shortest_path(u, v);
        if (path.empty()) fail("no path between centers \"" + w.id(u) + "\" and \"" + w.id(v) + "\" (internal error)");
        if (path.size() < 2) continue;
        const auto walk = detail::walk_chain(w, path, l_max_km,
                                             [&](int x) { return chosen.count(x) > 0; });
        for (int x : walk.anchors) chosen.insert(x);
    }
    return detail::finish_intermediates(w, chosen, centers);
}

// Like the chain variant, but center pairs further apart than l_max first
// try to share relays: a node within reach of both endpoints serves the
// pair outright, and one shared node can serve many pairs at once. k > 1
// asks for that many distinct relays (or relay chains) per pair. Pairs no
// shared node can serve fall back to walked chains whose relays avoid the
// ones already serving that pair.
inline IntermediatesOutcome intermediates_flex_robust(const Topology& t, const DistanceOracle& o,
                                                      const CenterSet& cs, double l_max_km,
                                                      int k) {
    detail::WorkTopo w(t, o);
    const std::vector<int> centers = detail::center_indices(t, cs);
    std::set<int> chosen(centers.begin(), centers.end());
    const auto mst = detail::center_mst_edges(t, o, centers);

    struct LongEdge {
        int u, v;
        std::vector<int> common;
        int counter;
        std::set<int> serving;  // nodes already serving this pair
    };
    std::vector<LongEdge> longs;
    for (const auto& [u, v] : mst) {
        if (o.at(u, v) <= l_max_km) continue;  // centers in reach need no relay
        LongEdge e;
        e.u = u;
        e.v = v;
        e.counter = k;
        for (int x = 0; x < t.node_count(); ++x)
            if (!t.is_ghost(x) && o.at(u, x) <= l_max_km && o.at(v, x) <= l_max_km)
                e.common.push_back(x);
        longs.push_back(std::move(e));
    }

    // Shared-relay rounds: pick the node serving the most still-hungry pairs.
    for (;;) {
        int best = -1;
        int best_served = 0;
        for (int x = 0; x < t.node_count(); ++x) {
            if (t.is_ghost(x)) continue;
            int served = 0;
            for (const auto& e : longs)
                if (e.counter > 0 && !e.serving.count(x) &&
                    std::find(e.common.begin(), e.common.end(), x) != e.common.end())
                    ++served;
            if (served > best_served) {
                best_served = served;
                best = x;
            }
        }
        if (best < 0) break;
        chosen.insert(best);
        for (auto& e : longs)
            if (e.counter > 0 && !e.serving.count(best) &&
                std::find(e.common.begin(), e.common.end(), best) != e.common.end()) {
                --e.counter;
                e.serving.insert(best);
            }
    }

    // Remaining demand gets explicit chains, one per missing route, each
    // avoiding every relay already serving the pair.
    for (auto& e : longs) {
        while (e.counter > 0) {
            std::vector<char> forbidden(static_cast<size_t>(w.node_count()), 0);
            for (int x : e.serving)
                if (x != e.u && x != e.v) forbidden[static_cast<size_t>(x)] = 1;
            const auto path = w.shortest_path(e.u, e.v, &forbidden);
            if (path.size() < 2) {
                Infeasibility inf;
                inf.failing_pair = {std::min(w.id(e.u), w.id(e.v)), std::max(w.id(e.u), w.id(e.v))};
                inf.reason = "centers \"" + inf.failing_pair->first + "\" and \"" +
                             inf.failing_pair->second + "\" need " + std::to_string(k) +
                             " relay routes but the topology cannot provide them";
                IntermediatesOutcome out;
                out.infeasible = inf;
                return out;
            }
            const auto walk = detail::walk_chain(w, path, l_max_km, [&](int x) {
                return chosen.count(x) > 0 && !forbidden[static_cast<size_t>(x)];
            });
            for (int x : walk.anchors) {
                chosen.insert(x);
                e.serving.insert(x);
            }
            --e.counter;
        }
    }
    return detail::finish_intermediates(w, chosen, centers);
}

inline IntermediatesOutcome intermediates_flex(const Topology& t, const DistanceOracle& o,
                                               const CenterSet& cs, double l_max_km) {
    return intermediates_flex_robust(t, o, cs, l_max_km, 1);
}

// Full pipeline for the coverage-first planners: centers, then relays, then
// an end-to-end check on the materialized topology. Anything the check
// rejects is reported as infeasible rather than returned.
inline PlanResult run_mca(const Topology& t, const PlanConfig& cfg,
                          const DistanceOracle* precomputed = nullptr) {
    if (cfg.algorithm != Algorithm::mca_gp && cfg.algorithm != Algorithm::mca_flex)
        fail("run_mca requires a chain or shared-relay algorithm");
    std::optional<DistanceOracle> own;
    if (!precomputed) own = apsp(t);
    const DistanceOracle& o = precomputed ? *precomputed : *own;
    CentersOutcome centers = choose_centers_robust(t, o, cfg.l_max_km, cfg.k);
    if (!centers.centers) return PlanResult::fail(*centers.infeasible);

    IntermediatesOutcome inter =
        cfg.algorithm == Algorithm::mca_gp
            ? intermediates_gp(t, o, *centers.centers, cfg.l_max_km)
            : intermediates_flex_robust(t, o, *centers.centers, cfg.l_max_km, cfg.k);
    if (inter.infeasible) return PlanResult::fail(*inter.infeasible);

    Placement p;
    p.algorithm = cfg.algorithm;
    p.l_max_km = cfg.l_max_km;
    p.k = cfg.k;
    p.topology_name = t.name();
    p.centers = *centers.centers;
    p.intermediates = inter.intermediate_ids;
    p.synthetic_added = inter.synthetic_added;

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

}  // namespace qrplan
