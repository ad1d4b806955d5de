#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qrplan/distance.hpp"
#include "qrplan/placement.hpp"
#include "qrplan/topology.hpp"

namespace qrplan {

namespace detail {

inline std::string ghost_host_id(const std::string& id) {
    constexpr const char* prefix = "ghost:";
    if (id.rfind(prefix, 0) == 0) return id.substr(6);
    return id;
}

// Union-find over a fixed universe, path halving + union by size.
class DisjointSets {
public:
    explicit DisjointSets(int n) : parent_(static_cast<size_t>(n)), size_(static_cast<size_t>(n), 1) {
        for (int i = 0; i < n; ++i) parent_[static_cast<size_t>(i)] = i;
    }
    int find(int x) {
        while (parent_[static_cast<size_t>(x)] != x) {
            parent_[static_cast<size_t>(x)] = parent_[static_cast<size_t>(parent_[static_cast<size_t>(x)])];
            x = parent_[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[static_cast<size_t>(a)] < size_[static_cast<size_t>(b)]) std::swap(a, b);
        parent_[static_cast<size_t>(b)] = a;
        size_[static_cast<size_t>(a)] += size_[static_cast<size_t>(b)];
    }

private:
    std::vector<int> parent_;
    std::vector<long long> size_;
};

// Maximum number of node-disjoint relay routes between one endpoint pair,
// stopping early at cap. Each relay is usable by at most one route; a direct
// in-range connection contributes exactly one extra route.
inline int count_routes(int m, const std::vector<char>& sreach, const std::vector<char>& treach,
                        const std::vector<std::vector<char>>& reach, bool direct, int cap) {
    int flow = direct ? 1 : 0;
    if (flow >= cap || m == 0) return std::min(flow, cap);

    // 0 = source, 1 = sink, 2+2i / 3+2i = relay i entry/exit.
    const int nv = 2 + 2 * m;
    struct Arc {
        int to, rev;
        int cap;
    };
    std::vector<std::vector<Arc>> g(static_cast<size_t>(nv));
    auto add = [&](int a, int b, int c) {
        g[static_cast<size_t>(a)].push_back({b, static_cast<int>(g[static_cast<size_t>(b)].size()), c});
        g[static_cast<size_t>(b)].push_back({a, static_cast<int>(g[static_cast<size_t>(a)].size()) - 1, 0});
    };
    for (int i = 0; i < m; ++i) {
        add(2 + 2 * i, 3 + 2 * i, 1);
        if (sreach[static_cast<size_t>(i)]) add(0, 2 + 2 * i, 1);
        if (treach[static_cast<size_t>(i)]) add(3 + 2 * i, 1, 1);
        for (int j = 0; j < m; ++j)
            if (j != i && reach[static_cast<size_t>(i)][static_cast<size_t>(j)])
                add(3 + 2 * i, 2 + 2 * j, 1);
    }

    std::vector<int> prev_node(static_cast<size_t>(nv)), prev_arc(static_cast<size_t>(nv));
    while (flow < cap) {
        std::fill(prev_node.begin(), prev_node.end(), -1);
        prev_node[0] = 0;
        std::queue<int> bfs;
        bfs.push(0);
        while (!bfs.empty() && prev_node[1] < 0) {
            const int v = bfs.front();
            bfs.pop();
            for (size_t ai = 0; ai < g[static_cast<size_t>(v)].size(); ++ai) {
                const Arc& a = g[static_cast<size_t>(v)][ai];
                if (a.cap <= 0 || prev_node[static_cast<size_t>(a.to)] >= 0) continue;
                prev_node[static_cast<size_t>(a.to)] = v;
                prev_arc[static_cast<size_t>(a.to)] = static_cast<int>(ai);
                bfs.push(a.to);
            }
        }
        if (prev_node[1] < 0) break;
        for (int v = 1; v != 0; v = prev_node[static_cast<size_t>(v)]) {
            Arc& a = g[static_cast<size_t>(prev_node[static_cast<size_t>(v)])][static_cast<size_t>(prev_arc[static_cast<size_t>(v)])];
            a.cap -= 1;
            g[static_cast<size_t>(a.to)][static_cast<size_t>(a.rev)].cap += 1;
        }
        ++flow;
    }
    return flow;
}

}  // namespace detail

// Builds the topology that results from cutting links at the recorded
// synthetic positions. Offsets are measured from the link's lexicographically
// smaller endpoint and must be strictly increasing within each link.
inline Topology apply_synthetics(const Topology& base, const std::vector<SyntheticNode>& added) {
    std::vector<NodeRecord> nodes(base.nodes());
    std::vector<EdgeRecord> edges;
    std::map<std::pair<std::string, std::string>, std::vector<const SyntheticNode*>> by_edge;
    for (const auto& s : added) {
        auto key = std::make_pair(std::min(s.edge_a, s.edge_b), std::max(s.edge_a, s.edge_b));
        by_edge[key].push_back(&s);
    }

    for (const auto& e : base.edges()) {
        auto it = by_edge.find({e.a, e.b});
        if (it == by_edge.end()) {
            edges.push_back(e);
            continue;
        }
        const auto& group = it->second;
        std::optional<double> la, lo_a, lb, lo_b;
        {
            const auto& ra = base.node(base.index_of(e.a));
            const auto& rb = base.node(base.index_of(e.b));
            la = ra.lat;
            lo_a = ra.lon;
            lb = rb.lat;
            lo_b = rb.lon;
        }
        double prev_off = 0.0;
        std::string prev_id = e.a;
        for (const SyntheticNode* s : group) {
            if (!(s->offset_km > prev_off) || !(s->offset_km < e.length_km))
                fail("synthetic node \"" + s->id + "\" has offset " + std::to_string(s->offset_km) +
                     " outside link \"" + e.a + "\"-\"" + e.b + "\"");
            NodeRecord rec;
            rec.id = s->id;
            rec.kind = NodeKind::synthetic;
            if (la && lo_a && lb && lo_b) {
                const double f = s->offset_km / e.length_km;
                rec.lat = *la + (*lb - *la) * f;
                rec.lon = *lo_a + (*lo_b - *lo_a) * f;
            }
            nodes.push_back(rec);
            edges.push_back(EdgeRecord{std::min(prev_id, s->id), std::max(prev_id, s->id),
                                       s->offset_km - prev_off});
            prev_off = s->offset_km;
            prev_id = s->id;
        }
        edges.push_back(EdgeRecord{std::min(prev_id, e.b), std::max(prev_id, e.b),
                                   e.length_km - prev_off});
        by_edge.erase(it);
    }
    if (!by_edge.empty())
        fail("synthetic node \"" + by_edge.begin()->second.front()->id +
             "\" references a link \"" + by_edge.begin()->first.first + "\"-\"" +
             by_edge.begin()->first.second + "\" that is not in the topology");
    return Topology::create(base.name(), nodes, edges);
}

struct VerifyReport {
    bool feasible = false;
    std::optional<std::pair<std::string, std::string>> failing_pair;
    // Route count per endpoint pair, capped at the requested k. Filled for
    // k >= 2 up to and including the first failing pair.
    std::map<std::pair<std::string, std::string>, int> min_routes;
    std::optional<bool> survives_failures;
};

// Feasibility of one repeater set on an already materialized topology.
// Endpoints are the ghost nodes when present, otherwise every node; each
// endpoint pair needs k node-disjoint routes whose hops all fit in l_max.
inline VerifyReport verify_node_set(const Topology& t, const DistanceOracle& o,
                                    const std::vector<std::string>& repeater_ids,
                                    double l_max_km, int k) {
    if (k < 1) fail("k must be at least 1");
    if (!(l_max_km > 0.0)) fail("l_max_km must be positive");

    std::vector<int> reps;
    {
        std::set<std::string> seen;
        for (const auto& id : repeater_ids) {
            if (!seen.insert(id).second) continue;
            const int i = t.index_of(id);
            if (t.is_ghost(i)) fail("ghost node \"" + id + "\" cannot act as a repeater");
            reps.push_back(i);
        }
        std::sort(reps.begin(), reps.end());
    }
    const int m = static_cast<int>(reps.size());

    std::vector<int> endpoints;
    if (t.has_ghosts()) {
        for (int i = 0; i < t.node_count(); ++i)
            if (t.is_ghost(i)) endpoints.push_back(i);
    } else {
        endpoints = t.non_ghost_indices();
    }
    // Node indices follow id order, so pair enumeration is lexicographic.

    VerifyReport rep;
    rep.feasible = true;

    if (k == 1) {
        detail::DisjointSets ds(m);
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                if (o.at(reps[static_cast<size_t>(i)], reps[static_cast<size_t>(j)]) <= l_max_km)
                    ds.unite(i, j);
        std::vector<std::vector<char>> comp(endpoints.size());
        for (size_t ei = 0; ei < endpoints.size(); ++ei) {
            comp[ei].assign(static_cast<size_t>(m), 0);
            for (int i = 0; i < m; ++i)
                if (o.at(endpoints[ei], reps[static_cast<size_t>(i)]) <= l_max_km)
                    comp[ei][static_cast<size_t>(ds.find(i))] = 1;
        }
        for (size_t ei = 0; ei < endpoints.size() && rep.feasible; ++ei)
            for (size_t ej = ei + 1; ej < endpoints.size(); ++ej) {
                if (o.at(endpoints[ei], endpoints[ej]) <= l_max_km) continue;
                bool ok = false;
                for (int c = 0; c < m && !ok; ++c)
                    ok = comp[ei][static_cast<size_t>(c)] && comp[ej][static_cast<size_t>(c)];
                if (!ok) {
                    rep.feasible = false;
                    rep.failing_pair = {detail::ghost_host_id(t.node(endpoints[ei]).id),
                                        detail::ghost_host_id(t.node(endpoints[ej]).id)};
                    break;
                }
            }
        return rep;
    }

    std::vector<std::vector<char>> reach(static_cast<size_t>(m),
                                         std::vector<char>(static_cast<size_t>(m), 0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (j != i)
                reach[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    o.at(reps[static_cast<size_t>(i)], reps[static_cast<size_t>(j)]) <= l_max_km;

    for (size_t ei = 0; ei < endpoints.size() && rep.feasible; ++ei) {
        std::vector<char> sreach(static_cast<size_t>(m), 0);
        for (int i = 0; i < m; ++i)
            sreach[static_cast<size_t>(i)] =
                o.at(endpoints[ei], reps[static_cast<size_t>(i)]) <= l_max_km;
        for (size_t ej = ei + 1; ej < endpoints.size(); ++ej) {
            std::vector<char> treach(static_cast<size_t>(m), 0);
            for (int i = 0; i < m; ++i)
                treach[static_cast<size_t>(i)] =
                    o.at(endpoints[ej], reps[static_cast<size_t>(i)]) <= l_max_km;
            const bool direct = o.at(endpoints[ei], endpoints[ej]) <= l_max_km;
            const int routes = detail::count_routes(m, sreach, treach, reach, direct, k);
            const auto key = std::make_pair(detail::ghost_host_id(t.node(endpoints[ei]).id),
                                            detail::ghost_host_id(t.node(endpoints[ej]).id));
            rep.min_routes[key] = routes;
            if (routes < k) {
                rep.feasible = false;
                rep.failing_pair = key;
                break;
            }
        }
    }
    return rep;
}

namespace detail {

// Every (k-1)-subset of repeaters removed, remainder checked at k=1.
inline bool survives_removals(const Topology& t, const DistanceOracle& o,
                              const std::vector<std::string>& all, double l_max_km, int k) {
    std::vector<int> pick(static_cast<size_t>(k - 1));
    std::function<bool(int, int)> walk = [&](int start, int depth) {
        if (depth == k - 1) {
            std::vector<std::string> rest;
            for (int i = 0; i < static_cast<int>(all.size()); ++i)
                if (std::find(pick.begin(), pick.end(), i) == pick.end())
                    rest.push_back(all[static_cast<size_t>(i)]);
            return verify_node_set(t, o, rest, l_max_km, 1).feasible;
        }
        for (int i = start; i < static_cast<int>(all.size()); ++i) {
            pick[static_cast<size_t>(depth)] = i;
            if (!walk(i + 1, depth + 1)) return false;
        }
        return true;
    };
    return walk(0, 0);
}

}  // namespace detail

// Placement checked on a topology that already contains its nodes.
inline VerifyReport verify(const Placement& p, const Topology& t, const DistanceOracle& o,
                           double l_max_km, int k) {
    return verify_node_set(t, o, p.repeater_ids(), l_max_km, k);
}

inline bool survive_failures(const Placement& p, const Topology& t, const DistanceOracle& o,
                             double l_max_km, int k) {
    if (k < 2) fail("failure survival is defined for k >= 2");
    return detail::survives_removals(t, o, p.repeater_ids(), l_max_km, k);
}

// Verification of a finished placement against the topology it was planned
// on: cut the recorded links, recompute all distances, then check the
// repeater set. This is the same code path the solver uses for its final
// check, so an emitted placement and a later verification always agree.
inline VerifyReport verify(const Topology& base, const Placement& p, bool check_failures = false) {
    const Topology t = p.synthetic_added.empty() ? base : apply_synthetics(base, p.synthetic_added);
    const DistanceOracle o = apsp(t);
    VerifyReport rep = verify_node_set(t, o, p.repeater_ids(), p.l_max_km, p.k);
    if (check_failures && p.k >= 2 && rep.feasible)
        rep.survives_failures = detail::survives_removals(t, o, p.repeater_ids(), p.l_max_km, p.k);
    return rep;
}

inline bool survive_failures(const Topology& base, const Placement& p) {
    if (p.k < 2) return verify(base, p).feasible;
    const VerifyReport rep = verify(base, p, true);
    return rep.feasible && rep.survives_failures.value_or(false);
}

}  // namespace qrplan
