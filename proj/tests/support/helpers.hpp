#pragma once

// Brute-force reference implementations for the test suite. Everything here
// recomputes from first principles (simple-path enumeration, bitmask search)
// so library results are checked against independent logic, not themselves.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <qrplan/qrplan.hpp>

namespace testsupport {

inline qrplan::Topology make_topo(
    const std::string& name, const std::vector<std::string>& node_ids,
    const std::vector<std::tuple<std::string, std::string, double>>& edge_list) {
    std::vector<qrplan::NodeRecord> nodes;
    for (const auto& id : node_ids)
        nodes.push_back(qrplan::NodeRecord{id, qrplan::NodeKind::physical, std::nullopt, std::nullopt});
    std::vector<qrplan::EdgeRecord> edges;
    for (const auto& [a, b, w] : edge_list) edges.push_back(qrplan::EdgeRecord{a, b, w});
    return qrplan::Topology::create(name, nodes, edges);
}

// Frozen instances used across suites.
inline qrplan::Topology three_path() {
    return make_topo("three-path", {"A", "B", "C"}, {{"A", "B", 100}, {"B", "C", 100}});
}

inline qrplan::Topology four_cycle() {
    return make_topo("four-cycle", {"A", "B", "C", "D"},
                     {{"A", "B", 100}, {"B", "C", 100}, {"C", "D", 100}, {"D", "A", 100}});
}

// Six nodes, one leaf; distances picked so one shared relay (C) can serve
// both long center pairs while chain walking needs two relays.
inline qrplan::Topology six_node() {
    return make_topo("six-node", {"A", "B", "C", "D", "E", "F"},
                     {{"A", "B", 60},
                      {"B", "F", 55},
                      {"A", "D", 50},
                      {"D", "C", 45},
                      {"C", "E", 60},
                      {"C", "F", 95}});
}

inline qrplan::Topology two_cluster() {
    return make_topo("two-cluster", {"A", "B", "C", "D"},
                     {{"A", "B", 50}, {"B", "C", 350}, {"C", "D", 50}});
}

inline qrplan::Topology unit_path6() {
    return make_topo("unit-path-6", {"A", "B", "C", "D", "E", "F"},
                     {{"A", "B", 1}, {"B", "C", 1}, {"C", "D", 1}, {"D", "E", 1}, {"E", "F", 1}});
}

// All-pairs shortest distance by enumerating simple paths. Exponential and
// deliberately unrelated to the library's Dijkstra.
class BruteDistances {
public:
    explicit BruteDistances(const qrplan::Topology& t) : t_(&t) {
        const int n = t.node_count();
        d_.assign(static_cast<size_t>(n) * static_cast<size_t>(n), -1.0);
        std::vector<char> visited(static_cast<size_t>(n), 0);
        for (int s = 0; s < n; ++s) {
            at(s, s) = 0.0;
            visited[static_cast<size_t>(s)] = 1;
            dfs(s, s, 0.0, visited);
            visited[static_cast<size_t>(s)] = 0;
        }
    }

    double operator()(int u, int v) const {
        return d_[static_cast<size_t>(u) * static_cast<size_t>(t_->node_count()) +
                  static_cast<size_t>(v)];
    }
    double operator()(const std::string& u, const std::string& v) const {
        return (*this)(t_->index_of(u), t_->index_of(v));
    }

private:
    double& at(int u, int v) {
        return d_[static_cast<size_t>(u) * static_cast<size_t>(t_->node_count()) +
                  static_cast<size_t>(v)];
    }
    void dfs(int s, int cur, double len, std::vector<char>& visited) {
        for (const auto& [nb, w] : t_->adjacency(cur)) {
            if (visited[static_cast<size_t>(nb)]) continue;
            const double nl = len + w;
            // extending a non-improving prefix cannot beat the walk through
            // the already-known shorter route
            if (at(s, nb) >= 0.0 && nl >= at(s, nb)) continue;
            at(s, nb) = nl;
            visited[static_cast<size_t>(nb)] = 1;
            dfs(s, nb, nl, visited);
            visited[static_cast<size_t>(nb)] = 0;
        }
    }

    const qrplan::Topology* t_;
    std::vector<double> d_;
};

// Maximum number of node-disjoint relay routes between a and b, found by
// listing every relay subset that can be ordered into a valid route and then
// searching for the largest family of disjoint subsets. A direct in-range
// link contributes one route on top.
inline int brute_routes(const qrplan::Topology& t, const BruteDistances& d,
                        const std::vector<std::string>& repeater_ids, double l_max,
                        const std::string& a, const std::string& b) {
    const int ia = t.index_of(a), ib = t.index_of(b);
    std::vector<int> reps;
    for (const auto& id : repeater_ids) reps.push_back(t.index_of(id));
    std::sort(reps.begin(), reps.end());
    const int m = static_cast<int>(reps.size());

    // masks of relay sets that admit at least one valid ordering a -> ... -> b
    std::set<unsigned> route_masks;
    // states: (last relay index in reps, used mask); seeded from a
    std::vector<std::pair<int, unsigned>> stack;
    std::set<std::pair<int, unsigned>> seen;
    for (int i = 0; i < m; ++i)
        if (d(ia, reps[static_cast<size_t>(i)]) <= l_max) {
            stack.push_back({i, 1u << i});
            seen.insert({i, 1u << i});
        }
    while (!stack.empty()) {
        auto [last, mask] = stack.back();
        stack.pop_back();
        if (d(reps[static_cast<size_t>(last)], ib) <= l_max) route_masks.insert(mask);
        for (int j = 0; j < m; ++j) {
            if (mask & (1u << j)) continue;
            if (d(reps[static_cast<size_t>(last)], reps[static_cast<size_t>(j)]) > l_max) continue;
            const std::pair<int, unsigned> st{j, mask | (1u << j)};
            if (seen.insert(st).second) stack.push_back(st);
        }
    }

    std::map<unsigned, int> memo;
    std::function<int(unsigned)> best_family = [&](unsigned avail) {
        auto it = memo.find(avail);
        if (it != memo.end()) return it->second;
        int best = 0;
        for (unsigned rm : route_masks)
            if ((rm & avail) == rm) best = std::max(best, 1 + best_family(avail & ~rm));
        memo[avail] = best;
        return best;
    };
    const int relay_routes = best_family(m ? (1u << m) - 1 : 0u);
    const int direct = d(ia, ib) <= l_max ? 1 : 0;
    return relay_routes + direct;
}

inline std::vector<int> brute_endpoints(const qrplan::Topology& t) {
    std::vector<int> endpoints;
    if (t.has_ghosts()) {
        for (int i = 0; i < t.node_count(); ++i)
            if (t.is_ghost(i)) endpoints.push_back(i);
    } else {
        endpoints = t.non_ghost_indices();
    }
    return endpoints;
}

inline bool brute_feasible(const qrplan::Topology& t, const BruteDistances& d,
                           const std::vector<std::string>& repeater_ids, double l_max, int k) {
    const auto endpoints = brute_endpoints(t);
    for (size_t i = 0; i < endpoints.size(); ++i)
        for (size_t j = i + 1; j < endpoints.size(); ++j) {
            const std::string& a = t.node(endpoints[i]).id;
            const std::string& b = t.node(endpoints[j]).id;
            if (brute_routes(t, d, repeater_ids, l_max, a, b) < k) return false;
        }
    return true;
}

// Smallest repeater set by exhaustive subset search in (size, lex) order;
// nullopt when even selecting everything fails.
inline std::optional<std::vector<std::string>> brute_min_placement(const qrplan::Topology& t,
                                                                   double l_max, int k) {
    const BruteDistances d(t);
    std::vector<std::string> cand;
    for (int i : t.non_ghost_indices()) cand.push_back(t.node(i).id);
    const int n = static_cast<int>(cand.size());
    if (!brute_feasible(t, d, cand, l_max, k)) return std::nullopt;
    for (int m = 0; m <= n; ++m) {
        std::vector<int> pick(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) pick[static_cast<size_t>(i)] = i;
        for (;;) {
            std::vector<std::string> ids;
            for (int i : pick) ids.push_back(cand[static_cast<size_t>(i)]);
            if (brute_feasible(t, d, ids, l_max, k)) return ids;
            int i = m - 1;
            while (i >= 0 && pick[static_cast<size_t>(i)] == n - m + i) --i;
            if (i < 0) break;
            ++pick[static_cast<size_t>(i)];
            for (int j = i + 1; j < m; ++j)
                pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
        }
    }
    return std::nullopt;
}

}  // namespace testsupport
