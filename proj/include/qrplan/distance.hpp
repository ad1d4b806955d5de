#pragma once

#include <algorithm>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "qrplan/error.hpp"
#include "qrplan/topology.hpp"

namespace qrplan {

// Dense all-pairs shortest-path table over a topology. Built once per
// topology with one Dijkstra pass per source, then symmetrized entrywise so
// d(u,v) and d(v,u) are bitwise equal regardless of summation order.
class DistanceOracle {
public:
    DistanceOracle() = default;

    int node_count() const { return n_; }

    double at(int u, int v) const { return d_[static_cast<size_t>(u) * static_cast<size_t>(n_) + static_cast<size_t>(v)]; }

    static DistanceOracle build(const Topology& t) {
        DistanceOracle o;
        o.n_ = t.node_count();
        const size_t n = static_cast<size_t>(o.n_);
        o.d_.assign(n * n, std::numeric_limits<double>::infinity());
        std::vector<double> dist(n);
        using Item = std::pair<double, int>;
        for (int src = 0; src < o.n_; ++src) {
            std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
            dist[static_cast<size_t>(src)] = 0.0;
            std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
            pq.emplace(0.0, src);
            while (!pq.empty()) {
                const auto [dv, v] = pq.top();
                pq.pop();
                if (dv > dist[static_cast<size_t>(v)]) continue;
                for (const auto& [u, w] : t.adjacency(v)) {
                    const double cand = dv + w;
                    if (cand < dist[static_cast<size_t>(u)]) {
                        dist[static_cast<size_t>(u)] = cand;
                        pq.emplace(cand, u);
                    }
                }
            }
            for (size_t v = 0; v < n; ++v) o.d_[static_cast<size_t>(src) * n + v] = dist[v];
        }
        // Entrywise symmetrization: opposite-direction sums can differ in the
        // last ulp, which would leak into boundary comparisons downstream.
        for (int u = 0; u < o.n_; ++u)
            for (int v = u + 1; v < o.n_; ++v) {
                const double m = std::min(o.at(u, v), o.at(v, u));
                o.d_[static_cast<size_t>(u) * n + static_cast<size_t>(v)] = m;
                o.d_[static_cast<size_t>(v) * n + static_cast<size_t>(u)] = m;
            }
        return o;
    }

private:
    int n_ = 0;
    std::vector<double> d_;
};

inline DistanceOracle apsp(const Topology& t) { return DistanceOracle::build(t); }

// Shortest-path node sequence from `from` to `to`, reconstructed backward by
// repeatedly stepping to the neighbor minimizing (d(from, u) + w(u, v), u).
// Ghost nodes are never used as interior hops (their zero-length links would
// allow cycles). Deterministic for a fixed topology.
inline std::vector<int> shortest_path(const Topology& t, const DistanceOracle& o, int from, int to) {
    if (from == to) return {from};
    std::vector<int> rev{to};
    int cur = to;
    const int cap = t.node_count() + 2;
    for (int steps = 0; cur != from; ++steps) {
        if (steps > cap) fail("path reconstruction exceeded node count (internal error)");
        int best = -1;
        double best_val = std::numeric_limits<double>::infinity();
        for (const auto& [u, w] : t.adjacency(cur)) {
            if (t.is_ghost(u) && u != from) continue;
            const double val = o.at(from, u) + w;
            if (val < best_val || (val == best_val && (best == -1 || u < best))) {
                best_val = val;
                best = u;
            }
        }
        if (best < 0) fail("path reconstruction stuck (internal error)");
        rev.push_back(best);
        cur = best;
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

inline std::vector<std::string> shortest_path_ids(const Topology& t, const DistanceOracle& o,
                                                  const std::string& from, const std::string& to) {
    const auto idx = shortest_path(t, o, t.index_of(from), t.index_of(to));
    std::vector<std::string> out;
    out.reserve(idx.size());
    for (int i : idx) out.push_back(t.node(i).id);
    return out;
}

}  // namespace qrplan
