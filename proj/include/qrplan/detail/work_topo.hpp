#pragma once

#include <algorithm>
#include <cassert>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <string>
#include <vector>

#include "qrplan/distance.hpp"
#include "qrplan/placement.hpp"
#include "qrplan/topology.hpp"

namespace qrplan::detail {

// Mutable working graph the placement algorithms grow while cutting links.
// Distances between base nodes come from the prebuilt oracle; every synthetic
// node stores an exact distance row to all nodes created before it (a
// degree-2 chain node can only exit through its host link's endpoints, so
// min over the two exits is the true shortest-path distance).
class WorkTopo {
public:
    WorkTopo(const Topology& base, const DistanceOracle& oracle)
        : base_(&base), oracle_(&oracle) {
        const int n = base.node_count();
        ids_.reserve(static_cast<size_t>(n));
        adj_.resize(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            const auto& rec = base.node(i);
            ids_.push_back(rec.id);
            kinds_.push_back(rec.kind);
            lats_.push_back(rec.lat);
            lons_.push_back(rec.lon);
            index_[rec.id] = i;
            adj_[static_cast<size_t>(i)] = base.adjacency(i);
        }
    }

    int node_count() const { return static_cast<int>(ids_.size()); }
    int base_count() const { return base_->node_count(); }
    bool is_base(int i) const { return i < base_count(); }
    const std::string& id(int i) const { return ids_[static_cast<size_t>(i)]; }
    bool is_ghost(int i) const { return kinds_[static_cast<size_t>(i)] == NodeKind::ghost; }
    const std::vector<std::pair<int, double>>& adjacency(int i) const {
        return adj_[static_cast<size_t>(i)];
    }
    const std::vector<SyntheticNode>& synthetics() const { return descriptors_; }

    double dist(int u, int v) const {
        if (u == v) return 0.0;
        if (u > v) std::swap(u, v);
        if (v < base_count()) return oracle_->at(u, v);
        return rows_[static_cast<size_t>(v - base_count())][static_cast<size_t>(u)];
    }

    // Cuts the current link (u, v) into equal segments no longer than l_max.
    // Returns the created synthetic node indices ordered from u toward v.
    std::vector<int> split_edge(int u, int v, double l_max) {
        const double len = edge_length(u, v);
        // Canonical orientation: offsets and ids are measured from the
        // lexicographically smaller endpoint, independent of walk direction.
        int a = u, b = v;
        if (id(b) < id(a)) std::swap(a, b);
        const auto pos = split_positions(len, l_max);
        const int m = static_cast<int>(pos.size()) - 1;
        assert(m >= 2);

        const double dab = dist(a, b);
        std::vector<int> chain;  // a .. synths .. b in position order
        chain.push_back(a);
        for (int j = 1; j < m; ++j) {
            const double off = pos[static_cast<size_t>(j)];
            const std::string sid = synthetic_id(id(a), id(b), j);
            if (index_.count(sid)) fail("synthetic id \"" + sid + "\" collides with an existing node");
            const int s = node_count();
            index_[sid] = s;
            ids_.push_back(sid);
            kinds_.push_back(NodeKind::synthetic);
            if (lats_[static_cast<size_t>(a)] && lons_[static_cast<size_t>(a)] &&
                lats_[static_cast<size_t>(b)] && lons_[static_cast<size_t>(b)]) {
                const double f = off / len;
                lats_.push_back(*lats_[static_cast<size_t>(a)] +
                                (*lats_[static_cast<size_t>(b)] - *lats_[static_cast<size_t>(a)]) * f);
                lons_.push_back(*lons_[static_cast<size_t>(a)] +
                                (*lons_[static_cast<size_t>(b)] - *lons_[static_cast<size_t>(a)]) * f);
            } else {
                lats_.push_back(std::nullopt);
                lons_.push_back(std::nullopt);
            }
            adj_.emplace_back();
            descriptors_.push_back(SyntheticNode{sid, id(a), id(b), off});
            offsets_.push_back(off);

            std::vector<double> row(static_cast<size_t>(s), 0.0);
            for (int x = 0; x < s; ++x)
                row[static_cast<size_t>(x)] =
                    std::min(off + dist(a, x), (len - off) + dist(b, x));
            // Same-chain siblings: the along-link distance can undercut any
            // route that exits the chain.
            for (int jj = 1; jj < j; ++jj) {
                const int sib = chain[static_cast<size_t>(jj)];
                const double off_sib = pos[static_cast<size_t>(jj)];
                const double along = off - off_sib;
                const double around =
                    std::min(off_sib + dab + (len - off), (len - off_sib) + dab + off);
                row[static_cast<size_t>(sib)] =
                    std::min({row[static_cast<size_t>(sib)], along, around});
            }
            rows_.push_back(std::move(row));
            chain.push_back(s);
        }
        chain.push_back(b);

        remove_edge(u, v);
        for (size_t j = 0; j + 1 < chain.size(); ++j)
            add_edge(chain[j], chain[j + 1], pos[j + 1] - pos[j]);

        std::vector<int> created(chain.begin() + 1, chain.end() - 1);
        if (a != u) std::reverse(created.begin(), created.end());
        return created;
    }

    bool has_edge(int u, int v) const {
        for (const auto& [x, w] : adj_[static_cast<size_t>(u)]) {
            (void)w;
            if (x == v) return true;
        }
        return false;
    }

    double edge_length(int u, int v) const {
        for (const auto& [x, w] : adj_[static_cast<size_t>(u)])
            if (x == v) return w;
        fail("no link between \"" + id(u) + "\" and \"" + id(v) + "\" (internal error)");
    }

    // Deterministic Dijkstra over the current graph. Nodes with
    // forbidden_interior set are unusable except as endpoints; ghosts are
    // never interior. Returns the node sequence, or empty if unreachable.
    std::vector<int> shortest_path(int from, int to,
                                   const std::vector<char>* forbidden_interior = nullptr) const {
        const size_t n = static_cast<size_t>(node_count());
        auto allowed = [&](int v) {
            if (v == from || v == to) return true;
            if (is_ghost(v)) return false;
            return !forbidden_interior || !(*forbidden_interior)[static_cast<size_t>(v)];
        };
        std::vector<double> dist_v(n, std::numeric_limits<double>::infinity());
        dist_v[static_cast<size_t>(from)] = 0.0;
        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
        pq.emplace(0.0, from);
        while (!pq.empty()) {
            const auto [dv, v] = pq.top();
            pq.pop();
            if (dv > dist_v[static_cast<size_t>(v)]) continue;
            if (v == to) break;
            for (const auto& [u, w] : adj_[static_cast<size_t>(v)]) {
                if (!allowed(u)) continue;
                const double cand = dv + w;
                if (cand < dist_v[static_cast<size_t>(u)]) {
                    dist_v[static_cast<size_t>(u)] = cand;
                    pq.emplace(cand, u);
                }
            }
        }
        if (dist_v[static_cast<size_t>(to)] == std::numeric_limits<double>::infinity()) return {};

        std::vector<int> rev{to};
        int cur = to;
        const int cap = node_count() + 2;
        for (int steps = 0; cur != from; ++steps) {
            if (steps > cap) fail("path reconstruction exceeded node count (internal error)");
            int best = -1;
            double best_val = std::numeric_limits<double>::infinity();
            for (const auto& [u, w] : adj_[static_cast<size_t>(cur)]) {
                if (!allowed(u) || u == to) continue;
                if (dist_v[static_cast<size_t>(u)] == std::numeric_limits<double>::infinity()) continue;
                const double val = dist_v[static_cast<size_t>(u)] + w;
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

private:
    void remove_edge(int u, int v) {
        auto drop = [&](int x, int y) {
            auto& lst = adj_[static_cast<size_t>(x)];
            for (size_t i = 0; i < lst.size(); ++i)
                if (lst[i].first == y) {
                    lst.erase(lst.begin() + static_cast<long>(i));
                    return;
                }
            fail("no link between \"" + id(x) + "\" and \"" + id(y) + "\" (internal error)");
        };
        drop(u, v);
        drop(v, u);
    }

    void add_edge(int u, int v, double w) {
        auto& lu = adj_[static_cast<size_t>(u)];
        lu.insert(std::upper_bound(lu.begin(), lu.end(), std::make_pair(v, w)), {v, w});
        auto& lv = adj_[static_cast<size_t>(v)];
        lv.insert(std::upper_bound(lv.begin(), lv.end(), std::make_pair(u, w)), {u, w});
    }

    const Topology* base_;
    const DistanceOracle* oracle_;
    std::vector<std::string> ids_;
    std::vector<NodeKind> kinds_;
    std::vector<std::optional<double>> lats_, lons_;
    std::map<std::string, int> index_;
    std::vector<std::vector<std::pair<int, double>>> adj_;
    std::vector<SyntheticNode> descriptors_;
    std::vector<double> offsets_;
    std::vector<std::vector<double>> rows_;  // one per synthetic, over earlier nodes
};

// One relay chain laid along a path. Walks the node sequence keeping the gap
// from the last usable repeater at most l_max: existing repeaters re-anchor
// for free, the node before an overlong gap is selected, and a single hop
// longer than l_max is cut into equal segments whose synthetic nodes all
// become repeaters (the hop's far end is selected too, so later gaps are
// measured from a real anchor).
struct ChainWalk {
    std::vector<int> anchors;              // interior repeaters in chain order
    std::vector<int> selected_real;        // subset of anchors newly selected
    std::vector<int> created_synthetic;    // subset of anchors created by splits
};

inline ChainWalk walk_chain(WorkTopo& w, std::vector<int> path, double l_max,
                            const std::function<bool(int)>& is_repeater) {
    assert(path.size() >= 2);
    ChainWalk out;
    auto selected = [&](int v) {
        if (is_repeater(v)) return true;
        for (int x : out.anchors)
            if (x == v) return true;
        return false;
    };
    auto take = [&](int v) {
        if (!selected(v)) out.selected_real.push_back(v);
        out.anchors.push_back(v);
    };
    auto split = [&](int u, int v) {
        for (int s : w.split_edge(u, v, l_max)) {
            out.anchors.push_back(s);
            out.created_synthetic.push_back(s);
        }
    };

    int anchor = path[0];
    for (size_t idx = 1; idx < path.size(); ++idx) {
        const int cur = path[idx];
        const bool last = idx + 1 == path.size();
        if (w.dist(anchor, cur) > l_max) {
            const int prev = path[idx - 1];
            if (prev != anchor) {
                take(prev);
                anchor = prev;
            }
            if (w.dist(anchor, cur) > l_max) {
                split(anchor, cur);
                if (!last) take(cur);
                anchor = cur;
            }
        }
        if (!last && anchor != cur && selected(cur)) {
            out.anchors.push_back(cur);
            anchor = cur;
        }
    }
    return out;
}

}  // namespace qrplan::detail
