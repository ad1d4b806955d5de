#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qrplan/error.hpp"

namespace qrplan {

enum class NodeKind { physical, synthetic, ghost };

inline const char* to_string(NodeKind k) {
    switch (k) {
        case NodeKind::physical: return "physical";
        case NodeKind::synthetic: return "synthetic";
        case NodeKind::ghost: return "ghost";
    }
    return "physical";
}

inline NodeKind node_kind_from_string(const std::string& s) {
    if (s == "physical") return NodeKind::physical;
    if (s == "synthetic") return NodeKind::synthetic;
    if (s == "ghost") return NodeKind::ghost;
    fail("unknown node kind \"" + s + "\"");
}

struct NodeRecord {
    std::string id;
    NodeKind kind = NodeKind::physical;
    std::optional<double> lat;
    std::optional<double> lon;
};

// Stored in canonical orientation: a < b lexicographically.
struct EdgeRecord {
    std::string a;
    std::string b;
    double length_km = 0.0;
};

// Undirected fiber topology. Nodes are kept sorted by id so index order and
// lexicographic order coincide; every iteration over nodes is deterministic.
class Topology {
public:
    static Topology create(std::string name, std::vector<NodeRecord> nodes,
                           std::vector<EdgeRecord> edges) {
        Topology t;
        t.name_ = std::move(name);
        t.nodes_ = std::move(nodes);
        t.edges_ = std::move(edges);
        t.normalize_and_validate();
        return t;
    }

    const std::string& name() const { return name_; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    const NodeRecord& node(int i) const { return nodes_[static_cast<size_t>(i)]; }
    const std::vector<NodeRecord>& nodes() const { return nodes_; }
    const std::vector<EdgeRecord>& edges() const { return edges_; }

    bool contains(const std::string& id) const { return index_.count(id) != 0; }

    int index_of(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) fail("unknown node id \"" + id + "\"");
        return it->second;
    }

    bool is_ghost(int i) const { return node(i).kind == NodeKind::ghost; }

    // Neighbors as (node index, length_km), sorted by node index.
    const std::vector<std::pair<int, double>>& adjacency(int i) const {
        return adj_[static_cast<size_t>(i)];
    }

    int degree(int i) const { return static_cast<int>(adj_[static_cast<size_t>(i)].size()); }

    bool has_ghosts() const { return ghost_count_ > 0; }
    int ghost_count() const { return ghost_count_; }

    // Non-ghost node indices in ascending (= lexicographic) order.
    std::vector<int> non_ghost_indices() const {
        std::vector<int> out;
        out.reserve(nodes_.size());
        for (int i = 0; i < node_count(); ++i)
            if (!is_ghost(i)) out.push_back(i);
        return out;
    }

private:
    void normalize_and_validate() {
        if (nodes_.empty()) fail("topology \"" + name_ + "\" must contain at least one node");

        std::sort(nodes_.begin(), nodes_.end(),
                  [](const NodeRecord& x, const NodeRecord& y) { return x.id < y.id; });
        for (size_t i = 0; i < nodes_.size(); ++i) {
            if (i > 0 && nodes_[i].id == nodes_[i - 1].id)
                fail("duplicate node id \"" + nodes_[i].id + "\"");
            index_[nodes_[i].id] = static_cast<int>(i);
        }

        for (auto& e : edges_) {
            if (!contains(e.a)) fail("edge (" + e.a + ", " + e.b + "): unknown node \"" + e.a + "\"");
            if (!contains(e.b)) fail("edge (" + e.a + ", " + e.b + "): unknown node \"" + e.b + "\"");
            if (e.a == e.b) fail("edge (" + e.a + ", " + e.b + "): endpoints must differ");
            if (e.b < e.a) std::swap(e.a, e.b);
        }
        std::sort(edges_.begin(), edges_.end(), [](const EdgeRecord& x, const EdgeRecord& y) {
            return std::tie(x.a, x.b) < std::tie(y.a, y.b);
        });
        for (size_t i = 1; i < edges_.size(); ++i)
            if (edges_[i].a == edges_[i - 1].a && edges_[i].b == edges_[i - 1].b)
                fail("duplicate edge (" + edges_[i].a + ", " + edges_[i].b + ")");

        adj_.assign(nodes_.size(), {});
        for (const auto& e : edges_) {
            const int ia = index_.at(e.a);
            const int ib = index_.at(e.b);
            const bool ghost_edge = is_ghost(ia) || is_ghost(ib);
            if (ghost_edge) {
                if (e.length_km != 0.0)
                    fail("edge (" + e.a + ", " + e.b + "): ghost link must have length 0");
            } else if (!(e.length_km > 0.0) || !std::isfinite(e.length_km)) {
                fail("edge (" + e.a + ", " + e.b + "): length_km must be a positive finite number");
            }
            adj_[static_cast<size_t>(ia)].emplace_back(ib, e.length_km);
            adj_[static_cast<size_t>(ib)].emplace_back(ia, e.length_km);
        }
        for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());

        ghost_count_ = 0;
        for (int i = 0; i < node_count(); ++i) {
            if (!is_ghost(i)) continue;
            ++ghost_count_;
            const auto& nbrs = adj_[static_cast<size_t>(i)];
            if (nbrs.size() != 1)
                fail("ghost node \"" + node(i).id + "\" must have exactly one incident edge");
            if (is_ghost(nbrs[0].first))
                fail("ghost node \"" + node(i).id + "\" must attach to a physical or synthetic node");
        }

        check_connected();
    }

    void check_connected() {
        std::vector<char> seen(nodes_.size(), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (const auto& [u, w] : adj_[static_cast<size_t>(v)]) {
                (void)w;
                if (!seen[static_cast<size_t>(u)]) {
                    seen[static_cast<size_t>(u)] = 1;
                    stack.push_back(u);
                }
            }
        }
        for (size_t i = 0; i < seen.size(); ++i)
            if (!seen[i])
                fail("topology \"" + name_ + "\" is not connected: node \"" + nodes_[i].id +
                     "\" unreachable from \"" + nodes_[0].id + "\"");
    }

    std::string name_;
    std::vector<NodeRecord> nodes_;
    std::vector<EdgeRecord> edges_;
    std::map<std::string, int> index_;
    std::vector<std::vector<std::pair<int, double>>> adj_;
    int ghost_count_ = 0;
};

namespace detail {

inline std::string ghost_id_for(const std::string& host) { return "ghost:" + host; }

inline std::string synthetic_id(const std::string& a, const std::string& b, int i) {
    return "syn:" + a + ":" + b + ":" + std::to_string(i);
}

// Number of equal segments a link of `length` must be cut into so that no
// segment exceeds l_max. Verified against the actual floating-point segment
// lengths by the caller; this only provides the starting estimate.
inline int segment_count(double length, double l_max) {
    int m = static_cast<int>(std::ceil(length / l_max));
    if (m < 1) m = 1;
    while (length / static_cast<double>(m) > l_max) ++m;
    return m;
}

// Cut positions for an equal split, measured from the canonical (lex-smaller)
// endpoint. Segment lengths are consumed as adjacent differences, so the
// per-link total is preserved exactly by telescoping.
inline std::vector<double> split_positions(double length, double l_max) {
    int m = segment_count(length, l_max);
    for (;; ++m) {
        std::vector<double> pos;
        pos.reserve(static_cast<size_t>(m) + 1);
        for (int j = 0; j <= m; ++j)
            pos.push_back(j == m ? length : length * static_cast<double>(j) / static_cast<double>(m));
        bool ok = true;
        for (int j = 0; j < m; ++j)
            if (pos[static_cast<size_t>(j) + 1] - pos[static_cast<size_t>(j)] > l_max) {
                ok = false;
                break;
            }
        if (ok) return pos;
    }
}

}  // namespace detail

// Adds one ghost node per physical/synthetic node, joined by a zero-length
// link. Ghosts model end users co-located with a node; they never carry
// repeaters and are excluded from coverage, so attaching them preserves all
// pairwise distances between existing nodes.
inline Topology attach_ghosts(const Topology& t) {
    if (t.has_ghosts())
        fail("topology \"" + t.name() + "\" already contains ghost nodes");
    std::vector<NodeRecord> nodes = t.nodes();
    std::vector<EdgeRecord> edges = t.edges();
    for (const auto& n : t.nodes()) {
        const std::string gid = detail::ghost_id_for(n.id);
        if (t.contains(gid))
            fail("ghost id \"" + gid + "\" collides with an existing node");
        nodes.push_back(NodeRecord{gid, NodeKind::ghost, n.lat, n.lon});
        edges.push_back(EdgeRecord{n.id, gid, 0.0});
    }
    return Topology::create(t.name(), std::move(nodes), std::move(edges));
}

struct AugmentResult {
    Topology topology;
    int synthetic_added = 0;
};

// Replaces every non-ghost link longer than l_max with a chain of equal
// segments joined by synthetic nodes. Total per-link length is preserved
// exactly; no resulting segment exceeds l_max.
inline AugmentResult augment_long_links(const Topology& t, double l_max) {
    if (!(l_max > 0.0)) fail("l_max must be positive");
    std::vector<NodeRecord> nodes = t.nodes();
    std::vector<EdgeRecord> edges;
    int added = 0;
    for (const auto& e : t.edges()) {
        const bool ghost_edge =
            t.is_ghost(t.index_of(e.a)) || t.is_ghost(t.index_of(e.b));
        if (ghost_edge || e.length_km <= l_max) {
            edges.push_back(e);
            continue;
        }
        const auto pos = detail::split_positions(e.length_km, l_max);
        const int m = static_cast<int>(pos.size()) - 1;
        const auto& na = t.node(t.index_of(e.a));
        const auto& nb = t.node(t.index_of(e.b));
        std::string prev = e.a;
        for (int j = 1; j < m; ++j) {
            const std::string sid = detail::synthetic_id(e.a, e.b, j);
            if (t.contains(sid))
                fail("synthetic id \"" + sid + "\" collides with an existing node");
            NodeRecord rec{sid, NodeKind::synthetic, std::nullopt, std::nullopt};
            if (na.lat && na.lon && nb.lat && nb.lon) {
                const double f = pos[static_cast<size_t>(j)] / e.length_km;
                rec.lat = *na.lat + (*nb.lat - *na.lat) * f;
                rec.lon = *na.lon + (*nb.lon - *na.lon) * f;
            }
            nodes.push_back(rec);
            edges.push_back(EdgeRecord{prev, sid,
                                       pos[static_cast<size_t>(j)] - pos[static_cast<size_t>(j) - 1]});
            prev = sid;
            ++added;
        }
        edges.push_back(EdgeRecord{prev, e.b,
                                   pos[static_cast<size_t>(m)] - pos[static_cast<size_t>(m) - 1]});
    }
    return AugmentResult{Topology::create(t.name(), std::move(nodes), std::move(edges)), added};
}

enum class TopologyModel { unit_complete_like, geometric };

inline TopologyModel topology_model_from_string(const std::string& s) {
    if (s == "unit" || s == "unit_complete_like") return TopologyModel::unit_complete_like;
    if (s == "geometric") return TopologyModel::geometric;
    fail("unknown topology model \"" + s + "\" (expected unit or geometric)");
}

namespace detail {

// Uniform double in [0, 1) from the top 53 bits; avoids the
// implementation-defined behavior of std::uniform_real_distribution.
template <typename Rng>
double unit_double(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::string generated_node_id(int i, int n) {
    int width = 1;
    for (int v = n - 1; v >= 10; v /= 10) ++width;
    std::string digits = std::to_string(i);
    return "n" + std::string(static_cast<size_t>(width) - digits.size(), '0') + digits;
}

}  // namespace detail

// Seeded topology generator. `geometric` drops nodes uniformly into the unit
// square and links every pair closer than a density-scaled radius, with edge
// length equal to Euclidean distance; disconnected draws are retried from the
// same stream. `unit_complete_like` starts from a complete graph with every
// link exactly 1.0 long and sparsifies it while keeping minimum degree at
// least half the graph. Identical (n, model, seed) always yields an
// identical topology.
inline Topology generate_random_topology(int n, TopologyModel model, std::uint64_t seed) {
    if (n < 1) fail("node count must be at least 1");
    std::mt19937_64 rng(seed);

    if (model == TopologyModel::unit_complete_like) {
        const std::string name = "unit-n" + std::to_string(n) + "-s" + std::to_string(seed);
        std::vector<NodeRecord> nodes;
        for (int i = 0; i < n; ++i)
            nodes.push_back(NodeRecord{detail::generated_node_id(i, n), NodeKind::physical,
                                       std::nullopt, std::nullopt});
        std::vector<EdgeRecord> edges;
        std::vector<int> deg(static_cast<size_t>(n), n - 1);
        const int min_deg = (n - 1 + 1) / 2;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                bool drop = false;
                if (n >= 4) {
                    const double u = detail::unit_double(rng);
                    drop = u < 0.15 && deg[static_cast<size_t>(i)] > min_deg &&
                           deg[static_cast<size_t>(j)] > min_deg;
                }
                if (drop) {
                    --deg[static_cast<size_t>(i)];
                    --deg[static_cast<size_t>(j)];
                } else {
                    edges.push_back(EdgeRecord{nodes[static_cast<size_t>(i)].id,
                                               nodes[static_cast<size_t>(j)].id, 1.0});
                }
            }
        return Topology::create(name, std::move(nodes), std::move(edges));
    }

    const std::string name = "geometric-n" + std::to_string(n) + "-s" + std::to_string(seed);
    const double density = std::log(static_cast<double>(std::max(n, 2)));
    const double radius =
        std::min(1.0, 1.6 * std::sqrt(density / (3.141592653589793 * static_cast<double>(n))));
    constexpr int max_attempts = 64;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<double> xs, ys;
        xs.reserve(static_cast<size_t>(n));
        ys.reserve(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            xs.push_back(detail::unit_double(rng));
            ys.push_back(detail::unit_double(rng));
        }
        std::vector<NodeRecord> nodes;
        for (int i = 0; i < n; ++i)
            nodes.push_back(NodeRecord{detail::generated_node_id(i, n), NodeKind::physical,
                                       ys[static_cast<size_t>(i)], xs[static_cast<size_t>(i)]});
        std::vector<EdgeRecord> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double dx = xs[static_cast<size_t>(i)] - xs[static_cast<size_t>(j)];
                const double dy = ys[static_cast<size_t>(i)] - ys[static_cast<size_t>(j)];
                const double d = std::sqrt(dx * dx + dy * dy);
                if (d <= radius && d > 1e-12)
                    edges.push_back(EdgeRecord{nodes[static_cast<size_t>(i)].id,
                                               nodes[static_cast<size_t>(j)].id, d});
            }
        // Connectivity probe without constructing the full Topology.
        std::vector<std::vector<int>> adj(static_cast<size_t>(n));
        std::map<std::string, int> idx;
        for (int i = 0; i < n; ++i) idx[nodes[static_cast<size_t>(i)].id] = i;
        for (const auto& e : edges) {
            adj[static_cast<size_t>(idx[e.a])].push_back(idx[e.b]);
            adj[static_cast<size_t>(idx[e.b])].push_back(idx[e.a]);
        }
        std::vector<char> seen(static_cast<size_t>(n), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int reached = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int u : adj[static_cast<size_t>(v)])
                if (!seen[static_cast<size_t>(u)]) {
                    seen[static_cast<size_t>(u)] = 1;
                    ++reached;
                    stack.push_back(u);
                }
        }
        if (reached == n)
            return Topology::create(name, std::move(nodes), std::move(edges));
    }
    fail("geometric draw for n=" + std::to_string(n) + " seed=" + std::to_string(seed) +
         " stayed disconnected after " + std::to_string(max_attempts) + " attempts");
}

}  // namespace qrplan
