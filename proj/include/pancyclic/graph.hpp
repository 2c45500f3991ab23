#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pancyclic {

using Vertex = std::uint32_t;

enum class GraphErrc {
    LoopEdge,
    DuplicateEdge,
    IndexOutOfRange,
    MissingEdge,
    DisconnectedSet,
    EmptySet,
    MinDegreeTooLow,
    MalformedGraph6,
    MalformedJson,
};

inline const char* to_string(GraphErrc e) {
    switch (e) {
    case GraphErrc::LoopEdge: return "LoopEdge";
    case GraphErrc::DuplicateEdge: return "DuplicateEdge";
    case GraphErrc::IndexOutOfRange: return "IndexOutOfRange";
    case GraphErrc::MissingEdge: return "MissingEdge";
    case GraphErrc::DisconnectedSet: return "DisconnectedSet";
    case GraphErrc::EmptySet: return "EmptySet";
    case GraphErrc::MinDegreeTooLow: return "MinDegreeTooLow";
    case GraphErrc::MalformedGraph6: return "MalformedGraph6";
    case GraphErrc::MalformedJson: return "MalformedJson";
    }
    return "Unknown";
}

class GraphError : public std::runtime_error {
public:
    GraphError(GraphErrc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    GraphErrc code() const noexcept { return code_; }

private:
    GraphErrc code_;
};

/// Unordered vertex pair stored with u < v.
struct EdgeRef {
    Vertex u = 0;
    Vertex v = 0;

    EdgeRef() = default;
    EdgeRef(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

    bool contains(Vertex x) const { return x == u || x == v; }
    Vertex other(Vertex x) const { return x == u ? v : u; }

    friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
    friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

struct EdgeRefHash {
    std::size_t operator()(const EdgeRef& e) const noexcept {
        return std::hash<std::uint64_t>{}((std::uint64_t(e.u) << 32) | e.v);
    }
};

/// Simple undirected graph. Immutable once built: every operation that
/// changes structure returns a new value.
///
/// Neighbor lists are always kept sorted. Up to kDenseLimit vertices a dense
/// adjacency bit matrix is kept as well so has_edge is a single word probe;
/// above that has_edge falls back to binary search in the sorted lists.
class Graph {
public:
    static constexpr std::size_t kDenseLimit = 512;

    Graph() = default;

    /// Builds the simple graph on [0, n) with exactly the given edges.
    /// Loops, repeated pairs and out-of-range indices are rejected.
    static Graph from_edges(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges) {
        Graph g(n);
        for (auto [a, b] : edges) {
            if (a >= n || b >= n) {
                throw GraphError(GraphErrc::IndexOutOfRange,
                                 "edge (" + std::to_string(a) + "," + std::to_string(b) +
                                     ") on " + std::to_string(n) + " vertices");
            }
            if (a == b) throw GraphError(GraphErrc::LoopEdge, "loop at " + std::to_string(a));
            g.adj_[a].push_back(b);
            g.adj_[b].push_back(a);
        }
        for (Vertex v = 0; v < n; ++v) {
            auto& nb = g.adj_[v];
            std::sort(nb.begin(), nb.end());
            auto dup = std::adjacent_find(nb.begin(), nb.end());
            if (dup != nb.end()) {
                throw GraphError(GraphErrc::DuplicateEdge,
                                 "(" + std::to_string(std::min<Vertex>(v, *dup)) + "," +
                                     std::to_string(std::max<Vertex>(v, *dup)) + ") given twice");
            }
        }
        g.finish();
        return g;
    }

    static Graph from_edges(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> edges) {
        return from_edges(n, std::span<const std::pair<Vertex, Vertex>>(edges.begin(), edges.size()));
    }

    static Graph from_edges(std::size_t n, const std::vector<EdgeRef>& edges) {
        std::vector<std::pair<Vertex, Vertex>> pairs;
        pairs.reserve(edges.size());
        for (const auto& e : edges) pairs.emplace_back(e.u, e.v);
        return from_edges(n, std::span<const std::pair<Vertex, Vertex>>(pairs));
    }

    /// Like from_edges but silently drops loops and repeated pairs.
    static Graph from_edges_collapsing(std::size_t n, std::vector<EdgeRef> edges) {
        std::erase_if(edges, [](const EdgeRef& e) { return e.u == e.v; });
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        return from_edges(n, edges);
    }

    std::size_t vertex_count() const noexcept { return adj_.size(); }
    std::size_t edge_count() const noexcept { return m_; }
    bool dense() const noexcept { return !matrix_.empty() || adj_.empty(); }

    std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
    std::size_t degree(Vertex v) const { return adj_[v].size(); }

    std::size_t min_degree() const {
        std::size_t d = adj_.empty() ? 0 : adj_[0].size();
        for (const auto& nb : adj_) d = std::min(d, nb.size());
        return d;
    }
    std::size_t max_degree() const {
        std::size_t d = 0;
        for (const auto& nb : adj_) d = std::max(d, nb.size());
        return d;
    }

    bool has_edge(Vertex a, Vertex b) const {
        if (a >= adj_.size() || b >= adj_.size() || a == b) return false;
        if (!matrix_.empty()) {
            return (matrix_[a * words_ + b / 64] >> (b % 64)) & 1U;
        }
        const auto& nb = adj_[a].size() <= adj_[b].size() ? adj_[a] : adj_[b];
        Vertex target = adj_[a].size() <= adj_[b].size() ? b : a;
        return std::binary_search(nb.begin(), nb.end(), target);
    }
    bool has_edge(const EdgeRef& e) const { return has_edge(e.u, e.v); }

    /// All edges in canonical (u < v, lexicographic) order.
    std::vector<EdgeRef> edges() const {
        std::vector<EdgeRef> out;
        out.reserve(m_);
        for (Vertex u = 0; u < adj_.size(); ++u) {
            for (Vertex v : adj_[u]) {
                if (u < v) out.emplace_back(u, v);
            }
        }
        return out;
    }

    std::vector<std::size_t> degrees() const {
        std::vector<std::size_t> d(adj_.size());
        for (std::size_t v = 0; v < adj_.size(); ++v) d[v] = adj_[v].size();
        return d;
    }

    bool is_connected() const {
        if (adj_.size() <= 1) return true;
        std::vector<char> seen(adj_.size(), 0);
        std::vector<Vertex> stack{0};
        seen[0] = 1;
        std::size_t count = 1;
        while (!stack.empty()) {
            Vertex x = stack.back();
            stack.pop_back();
            for (Vertex y : adj_[x]) {
                if (!seen[y]) {
                    seen[y] = 1;
                    ++count;
                    stack.push_back(y);
                }
            }
        }
        return count == adj_.size();
    }

    /// Checks the representation invariants; used by tests after every construction.
    bool check_invariants() const {
        std::size_t deg_sum = 0;
        for (Vertex v = 0; v < adj_.size(); ++v) {
            const auto& nb = adj_[v];
            if (!std::is_sorted(nb.begin(), nb.end())) return false;
            if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) return false;
            for (Vertex w : nb) {
                if (w == v || w >= adj_.size()) return false;
                if (!std::binary_search(adj_[w].begin(), adj_[w].end(), v)) return false;
                if (!matrix_.empty() && !has_edge(v, w)) return false;
            }
            deg_sum += nb.size();
        }
        return deg_sum == 2 * m_;
    }

    friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

private:
    explicit Graph(std::size_t n) : adj_(n) {}

    void finish() {
        std::size_t deg_sum = 0;
        for (const auto& nb : adj_) deg_sum += nb.size();
        m_ = deg_sum / 2;
        matrix_.clear();
        words_ = 0;
        if (adj_.size() <= kDenseLimit) {
            words_ = (adj_.size() + 63) / 64;
            matrix_.assign(adj_.size() * words_, 0);
            for (Vertex v = 0; v < adj_.size(); ++v) {
                for (Vertex w : adj_[v]) matrix_[v * words_ + w / 64] |= std::uint64_t{1} << (w % 64);
            }
        }
    }

    std::vector<std::vector<Vertex>> adj_;
    std::vector<std::uint64_t> matrix_;
    std::size_t words_ = 0;
    std::size_t m_ = 0;
};

inline Graph build_graph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges) {
    return Graph::from_edges(n, edges);
}

/// Partition of the vertex set into degree-3 vertices and degree >= 4 vertices.
struct DegreeClasses {
    std::vector<Vertex> v3;
    std::vector<Vertex> v4plus;
};

inline DegreeClasses degree_classes(const Graph& g) {
    if (g.vertex_count() > 0 && g.min_degree() < 3) {
        throw GraphError(GraphErrc::MinDegreeTooLow,
                         "minimum degree " + std::to_string(g.min_degree()) + " < 3");
    }
    DegreeClasses dc;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        (g.degree(v) == 3 ? dc.v3 : dc.v4plus).push_back(v);
    }
    return dc;
}

namespace detail {

// Relabels after merging: every vertex in `merged` maps to `keep`; the
// highest surviving index moves into each freed slot. Returns the map
// old index -> new index.
inline std::vector<Vertex> contraction_map(std::size_t n, std::vector<Vertex> merged, Vertex keep) {
    std::sort(merged.begin(), merged.end());
    std::vector<char> removed(n, 0);
    for (Vertex x : merged) {
        if (x != keep) removed[x] = 1;
    }
    std::vector<Vertex> map(n);
    std::iota(map.begin(), map.end(), Vertex{0});
    // fill holes from the top, lowest hole first
    std::size_t top = n;
    for (Vertex hole : merged) {
        if (hole == keep) continue;
        while (top > 0 && removed[top - 1]) --top;
        if (top == 0 || top - 1 <= hole) break;
        --top;
        map[top] = hole;
        removed[top] = 1;
        removed[hole] = 0;
    }
    for (Vertex x : merged) map[x] = keep;
    // keep may itself have been relocated? No: keep is the lowest merged index,
    // so it is never above a hole that gets filled from the top.
    return map;
}

inline Graph apply_map(const Graph& g, const std::vector<Vertex>& map, std::size_t new_n) {
    std::vector<EdgeRef> edges;
    edges.reserve(g.edge_count());
    for (const auto& e : g.edges()) edges.emplace_back(map[e.u], map[e.v]);
    return Graph::from_edges_collapsing(new_n, std::move(edges));
}

}  // namespace detail

/// Merges the endpoints of e into one vertex. Loops vanish and parallel edges
/// collapse. The lower endpoint survives; the last vertex is renumbered into
/// the freed slot.
inline Graph contract_edge(const Graph& g, const EdgeRef& e) {
    if (!g.has_edge(e)) {
        throw GraphError(GraphErrc::MissingEdge,
                         "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    }
    auto map = detail::contraction_map(g.vertex_count(), {e.u, e.v}, e.u);
    return detail::apply_map(g, map, g.vertex_count() - 1);
}

/// Merges a connected vertex set into its lowest member.
inline Graph contract_set(const Graph& g, std::vector<Vertex> set) {
    if (set.empty()) throw GraphError(GraphErrc::EmptySet, "contract_set on empty set");
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    for (Vertex x : set) {
        if (x >= g.vertex_count()) throw GraphError(GraphErrc::IndexOutOfRange, std::to_string(x));
    }
    // g[S] must be connected
    std::vector<char> in(g.vertex_count(), 0), seen(g.vertex_count(), 0);
    for (Vertex x : set) in[x] = 1;
    std::vector<Vertex> stack{set.front()};
    seen[set.front()] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        Vertex x = stack.back();
        stack.pop_back();
        for (Vertex y : g.neighbors(x)) {
            if (in[y] && !seen[y]) {
                seen[y] = 1;
                ++reached;
                stack.push_back(y);
            }
        }
    }
    if (reached != set.size()) {
        throw GraphError(GraphErrc::DisconnectedSet, "induced subgraph on the set is disconnected");
    }
    auto map = detail::contraction_map(g.vertex_count(), set, set.front());
    return detail::apply_map(g, map, g.vertex_count() - set.size() + 1);
}

}  // namespace pancyclic
