#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pancyclic/graph.hpp"

namespace pancyclic {

/// Adjacency bitmasks for graphs of order at most 16.
struct SmallGraph {
    static constexpr int kMax = 16;
    int n = 0;
    std::array<std::uint32_t, kMax> adj{};

    static SmallGraph from(const Graph& g) {
        if (g.vertex_count() > kMax) throw std::invalid_argument("SmallGraph order above 16");
        SmallGraph s;
        s.n = static_cast<int>(g.vertex_count());
        for (const auto& e : g.edges()) s.add(static_cast<int>(e.u), static_cast<int>(e.v));
        return s;
    }

    void add(int a, int b) {
        adj[a] |= 1U << b;
        adj[b] |= 1U << a;
    }
    bool has(int a, int b) const { return (adj[a] >> b) & 1U; }
    int degree(int v) const { return __builtin_popcount(adj[v]); }
    int edges() const {
        int m = 0;
        for (int v = 0; v < n; ++v) m += degree(v);
        return m / 2;
    }

    Graph to_graph() const {
        std::vector<EdgeRef> es;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (has(a, b)) es.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
        return Graph::from_edges(static_cast<std::size_t>(n), es);
    }

    /// Relabel so that vertex lab[i] becomes i.
    SmallGraph permuted(const std::vector<int>& lab) const {
        std::vector<int> pos(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) pos[lab[i]] = i;
        SmallGraph out;
        out.n = n;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (has(a, b)) out.add(pos[a], pos[b]);
        return out;
    }
};

using CanonCode = unsigned __int128;

struct CanonResult {
    CanonCode code = 0;
    std::vector<int> lab;  // lab[i] = vertex placed at canonical position i
};

namespace detail {

class Canonizer {
public:
    Canonizer(const SmallGraph& g, const std::vector<int>& colors) : g_(g), n_(g.n) {
        cell_.assign(static_cast<std::size_t>(n_), 0);
        for (int v = 0; v < n_; ++v) cell_[v] = colors.empty() ? 0 : colors[v];
    }

    CanonResult run() {
        normalize(cell_);
        search(cell_);
        return best_;
    }

private:
    // Cells are numbered 0..c-1 in order; refinement splits by neighbor counts per cell.
    static void normalize(std::vector<int>& cell) {
        std::vector<int> keys(cell);
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        for (auto& c : cell) c = static_cast<int>(std::lower_bound(keys.begin(), keys.end(), c) - keys.begin());
    }

    int refine(std::vector<int>& cell) const {
        int cells = 1 + *std::max_element(cell.begin(), cell.end());
        while (true) {
            std::vector<std::vector<int>> key(static_cast<std::size_t>(n_));
            for (int v = 0; v < n_; ++v) {
                key[v].assign(static_cast<std::size_t>(cells) + 1, 0);
                key[v][0] = cell[v];
                std::uint32_t nb = g_.adj[v];
                while (nb) {
                    int u = __builtin_ctz(nb);
                    nb &= nb - 1;
                    ++key[v][1 + cell[u]];
                }
            }
            std::vector<int> order(static_cast<std::size_t>(n_));
            for (int v = 0; v < n_; ++v) order[v] = v;
            std::sort(order.begin(), order.end(), [&](int a, int b) { return key[a] < key[b]; });
            std::vector<int> next(static_cast<std::size_t>(n_));
            int c = 0;
            for (int i = 0; i < n_; ++i) {
                if (i > 0 && key[order[i]] != key[order[i - 1]]) ++c;
                next[order[i]] = c;
            }
            const int new_cells = c + 1;
            cell = std::move(next);
            if (new_cells == cells) return cells;
            cells = new_cells;
        }
    }

    CanonCode code_of(const std::vector<int>& lab) const {
        CanonCode code = 0;
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j) code = (code << 1) | static_cast<CanonCode>(g_.has(lab[i], lab[j]));
        return code;
    }

    void search(std::vector<int> cell) {
        const int cells = n_ == 0 ? 0 : refine(cell);
        if (cells == n_) {
            std::vector<int> lab(static_cast<std::size_t>(n_));
            for (int v = 0; v < n_; ++v) lab[cell[v]] = v;
            CanonCode c = code_of(lab);
            if (!have_ || c > best_.code) {
                have_ = true;
                best_.code = c;
                best_.lab = std::move(lab);
            }
            return;
        }
        std::vector<int> size(static_cast<std::size_t>(cells), 0);
        for (int v = 0; v < n_; ++v) ++size[cell[v]];
        int target = -1;
        for (int c = 0; c < cells; ++c)
            if (size[c] > 1 && (target < 0 || size[c] < size[target])) target = c;
        std::vector<int> tried;
        for (int v = 0; v < n_; ++v) {
            if (cell[v] != target) continue;
            bool twin = false;
            for (int u : tried) {
                const std::uint32_t bu = 1U << u, bv = 1U << v;
                if ((g_.adj[u] & ~bv) == (g_.adj[v] & ~bu)) {
                    twin = true;
                    break;
                }
            }
            if (twin) continue;
            tried.push_back(v);
            std::vector<int> child(cell);
            for (int x = 0; x < n_; ++x) child[x] = 2 * cell[x] + ((cell[x] == target && x != v) ? 1 : 0);
            normalize(child);
            search(std::move(child));
        }
    }

    const SmallGraph& g_;
    int n_;
    std::vector<int> cell_;
    CanonResult best_;
    bool have_ = false;
};

}  // namespace detail

/// Canonical form: the maximum upper-triangle adjacency code over the leaves
/// of a refinement/individualization tree, respecting an optional coloring.
inline CanonResult canonical_form(const SmallGraph& g, const std::vector<int>& colors = {}) {
    return detail::Canonizer(g, colors).run();
}

inline CanonCode canonical_code(const Graph& g) { return canonical_form(SmallGraph::from(g)).code; }

inline bool isomorphic(const Graph& a, const Graph& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    return canonical_code(a) == canonical_code(b);
}

/// The graph relabeled into canonical order.
inline Graph canonical_graph(const Graph& g) {
    SmallGraph s = SmallGraph::from(g);
    return s.permuted(canonical_form(s).lab).to_graph();
}

}  // namespace pancyclic
