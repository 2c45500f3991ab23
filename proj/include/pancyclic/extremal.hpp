#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pancyclic/canon.hpp"
#include "pancyclic/cycle_search.hpp"
#include "pancyclic/parallel.hpp"

namespace pancyclic {

enum class ExtremalErrc { OrderTooLarge, BadParameter };

class ExtremalError : public std::runtime_error {
public:
    ExtremalError(ExtremalErrc code, const std::string& what)
        : std::runtime_error(std::string(code == ExtremalErrc::OrderTooLarge ? "OrderTooLarge" : "BadParameter") +
                             ": " + what),
          code_(code) {}
    ExtremalErrc code() const noexcept { return code_; }

private:
    ExtremalErrc code_;
};

inline constexpr std::size_t kEnumerationCap = 11;

struct EnumConstraints {
    bool connected = false;
    std::size_t min_degree = 0;
};

struct EnumOptions {
    bool force = false;  // lift the order cap (up to 16); may run for hours
    unsigned jobs = 0;
};

namespace detail {

inline void check_order(std::size_t n, bool force) {
    if (n > SmallGraph::kMax || (n > kEnumerationCap && !force)) {
        throw ExtremalError(ExtremalErrc::OrderTooLarge,
                            "n=" + std::to_string(n) + " exceeds the cap of " + std::to_string(kEnumerationCap));
    }
}

inline bool small_connected(const SmallGraph& g) {
    if (g.n <= 1) return true;
    std::uint32_t seen = 1, frontier = 1;
    while (frontier) {
        std::uint32_t next = 0;
        for (std::uint32_t f = frontier; f; f &= f - 1) next |= g.adj[__builtin_ctz(f)];
        frontier = next & ~seen;
        seen |= next;
    }
    return seen == ((g.n == 32 ? 0U : (1U << g.n)) - 1U);
}

/// Canonical augmentation by vertices. A child G' = G + v is accepted when v
/// is a minimum-degree vertex in the orbit of the canonical deletion vertex
/// (the minimum-degree vertex with the largest canonical position), and its
/// class was not produced earlier by the same parent.
class Augmenter {
public:
    Augmenter(int n, int m, EnumConstraints c) : n_(n), m_(m), c_(c) {}

    bool admissible(const SmallGraph& g) const {
        const int r = n_ - g.n;
        const int e = g.edges();
        if (e > m_) return false;
        if (m_ - e > r * (r - 1) / 2 + r * g.n) return false;
        const int need = static_cast<int>(c_.min_degree) - r;
        for (int v = 0; v < g.n; ++v)
            if (g.degree(v) < need) return false;
        return true;
    }

    bool final_ok(const SmallGraph& g) const {
        if (g.edges() != m_) return false;
        for (int v = 0; v < g.n; ++v)
            if (g.degree(v) < static_cast<int>(c_.min_degree)) return false;
        return !c_.connected || small_connected(g);
    }

    std::vector<SmallGraph> children(const SmallGraph& g) const {
        std::vector<SmallGraph> out;
        std::set<CanonCode> seen;
        const int k = g.n;
        for (std::uint32_t S = 0; S < (1U << k); ++S) {
            SmallGraph h = g;
            h.n = k + 1;
            for (std::uint32_t t = S; t; t &= t - 1) h.add(k, __builtin_ctz(t));
            if (!admissible(h)) continue;
            const int dv = h.degree(k);
            int dmin = dv;
            for (int v = 0; v < k; ++v) dmin = std::min(dmin, h.degree(v));
            if (dv != dmin) continue;
            auto cf = canonical_form(h);
            int w = -1;
            for (int i = h.n - 1; i >= 0; --i) {
                if (h.degree(cf.lab[i]) == dmin) {
                    w = cf.lab[i];
                    break;
                }
            }
            if (w != k) {
                std::vector<int> ck(static_cast<std::size_t>(h.n), 0), cw(static_cast<std::size_t>(h.n), 0);
                ck[k] = 1;
                cw[w] = 1;
                if (canonical_form(h, ck).code != canonical_form(h, cw).code) continue;
            }
            if (!seen.insert(cf.code).second) continue;
            out.push_back(h);
        }
        return out;
    }

    void dfs(const SmallGraph& g, std::vector<SmallGraph>& out) const {
        if (g.n == n_) {
            if (final_ok(g)) out.push_back(g);
            return;
        }
        for (const auto& h : children(g)) dfs(h, out);
    }

private:
    int n_, m_;
    EnumConstraints c_;
};

}  // namespace detail

/// One representative per isomorphism class of graphs with n vertices and m
/// edges meeting the constraints, in a deterministic order.
inline std::vector<Graph> enumerate_graphs(std::size_t n, std::size_t m, const EnumConstraints& c = {},
                                           const EnumOptions& opts = {}) {
    detail::check_order(n, opts.force);
    if (m > n * (n - (n ? 1 : 0)) / 2) return {};
    detail::Augmenter aug(static_cast<int>(n), static_cast<int>(m), c);
    // Expand serially to a frontier, then split subtrees across workers.
    std::vector<SmallGraph> frontier{SmallGraph{}};
    const int split = std::min<int>(static_cast<int>(n), 5);
    for (int level = 0; level < split; ++level) {
        std::vector<SmallGraph> next;
        for (const auto& g : frontier)
            for (auto& h : aug.children(g)) next.push_back(h);
        frontier = std::move(next);
    }
    std::vector<std::vector<SmallGraph>> parts(frontier.size());
    parallel_for(frontier.size(), resolve_jobs(opts.jobs), [&](std::size_t i) { aug.dfs(frontier[i], parts[i]); });
    std::vector<Graph> out;
    for (auto& p : parts)
        for (auto& g : p) out.push_back(g.to_graph());
    return out;
}

// ---------------------------------------------------------------------------

struct SearchOutcome {
    std::size_t n = 0;
    Property property;
    std::optional<std::size_t> minimum_edges;
    std::optional<Graph> witness;
    bool exhausted = false;
    std::size_t start_edges = 0;
    std::map<std::size_t, std::size_t> counts;  // classes examined per edge count
};

struct MinSizeOptions {
    bool prune_min_degree = true;
    EnumOptions enumeration;
};

namespace detail {

inline void check_property_params(std::size_t n, const Property& p) {
    if (n < 3) throw ExtremalError(ExtremalErrc::BadParameter, "order below 3");
    if (p.kind == PropertyKind::KEdgeProper && (p.k < 3 || p.k > n)) {
        throw ExtremalError(ExtremalErrc::BadParameter, "k=" + std::to_string(p.k) + " outside [3,n]");
    }
}

inline std::size_t pruning_degree(const Property& p, bool prune) {
    if (!prune) return 2;  // every vertex of a Hamiltonian graph has degree >= 2
    return p.kind == PropertyKind::VertexPancyclic ? 2 : 3;
}

/// Necessary condition: every edge (or vertex) lies on a triangle.
inline bool triangles_ok(const Graph& g, const Property& p) {
    auto s = SmallGraph::from(g);
    if (p.kind == PropertyKind::VertexPancyclic) {
        for (int v = 0; v < s.n; ++v) {
            bool hit = false;
            for (std::uint32_t nb = s.adj[v]; nb && !hit; nb &= nb - 1) hit = (s.adj[__builtin_ctz(nb)] & s.adj[v]) != 0;
            if (!hit) return false;
        }
        return true;
    }
    for (int a = 0; a < s.n; ++a)
        for (int b = a + 1; b < s.n; ++b)
            if (s.has(a, b) && (s.adj[a] & s.adj[b]) == 0) return false;
    return true;
}

inline bool satisfies(const Graph& g, const Property& p) {
    if (!triangles_ok(g, p)) return false;
    return check_property(g, p).verdict == Verdict::Pass;
}

/// Index of the first graph with the property, or nullopt.
inline std::optional<std::size_t> first_satisfying(const std::vector<Graph>& gs, const Property& p, unsigned jobs) {
    std::atomic<std::size_t> best{gs.size()};
    parallel_for(gs.size(), resolve_jobs(jobs), [&](std::size_t i) {
        if (i >= best.load()) return;
        if (!satisfies(gs[i], p)) return;
        std::size_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
    });
    if (best.load() == gs.size()) return std::nullopt;
    return best.load();
}

}  // namespace detail

/// Smallest m such that some graph of order n with m edges has the property.
/// The sweep starts at the degree-sum bound so every smaller m is covered.
inline SearchOutcome min_size(std::size_t n, const Property& prop, const MinSizeOptions& opts = {}) {
    detail::check_order(n, opts.enumeration.force);
    detail::check_property_params(n, prop);
    SearchOutcome out;
    out.n = n;
    out.property = prop;
    const std::size_t d = detail::pruning_degree(prop, opts.prune_min_degree);
    out.start_edges = (d * n + 1) / 2;
    EnumConstraints c{true, d};
    for (std::size_t m = out.start_edges; m <= n * (n - 1) / 2; ++m) {
        auto gs = enumerate_graphs(n, m, c, opts.enumeration);
        out.counts[m] = gs.size();
        if (auto idx = detail::first_satisfying(gs, prop, opts.enumeration.jobs)) {
            out.minimum_edges = m;
            out.witness = gs[*idx];
            out.exhausted = true;
            return out;
        }
    }
    out.exhausted = true;
    return out;
}

struct NoGraphCertificate {
    bool holds = false;
    std::size_t n = 0, threshold = 0;
    Property property;
    std::map<std::size_t, std::size_t> counts;
    std::optional<Graph> counterexample;
};

/// True iff no graph of order n with fewer than m edges has the property.
inline NoGraphCertificate certify_no_graph_below_report(std::size_t n, const Property& prop, std::size_t m,
                                                        const MinSizeOptions& opts = {}) {
    detail::check_order(n, opts.enumeration.force);
    detail::check_property_params(n, prop);
    NoGraphCertificate cert;
    cert.n = n;
    cert.threshold = m;
    cert.property = prop;
    const std::size_t d = detail::pruning_degree(prop, opts.prune_min_degree);
    EnumConstraints c{true, d};
    for (std::size_t e = (d * n + 1) / 2; e < m && e <= n * (n - 1) / 2; ++e) {
        auto gs = enumerate_graphs(n, e, c, opts.enumeration);
        cert.counts[e] = gs.size();
        if (auto idx = detail::first_satisfying(gs, prop, opts.enumeration.jobs)) {
            cert.counterexample = gs[*idx];
            cert.holds = false;
            return cert;
        }
    }
    cert.holds = true;
    return cert;
}

inline bool certify_no_graph_below(std::size_t n, const Property& prop, std::size_t m, const MinSizeOptions& opts = {}) {
    return certify_no_graph_below_report(n, prop, m, opts).holds;
}

}  // namespace pancyclic
