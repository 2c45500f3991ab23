#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pancyclic/graph.hpp"

namespace pancyclic {

enum class ConstructionErrc { ParamTooSmall, DegenerateCycle, TooLarge };

inline const char* to_string(ConstructionErrc e) {
    switch (e) {
    case ConstructionErrc::ParamTooSmall: return "ParamTooSmall";
    case ConstructionErrc::DegenerateCycle: return "DegenerateCycle";
    case ConstructionErrc::TooLarge: return "TooLarge";
    }
    return "Unknown";
}

class ConstructionError : public std::runtime_error {
public:
    ConstructionError(ConstructionErrc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    ConstructionErrc code() const noexcept { return code_; }

private:
    ConstructionErrc code_;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw ConstructionError(ConstructionErrc::ParamTooSmall, what);
}

using EdgeList = std::vector<std::pair<Vertex, Vertex>>;

inline Graph make(std::size_t n, const EdgeList& edges) {
    return Graph::from_edges(n, std::span<const std::pair<Vertex, Vertex>>(edges));
}

/// s^e, or nullopt on overflow past `limit`.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t s, std::uint64_t e,
                                                std::uint64_t limit = std::numeric_limits<std::uint64_t>::max()) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (r > limit / s) return std::nullopt;
        r *= s;
    }
    return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Small families

/// W_n: hub 0 joined to the cycle 1..n-1.
inline Graph wheel(std::size_t n) {
    detail::require(n >= 4, "wheel needs n >= 4, got " + std::to_string(n));
    detail::EdgeList e;
    for (Vertex i = 1; i < n; ++i) {
        e.emplace_back(0, i);
        e.emplace_back(i, i + 1 < n ? i + 1 : 1);
    }
    return detail::make(n, e);
}

/// F_k: path 0..k-2 and center k-1.
inline Graph fan(std::size_t k) {
    detail::require(k >= 3, "fan needs k >= 3, got " + std::to_string(k));
    detail::EdgeList e;
    const auto center = static_cast<Vertex>(k - 1);
    for (Vertex i = 0; i + 1 < center; ++i) e.emplace_back(i, i + 1);
    for (Vertex i = 0; i < center; ++i) e.emplace_back(i, center);
    return detail::make(k, e);
}

inline Graph complete_graph(std::size_t n) {
    detail::EdgeList e;
    for (Vertex j = 1; j < n; ++j)
        for (Vertex i = 0; i < j; ++i) e.emplace_back(i, j);
    return detail::make(n, e);
}

inline Graph cycle_graph(std::size_t n) {
    detail::require(n >= 3, "cycle needs n >= 3");
    detail::EdgeList e;
    for (Vertex i = 0; i < n; ++i) e.emplace_back(i, static_cast<Vertex>((i + 1) % n));
    return detail::make(n, e);
}

inline Graph complete_bipartite(std::size_t a, std::size_t b) {
    detail::EdgeList e;
    for (Vertex i = 0; i < a; ++i)
        for (Vertex j = 0; j < b; ++j) e.emplace_back(i, static_cast<Vertex>(a + j));
    return detail::make(a + b, e);
}

inline Graph petersen_graph() {
    detail::EdgeList e;
    for (Vertex i = 0; i < 5; ++i) {
        e.emplace_back(i, (i + 1) % 5);
        e.emplace_back(i, i + 5);
        e.emplace_back(i + 5, (i + 2) % 5 + 5);
    }
    return detail::make(10, e);
}

// The extremal families for 3-edge-proper graphs. Cycle vertices v_1..v_m
// get indices 0..m-1; the attached vertices u_1..u_k follow.

namespace detail {

inline void attach_triples(EdgeList& e, std::size_t k, std::size_t cycle_len) {
    for (std::size_t i = 1; i <= k; ++i) {
        auto u = static_cast<Vertex>(cycle_len + i - 1);
        for (std::size_t t : {2 * i - 1, 2 * i, 2 * i + 1}) {
            std::size_t idx = (t - 1) % cycle_len;
            e.emplace_back(u, static_cast<Vertex>(idx));
        }
    }
}

inline void add_cycle(EdgeList& e, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) e.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % len));
}

}  // namespace detail

/// A_{3k}: C_{2k} plus u_i adjacent to v_{2i-1}, v_{2i}, v_{2i+1} (v_{2k+1} = v_1).
inline Graph family_A(std::size_t k) {
    detail::require(k >= 2, "family_A needs k >= 2");
    detail::EdgeList e;
    detail::add_cycle(e, 2 * k);
    detail::attach_triples(e, k, 2 * k);
    return detail::make(3 * k, e);
}

/// B_{3k+1}: C_{2k+1} plus the same triples and the chord v_{2k+1}v_2.
inline Graph family_B(std::size_t k) {
    detail::require(k >= 2, "family_B needs k >= 2");
    detail::EdgeList e;
    detail::add_cycle(e, 2 * k + 1);
    detail::attach_triples(e, k, 2 * k + 1);
    e.emplace_back(static_cast<Vertex>(2 * k), 1);
    return detail::make(3 * k + 1, e);
}

/// D^1_{3k+2} (variant 1) and D^2_{3k+2} (variant 2), both on C_{2k+2}.
inline Graph family_D(std::size_t k, int variant) {
    detail::require(k >= 2, "family_D needs k >= 2");
    detail::require(variant == 1 || variant == 2, "family_D variant must be 1 or 2");
    detail::EdgeList e;
    const std::size_t m = 2 * k + 2;
    detail::add_cycle(e, m);
    detail::attach_triples(e, k, m);
    const auto v = [](std::size_t idx) { return static_cast<Vertex>(idx - 1); };
    if (variant == 1) {
        e.emplace_back(v(2 * k + 1), v(1));
    } else {
        e.emplace_back(v(2 * k + 2), v(2 * k));
    }
    e.emplace_back(v(2 * k + 2), v(2));
    return detail::make(3 * k + 2, e);
}

/// Ring w_1..w_t with every ring edge replaced by a fan F_{2k-3} whose path
/// runs from w_i to w_{i+1}.
inline Graph fan_chain(std::size_t k, std::size_t t) {
    detail::require(k >= 4, "fan_chain needs k >= 4");
    detail::require(t >= 3, "fan_chain needs t >= 3");
    const std::size_t per = 2 * k - 4;  // vertices owned by one gadget
    const std::size_t n = t * per;
    detail::EdgeList e;
    for (std::size_t i = 0; i < t; ++i) {
        const std::size_t base = i * per;
        // path v_1..v_{2k-4}: v_1 = ring vertex, v_2..v_{2k-5} internal, v_{2k-4} = next ring vertex
        std::vector<Vertex> path;
        path.push_back(static_cast<Vertex>(base));
        for (std::size_t p = 1; p + 1 < per; ++p) path.push_back(static_cast<Vertex>(base + p));
        path.push_back(static_cast<Vertex>(((i + 1) % t) * per));
        const auto center = static_cast<Vertex>(base + per - 1);
        for (std::size_t p = 0; p + 1 < path.size(); ++p) e.emplace_back(path[p], path[p + 1]);
        for (Vertex x : path) e.emplace_back(x, center);
    }
    return detail::make(n, e);
}

// ---------------------------------------------------------------------------
// The skeleton G_1 and the full upper-bound construction G.

enum class EdgeClass : std::uint8_t { E1, E2, E3, E4 };

inline const char* to_string(EdgeClass c) {
    switch (c) {
    case EdgeClass::E1: return "E1";
    case EdgeClass::E2: return "E2";
    case EdgeClass::E3: return "E3";
    case EdgeClass::E4: return "E4";
    }
    return "?";
}

/// Which of the four edges a chord contributes to G. With the chord oriented
/// a -> b these are v_a^1 v_b^1, v_a^{50s} v_b^1, v_a^{50s} v_b^{50s} and
/// v_a^{50s+1} v_b^{50s}.
enum class E4Role : std::uint8_t { HeadHead, CenterHead, CenterCenter, BCenterCenter };

inline const char* to_string(E4Role r) {
    switch (r) {
    case E4Role::HeadHead: return "head-head";
    case E4Role::CenterHead: return "center-head";
    case E4Role::CenterCenter: return "center-center";
    case E4Role::BCenterCenter: return "bcenter-center";
    }
    return "?";
}

/// A chord of the skeleton between base indices `from` and `to` (1-based),
/// oriented so that `from` comes first clockwise. exponent is the i of the
/// span s^i it was generated with.
struct Chord {
    std::uint64_t from = 0;
    std::uint64_t to = 0;
    std::uint32_t exponent = 0;
    friend bool operator==(const Chord&, const Chord&) = default;
};

struct ConstructionParams {
    std::string family;
    std::uint64_t s = 0;
    std::uint64_t ell = 0;
};

struct BlockCoord {
    std::uint64_t i = 0;  // base index, 1..s^ell
    std::uint64_t j = 0;  // position inside the block, 1..100s-1 (100s is the next block's 1)
    friend bool operator==(const BlockCoord&, const BlockCoord&) = default;
};

struct E4Info {
    std::size_t chord = 0;  // index into LabeledConstruction::chords
    E4Role role = E4Role::HeadHead;
};

class LabeledConstruction {
public:
    enum class Kind { Skeleton, Full };

    Graph graph;
    ConstructionParams params;
    Kind kind = Kind::Skeleton;
    std::uint64_t base_count = 0;  // s^ell, the length of the base cycle C
    std::vector<Chord> chords;     // one per distinct E2 edge, sorted by (from, to)
    std::size_t duplicate_chords = 0;
    std::size_t recorded_e1 = 0;   // |E1| of the skeleton
    std::size_t recorded_e2 = 0;   // |E2| of the skeleton (after collapsing duplicates)

    std::uint64_t s() const { return params.s; }
    std::uint64_t ell() const { return params.ell; }
    /// 100s: vertices per block counting both attachment points.
    std::uint64_t block_span() const { return kind == Kind::Full ? 100 * params.s : 1; }
    /// 50s - 1: length of each fan path inside H(s).
    std::uint64_t fan_path() const { return 50 * params.s - 1; }

    std::uint64_t wrap(std::int64_t i) const {
        const auto n = static_cast<std::int64_t>(base_count);
        std::int64_t r = ((i - 1) % n + n) % n;
        return static_cast<std::uint64_t>(r + 1);
    }

    /// v_i^j. Any integer i is reduced onto 1..s^ell; j = 100s names v_{i+1}^1.
    Vertex vertex(std::int64_t i, std::uint64_t j) const {
        if (kind == Kind::Skeleton) return static_cast<Vertex>(wrap(i) - 1);
        const std::uint64_t span = block_span();
        if (j == span) return vertex(i + 1, 1);
        return static_cast<Vertex>((wrap(i) - 1) * (span - 1) + (j - 1));
    }

    /// Base vertex v_i (the head of block i).
    Vertex head(std::int64_t i) const { return vertex(i, 1); }

    BlockCoord coord(Vertex v) const {
        if (kind == Kind::Skeleton) return {std::uint64_t(v) + 1, 1};
        const std::uint64_t per = block_span() - 1;
        return {v / per + 1, v % per + 1};
    }

    /// (tau_i^1, tau_i^2): multiples of s with tau1 < i < tau2 and tau2 - tau1 = 2s.
    /// Raw integers; reduce with wrap() before indexing.
    std::pair<std::int64_t, std::int64_t> tau(std::uint64_t i) const {
        const auto s_ = static_cast<std::int64_t>(params.s);
        const std::int64_t t1 = s_ * ((static_cast<std::int64_t>(i) - 1) / s_);
        return {t1, t1 + 2 * s_};
    }

    const std::vector<EdgeRef>& edge_list() const { return edges_; }

    EdgeClass edge_class(const EdgeRef& e) const {
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
        if (it == edges_.end() || *it != e) {
            throw GraphError(GraphErrc::MissingEdge, "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
        }
        return classes_[static_cast<std::size_t>(it - edges_.begin())];
    }

    std::optional<E4Info> e4_info(const EdgeRef& e) const {
        auto it = std::lower_bound(e4_.begin(), e4_.end(), e,
                                   [](const auto& entry, const EdgeRef& key) { return entry.first < key; });
        if (it == e4_.end() || it->first != e) return std::nullopt;
        return it->second;
    }

    /// Recount of the edges carrying a class in the stored graph.
    std::size_t count(EdgeClass c) const {
        return static_cast<std::size_t>(std::count(classes_.begin(), classes_.end(), c));
    }

    /// Builds the edge list, class table and E4 table from raw parts.
    void assign_edges(std::size_t n, std::vector<std::pair<EdgeRef, EdgeClass>> classed,
                      std::vector<std::pair<EdgeRef, E4Info>> e4) {
        std::sort(classed.begin(), classed.end());
        std::vector<std::pair<Vertex, Vertex>> pairs;
        pairs.reserve(classed.size());
        edges_.clear();
        classes_.clear();
        for (const auto& [e, c] : classed) {
            pairs.emplace_back(e.u, e.v);
            edges_.push_back(e);
            classes_.push_back(c);
        }
        graph = Graph::from_edges(n, std::span<const std::pair<Vertex, Vertex>>(pairs));
        std::sort(e4.begin(), e4.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        e4_ = std::move(e4);
    }

private:
    std::vector<EdgeRef> edges_;
    std::vector<EdgeClass> classes_;
    std::vector<std::pair<EdgeRef, E4Info>> e4_;
};

namespace detail {

/// Chords of the skeleton with duplicates collapsed. Returns (chords, duplicates).
inline std::pair<std::vector<Chord>, std::size_t> skeleton_chords(std::uint64_t s, std::uint64_t ell, std::uint64_t n) {
    std::vector<Chord> out;
    std::size_t raw = 0;
    auto wrap = [n](std::uint64_t x) { return (x - 1) % n + 1; };
    std::uint64_t span = 1;
    for (std::uint64_t i = 1; i + 1 <= ell; ++i) {
        span *= s;
        for (std::uint64_t j = 1; j * s <= n / s * s && j <= n / s; ++j) {
            ++raw;
            std::uint64_t a = wrap(j * s);
            std::uint64_t b = wrap(j * s + span);
            // arc length going forward from a to b is `span`; the other way n - span
            Chord c;
            c.exponent = static_cast<std::uint32_t>(i);
            if (2 * span < n) {
                c.from = a;
                c.to = b;
            } else if (2 * span > n) {
                c.from = b;
                c.to = a;
            } else {
                c.from = std::min(a, b);
                c.to = std::max(a, b);
            }
            out.push_back(c);
        }
    }
    auto key = [](const Chord& c) { return std::pair{std::min(c.from, c.to), std::max(c.from, c.to)}; };
    std::sort(out.begin(), out.end(), [&](const Chord& x, const Chord& y) {
        return key(x) != key(y) ? key(x) < key(y) : x.exponent < y.exponent;
    });
    out.erase(std::unique(out.begin(), out.end(), [&](const Chord& x, const Chord& y) { return key(x) == key(y); }),
              out.end());
    std::sort(out.begin(), out.end(), [](const Chord& x, const Chord& y) {
        return std::pair{x.from, x.to} < std::pair{y.from, y.to};
    });
    return {out, raw - out.size()};
}

inline std::uint64_t base_cycle_length(std::uint64_t s, std::uint64_t ell, std::uint64_t limit) {
    if (s < 2) throw ConstructionError(ConstructionErrc::ParamTooSmall, "s must be >= 2");
    if (ell < 1) throw ConstructionError(ConstructionErrc::ParamTooSmall, "ell must be >= 1");
    auto n = checked_pow(s, ell, limit);
    if (!n) throw ConstructionError(ConstructionErrc::TooLarge, "s^ell exceeds " + std::to_string(limit));
    if (*n < 3) {
        throw ConstructionError(ConstructionErrc::DegenerateCycle,
                                "s^ell = " + std::to_string(*n) + " does not give a simple cycle");
    }
    return *n;
}

}  // namespace detail

/// G_1: the cycle v_1..v_{s^ell} (class E1) with chords v_{js} v_{js+s^i} (class E2).
inline LabeledConstruction base_cycle(std::uint64_t s, std::uint64_t ell) {
    const std::uint64_t n = detail::base_cycle_length(s, ell, 10'000'000);
    LabeledConstruction lc;
    lc.params = {"G1", s, ell};
    lc.kind = LabeledConstruction::Kind::Skeleton;
    lc.base_count = n;
    auto [chords, dups] = detail::skeleton_chords(s, ell, n);
    lc.chords = std::move(chords);
    lc.duplicate_chords = dups;
    std::vector<std::pair<EdgeRef, EdgeClass>> classed;
    for (std::uint64_t i = 1; i <= n; ++i) classed.emplace_back(EdgeRef(lc.head(i), lc.head(i + 1)), EdgeClass::E1);
    for (const auto& c : lc.chords) classed.emplace_back(EdgeRef(lc.head(c.from), lc.head(c.to)), EdgeClass::E2);
    lc.recorded_e1 = n;
    lc.recorded_e2 = lc.chords.size();
    lc.assign_edges(n, std::move(classed), {});
    return lc;
}

/// Edges of the gadget H(s) on positions 1..100s, as (j1, j2) pairs.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> gadget_edges(std::uint64_t s) {
    const std::uint64_t L = 50 * s - 1;
    const std::uint64_t w = 50 * s, u = 50 * s + 1;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> e;
    for (std::uint64_t t = 1; t < L; ++t) e.emplace_back(t, t + 1);
    for (std::uint64_t t = 1; t <= L; ++t) e.emplace_back(t, w);
    for (std::uint64_t t = 1; t < L; ++t) e.emplace_back(u + t, u + t + 1);
    for (std::uint64_t t = 1; t <= L; ++t) e.emplace_back(u, u + t);
    e.emplace_back(w, u + 1);  // w u_1
    e.emplace_back(u, L);      // u w_{50s-1}
    e.emplace_back(u, w);
    return e;
}

/// H(s) on its own; vertex j-1 is v^j.
inline Graph gadget_H(std::uint64_t s) {
    detail::require(s >= 1, "gadget needs s >= 1");
    detail::EdgeList e;
    for (auto [a, b] : gadget_edges(s)) e.emplace_back(static_cast<Vertex>(a - 1), static_cast<Vertex>(b - 1));
    return detail::make(100 * s, e);
}

/// The edge-pancyclic construction G: each E1 edge of G_1 replaced by H(s),
/// each chord replaced by four edges between the blocks it joins.
inline LabeledConstruction upper_construction(std::uint64_t s, std::uint64_t ell) {
    const std::uint64_t n_base = detail::base_cycle_length(s, ell, 10'000'000);
    if ((100 * s - 1) > 10'000'000 / n_base) {
        throw ConstructionError(ConstructionErrc::TooLarge, "v(G) would exceed 10^7");
    }
    LabeledConstruction lc;
    lc.params = {"G", s, ell};
    lc.kind = LabeledConstruction::Kind::Full;
    lc.base_count = n_base;
    auto [chords, dups] = detail::skeleton_chords(s, ell, n_base);
    lc.chords = std::move(chords);
    lc.duplicate_chords = dups;
    lc.recorded_e1 = n_base;
    lc.recorded_e2 = lc.chords.size();

    const std::uint64_t n = (100 * s - 1) * n_base;
    const auto gadget = gadget_edges(s);
    std::vector<std::pair<EdgeRef, EdgeClass>> classed;
    classed.reserve(n_base * gadget.size() + 4 * lc.chords.size());
    for (std::uint64_t i = 1; i <= n_base; ++i) {
        for (auto [a, b] : gadget) {
            classed.emplace_back(EdgeRef(lc.vertex(i, a), lc.vertex(i, b)), EdgeClass::E3);
        }
    }
    std::vector<std::pair<EdgeRef, E4Info>> e4;
    const std::uint64_t w = 50 * s, u = 50 * s + 1;
    for (std::size_t c = 0; c < lc.chords.size(); ++c) {
        const auto a = static_cast<std::int64_t>(lc.chords[c].from);
        const auto b = static_cast<std::int64_t>(lc.chords[c].to);
        const std::pair<EdgeRef, E4Role> four[] = {
            {EdgeRef(lc.vertex(a, 1), lc.vertex(b, 1)), E4Role::HeadHead},
            {EdgeRef(lc.vertex(a, w), lc.vertex(b, 1)), E4Role::CenterHead},
            {EdgeRef(lc.vertex(a, w), lc.vertex(b, w)), E4Role::CenterCenter},
            {EdgeRef(lc.vertex(a, u), lc.vertex(b, w)), E4Role::BCenterCenter},
        };
        for (const auto& [edge, role] : four) {
            classed.emplace_back(edge, EdgeClass::E4);
            e4.emplace_back(edge, E4Info{c, role});
        }
    }
    lc.assign_edges(n, std::move(classed), std::move(e4));
    return lc;
}

/// The two candidate bindings of ell to s: floor(s / ln s) and ceil(s / ln s),
/// computed in double precision (the bounds module certifies them exactly).
inline std::pair<std::uint64_t, std::uint64_t> ell_candidates(std::uint64_t s) {
    const double r = static_cast<double>(s) / std::log(static_cast<double>(s));
    return {static_cast<std::uint64_t>(std::floor(r)), static_cast<std::uint64_t>(std::ceil(r))};
}

}  // namespace pancyclic
