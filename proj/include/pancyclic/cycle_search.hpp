#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "pancyclic/graph.hpp"
#include "pancyclic/parallel.hpp"

namespace pancyclic {

enum class CycleErrc { LengthOutOfRange, MissingEdge };

inline const char* to_string(CycleErrc e) {
    return e == CycleErrc::LengthOutOfRange ? "LengthOutOfRange" : "MissingEdge";
}

class CycleError : public std::runtime_error {
public:
    CycleError(CycleErrc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    CycleErrc code() const noexcept { return code_; }

private:
    CycleErrc code_;
};

/// Closed walk v0 v1 ... v_{k-1} v0.
struct CycleWitness {
    std::vector<Vertex> vertices;
    std::size_t length() const { return vertices.size(); }
    friend bool operator==(const CycleWitness&, const CycleWitness&) = default;
};

enum class WitnessDefect { None, TooShort, WrongLength, Repeated, NotAdjacent, MissingEdge, OutOfRange };

inline const char* to_string(WitnessDefect d) {
    switch (d) {
    case WitnessDefect::None: return "ok";
    case WitnessDefect::TooShort: return "length below 3";
    case WitnessDefect::WrongLength: return "wrong length";
    case WitnessDefect::Repeated: return "repeated vertex";
    case WitnessDefect::NotAdjacent: return "consecutive pair not adjacent";
    case WitnessDefect::MissingEdge: return "required edge not on cycle";
    case WitnessDefect::OutOfRange: return "vertex index out of range";
    }
    return "?";
}

/// Checks that w is a simple cycle of g; `k` and `e` are checked when given.
inline WitnessDefect check_cycle(const Graph& g, const CycleWitness& w, std::optional<std::size_t> k = std::nullopt,
                                 std::optional<EdgeRef> e = std::nullopt) {
    const auto& vs = w.vertices;
    if (vs.size() < 3) return WitnessDefect::TooShort;
    if (k && vs.size() != *k) return WitnessDefect::WrongLength;
    const std::size_t n = g.vertex_count();
    std::vector<bool> seen(n, false);
    for (Vertex v : vs) {
        if (v >= n) return WitnessDefect::OutOfRange;
        if (seen[v]) return WitnessDefect::Repeated;
        seen[v] = true;
    }
    bool has_e = !e.has_value();
    for (std::size_t i = 0; i < vs.size(); ++i) {
        Vertex a = vs[i], b = vs[(i + 1) % vs.size()];
        if (!g.has_edge(a, b)) return WitnessDefect::NotAdjacent;
        if (e && EdgeRef(a, b) == *e) has_e = true;
    }
    return has_e ? WitnessDefect::None : WitnessDefect::MissingEdge;
}

enum class SearchStatus { Found, Absent, Timeout };

inline const char* to_string(SearchStatus s) {
    switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::Absent: return "absent";
    case SearchStatus::Timeout: return "timeout";
    }
    return "?";
}

enum class NeighborOrder { Ascending, DegreeAscending };

struct SearchOptions {
    NeighborOrder order = NeighborOrder::Ascending;
    std::chrono::milliseconds budget{0};  // 0 = unlimited
    bool force_general = false;           // skip the 64-bit kernel (for cross-testing)
};

struct SearchResult {
    SearchStatus status = SearchStatus::Absent;
    std::optional<CycleWitness> witness;
    std::uint64_t nodes = 0;
};

namespace detail {

class Deadline {
public:
    explicit Deadline(std::chrono::milliseconds budget)
        : active_(budget.count() > 0), end_(std::chrono::steady_clock::now() + budget) {}
    /// Cheap poll: only reads the clock every 256 calls.
    bool expired() {
        if (!active_) return false;
        if ((++ticks_ & 255U) != 0) return hit_;
        hit_ = std::chrono::steady_clock::now() >= end_;
        return hit_;
    }

private:
    bool active_;
    std::chrono::steady_clock::time_point end_;
    std::uint32_t ticks_ = 0;
    bool hit_ = false;
};

inline std::vector<std::vector<Vertex>> ordered_neighbors(const Graph& g, NeighborOrder order) {
    std::vector<std::vector<Vertex>> out(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        auto nb = g.neighbors(v);
        out[v].assign(nb.begin(), nb.end());
        if (order == NeighborOrder::DegreeAscending) {
            std::stable_sort(out[v].begin(), out[v].end(),
                             [&](Vertex a, Vertex b) { return g.degree(a) < g.degree(b); });
        }
    }
    return out;
}

// Both kernels search for a path a = p_0, p_1, ..., p_r = b with r = k - 1
// edges avoiding the edge ab itself, extending from a. At each node the
// residual graph (unused vertices reachable from the frontier) is examined
// by one BFS and the branch is cut when
//   - b is unreachable or farther than the remaining budget,
//   - fewer unused vertices are reachable than the budget still needs,
//   - the residual is bipartite and the budget has the wrong parity,
//   - the budget must consume every reachable vertex but some vertex has
//     fewer than two usable neighbors (b: fewer than one).
// All cuts are sound, so Absent is exact.

/// Kernel for n <= 64 with one machine word per vertex set.
class MaskKernel {
public:
    MaskKernel(const Graph& g, NeighborOrder order) : n_(g.vertex_count()), order_(ordered_neighbors(g, order)) {
        adj_.assign(n_, 0);
        for (Vertex v = 0; v < n_; ++v)
            for (Vertex w : g.neighbors(v)) adj_[v] |= std::uint64_t{1} << w;
    }

    SearchResult run(Vertex a, Vertex b, std::size_t k, Deadline& deadline) {
        a_ = a;
        b_ = b;
        path_.assign(1, a);
        nodes_ = 0;
        timed_out_ = false;
        SearchResult res;
        bool found = extend(a, std::uint64_t{1} << a, k - 1, deadline);
        res.nodes = nodes_;
        if (found) {
            res.status = SearchStatus::Found;
            res.witness = CycleWitness{path_};
            res.witness->vertices.push_back(b);
        } else {
            res.status = timed_out_ ? SearchStatus::Timeout : SearchStatus::Absent;
        }
        return res;
    }

private:
    bool viable(Vertex x, std::uint64_t used, std::size_t r) const {
        const std::uint64_t free = ~used;
        const std::uint64_t bbit = std::uint64_t{1} << b_;
        std::uint64_t seen = std::uint64_t{1} << x;
        std::uint64_t frontier = seen;
        std::size_t dist = 0, dist_b = 0, reach = 0;
        bool bipartite = true;
        while (frontier) {
            std::uint64_t next = 0;
            for (std::uint64_t f = frontier; f; f &= f - 1) {
                int v = std::countr_zero(f);
                if (bipartite && (adj_[v] & frontier)) bipartite = false;
                next |= adj_[v];
            }
            next &= free & ~seen;
            if (!next) break;
            ++dist;
            if ((next & bbit) && dist_b == 0) dist_b = dist;
            reach += static_cast<std::size_t>(std::popcount(next));
            seen |= next;
            frontier = next;
        }
        if (dist_b == 0 || dist_b > r || reach < r) return false;
        if (bipartite && ((r - dist_b) & 1U)) return false;
        if (reach == r) {
            const std::uint64_t pool = seen;  // reachable residual plus x
            for (std::uint64_t f = seen & ~(std::uint64_t{1} << x); f; f &= f - 1) {
                int v = std::countr_zero(f);
                int need = (static_cast<Vertex>(v) == b_) ? 1 : 2;
                if (std::popcount(adj_[v] & pool) < need) return false;
            }
        }
        return true;
    }

    bool extend(Vertex x, std::uint64_t used, std::size_t r, Deadline& deadline) {
        ++nodes_;
        if (deadline.expired()) {
            timed_out_ = true;
            return false;
        }
        if (r == 1) return x != a_ && ((adj_[x] >> b_) & 1U);
        if (!viable(x, used, r)) return false;
        for (Vertex y : order_[x]) {
            if (y == b_ || ((used >> y) & 1U)) continue;
            path_.push_back(y);
            if (extend(y, used | (std::uint64_t{1} << y), r - 1, deadline)) return true;
            path_.pop_back();
            if (timed_out_) return false;
        }
        return false;
    }

    std::size_t n_;
    std::vector<std::vector<Vertex>> order_;
    std::vector<std::uint64_t> adj_;
    Vertex a_ = 0, b_ = 0;
    std::vector<Vertex> path_;
    std::uint64_t nodes_ = 0;
    bool timed_out_ = false;
};

/// Kernel for any n: adjacency lists, stamped BFS.
class GeneralKernel {
public:
    GeneralKernel(const Graph& g, NeighborOrder order)
        : g_(g), n_(g.vertex_count()), order_(ordered_neighbors(g, order)) {
        used_.assign(n_, 0);
        stamp_.assign(n_, 0);
        layer_.assign(n_, 0);
        queue_.reserve(n_);
    }

    SearchResult run(Vertex a, Vertex b, std::size_t k, Deadline& deadline) {
        a_ = a;
        b_ = b;
        std::fill(used_.begin(), used_.end(), 0);
        used_[a] = 1;
        path_.assign(1, a);
        nodes_ = 0;
        timed_out_ = false;
        SearchResult res;
        bool found = extend(a, k - 1, deadline);
        res.nodes = nodes_;
        if (found) {
            res.status = SearchStatus::Found;
            res.witness = CycleWitness{path_};
            res.witness->vertices.push_back(b);
        } else {
            res.status = timed_out_ ? SearchStatus::Timeout : SearchStatus::Absent;
        }
        return res;
    }

private:
    bool viable(Vertex x, std::size_t r) {
        ++epoch_;
        if (epoch_ == 0) {
            std::fill(stamp_.begin(), stamp_.end(), 0);
            epoch_ = 1;
        }
        queue_.clear();
        queue_.push_back(x);
        stamp_[x] = epoch_;
        layer_[x] = 0;
        std::size_t dist_b = 0, reach = 0;
        bool bipartite = true;
        for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
            Vertex v = queue_[qi];
            for (Vertex w : g_.neighbors(v)) {
                if (used_[w] && w != x) continue;
                if (stamp_[w] == epoch_) {
                    if (bipartite && layer_[w] == layer_[v]) bipartite = false;
                    continue;
                }
                stamp_[w] = epoch_;
                layer_[w] = layer_[v] + 1;
                ++reach;
                if (w == b_) dist_b = layer_[w];
                queue_.push_back(w);
            }
        }
        if (dist_b == 0 || dist_b > r || reach < r) return false;
        if (bipartite && ((r - dist_b) & 1U)) return false;
        if (reach == r) {
            for (std::size_t qi = 1; qi < queue_.size(); ++qi) {
                Vertex v = queue_[qi];
                int need = v == b_ ? 1 : 2, have = 0;
                for (Vertex w : g_.neighbors(v)) {
                    if (stamp_[w] == epoch_ && ++have >= need) break;
                }
                if (have < need) return false;
            }
        }
        return true;
    }

    bool extend(Vertex x, std::size_t r, Deadline& deadline) {
        ++nodes_;
        if (deadline.expired()) {
            timed_out_ = true;
            return false;
        }
        if (r == 1) return x != a_ && g_.has_edge(x, b_);
        if (!viable(x, r)) return false;
        for (Vertex y : order_[x]) {
            if (y == b_ || used_[y]) continue;
            used_[y] = 1;
            path_.push_back(y);
            if (extend(y, r - 1, deadline)) return true;
            path_.pop_back();
            used_[y] = 0;
            if (timed_out_) return false;
        }
        return false;
    }

    const Graph& g_;
    std::size_t n_;
    std::vector<std::vector<Vertex>> order_;
    std::vector<std::uint8_t> used_;
    std::vector<std::uint32_t> stamp_;
    std::vector<std::uint32_t> layer_;
    std::vector<Vertex> queue_;
    std::uint32_t epoch_ = 0;
    Vertex a_ = 0, b_ = 0;
    std::vector<Vertex> path_;
    std::uint64_t nodes_ = 0;
    bool timed_out_ = false;
};

}  // namespace detail

/// Reusable searcher bound to one graph; cheaper than the free functions
/// when many (edge, length) pairs are queried. Not thread-safe: use one per
/// worker.
class CycleSearcher {
public:
    explicit CycleSearcher(const Graph& g, SearchOptions opts = {}) : g_(g), opts_(opts) {
        if (g.vertex_count() <= 64 && !opts.force_general) {
            mask_.emplace(g, opts.order);
        } else {
            general_.emplace(g, opts.order);
        }
    }

    const Graph& graph() const { return g_; }

    SearchResult through_edge(const EdgeRef& e, std::size_t k) {
        validate(e, k);
        detail::Deadline deadline(opts_.budget);
        return mask_ ? mask_->run(e.u, e.v, k, deadline) : general_->run(e.u, e.v, k, deadline);
    }

    /// Cycle of length k through vertex v: tries the edges at v in ascending order.
    SearchResult through_vertex(Vertex v, std::size_t k) {
        if (v >= g_.vertex_count()) throw GraphError(GraphErrc::IndexOutOfRange, "vertex " + std::to_string(v));
        SearchResult total;
        bool timed_out = false;
        for (Vertex w : g_.neighbors(v)) {
            auto r = through_edge(EdgeRef(v, w), k);
            total.nodes += r.nodes;
            if (r.status == SearchStatus::Found) {
                total.status = SearchStatus::Found;
                total.witness = std::move(r.witness);
                return total;
            }
            if (r.status == SearchStatus::Timeout) timed_out = true;
        }
        total.status = timed_out ? SearchStatus::Timeout : SearchStatus::Absent;
        return total;
    }

private:
    void validate(const EdgeRef& e, std::size_t k) const {
        if (e.u == e.v || e.v >= g_.vertex_count() || !g_.has_edge(e)) {
            throw CycleError(CycleErrc::MissingEdge, "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
        }
        if (k < 3 || k > g_.vertex_count()) {
            throw CycleError(CycleErrc::LengthOutOfRange,
                             "k=" + std::to_string(k) + " outside [3," + std::to_string(g_.vertex_count()) + "]");
        }
    }

    const Graph& g_;
    SearchOptions opts_;
    std::optional<detail::MaskKernel> mask_;
    std::optional<detail::GeneralKernel> general_;
};

inline SearchResult search_cycle_through_edge(const Graph& g, const EdgeRef& e, std::size_t k,
                                              const SearchOptions& opts = {}) {
    CycleSearcher s(g, opts);
    return s.through_edge(e, k);
}

/// Exact decision without a time budget.
inline std::optional<CycleWitness> cycle_through_edge(const Graph& g, const EdgeRef& e, std::size_t k) {
    auto r = search_cycle_through_edge(g, e, k);
    return r.witness;
}

inline std::optional<CycleWitness> hamilton_through_edge(const Graph& g, const EdgeRef& e) {
    if (g.vertex_count() < 3) {
        if (!g.has_edge(e)) throw CycleError(CycleErrc::MissingEdge, "edge not in graph");
        return std::nullopt;
    }
    return cycle_through_edge(g, e, g.vertex_count());
}

/// Set of lengths k in [3, n] such that e lies on a k-cycle.
inline std::vector<std::size_t> edge_spectrum(const Graph& g, const EdgeRef& e) {
    if (e.u == e.v || e.v >= g.vertex_count() || !g.has_edge(e)) {
        throw CycleError(CycleErrc::MissingEdge, "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    }
    std::vector<std::size_t> out;
    CycleSearcher s(g);
    for (std::size_t k = 3; k <= g.vertex_count(); ++k) {
        if (s.through_edge(e, k).status == SearchStatus::Found) out.push_back(k);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Property verdicts

enum class PropertyKind { EdgePancyclic, VertexPancyclic, KEdgeProper };

struct Property {
    PropertyKind kind = PropertyKind::EdgePancyclic;
    std::size_t k = 0;  // only for KEdgeProper

    static Property edge_pancyclic() { return {PropertyKind::EdgePancyclic, 0}; }
    static Property vertex_pancyclic() { return {PropertyKind::VertexPancyclic, 0}; }
    static Property k_edge_proper(std::size_t k) { return {PropertyKind::KEdgeProper, k}; }

    std::string name() const {
        switch (kind) {
        case PropertyKind::EdgePancyclic: return "edge-pancyclic";
        case PropertyKind::VertexPancyclic: return "vertex-pancyclic";
        case PropertyKind::KEdgeProper: return std::to_string(k) + "-edge-proper";
        }
        return "?";
    }

    /// Lengths a single edge or vertex must lie on, in check order.
    std::vector<std::size_t> lengths(std::size_t n) const {
        std::vector<std::size_t> out;
        std::size_t top = kind == PropertyKind::KEdgeProper ? std::min(k, n) : n;
        for (std::size_t i = 3; i <= top; ++i) out.push_back(i);
        if (kind == PropertyKind::KEdgeProper && k < n) out.push_back(n);
        return out;
    }
};

enum class Verdict { Pass, Fail, Timeout };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Timeout: return "timeout";
    }
    return "?";
}

struct PropertyFailure {
    std::optional<EdgeRef> edge;
    std::optional<Vertex> vertex;
    std::size_t length = 0;
};

struct PropertyReport {
    Property property;
    Verdict verdict = Verdict::Pass;
    std::optional<PropertyFailure> first_failure;  // first (item, length) in check order that is absent or timed out
    std::map<std::pair<EdgeRef, std::size_t>, CycleWitness> edge_witnesses;
    std::map<std::pair<Vertex, std::size_t>, CycleWitness> vertex_witnesses;
    std::uint64_t nodes = 0;
    std::size_t tasks = 0;
};

struct CheckOptions {
    bool witnesses = false;
    unsigned jobs = 1;
    SearchOptions search;
};

/// Evaluates a property over all (edge or vertex, length) tasks. The
/// reported failure is the first failing task in (item, length) order no
/// matter how many workers run, so verdicts are schedule-independent.
inline PropertyReport check_property(const Graph& g, const Property& prop, const CheckOptions& opts = {}) {
    const std::size_t n = g.vertex_count();
    if (prop.kind == PropertyKind::KEdgeProper && (prop.k < 3 || prop.k > std::max<std::size_t>(n, 3))) {
        throw CycleError(CycleErrc::LengthOutOfRange, "k=" + std::to_string(prop.k));
    }
    PropertyReport rep;
    rep.property = prop;
    const bool by_vertex = prop.kind == PropertyKind::VertexPancyclic;
    if (n < 3 || (!by_vertex && g.edge_count() == 0)) {
        rep.verdict = Verdict::Fail;
        PropertyFailure f;
        f.length = 3;
        if (by_vertex && n > 0) f.vertex = 0;
        if (!by_vertex && g.edge_count() > 0) f.edge = g.edges().front();
        rep.first_failure = f;
        return rep;
    }
    const auto edges = g.edges();
    const auto lengths = prop.lengths(n);
    const std::size_t items = by_vertex ? n : edges.size();
    const std::size_t total = items * lengths.size();
    rep.tasks = total;

    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::atomic<std::size_t> first_bad{kNone};
    std::vector<SearchStatus> status(total, SearchStatus::Found);
    std::vector<std::optional<CycleWitness>> found(opts.witnesses ? total : 0);
    std::atomic<std::uint64_t> nodes{0};

    const unsigned jobs = resolve_jobs(opts.jobs);

    auto run_item = [&](std::size_t item, CycleSearcher& s) {
        for (std::size_t li = 0; li < lengths.size(); ++li) {
            const std::size_t task = item * lengths.size() + li;
            if (task > first_bad.load(std::memory_order_relaxed)) return;
            SearchResult r = by_vertex ? s.through_vertex(static_cast<Vertex>(item), lengths[li])
                                       : s.through_edge(edges[item], lengths[li]);
            nodes.fetch_add(r.nodes, std::memory_order_relaxed);
            status[task] = r.status;
            if (r.status != SearchStatus::Found) {
                std::size_t cur = first_bad.load();
                while (task < cur && !first_bad.compare_exchange_weak(cur, task)) {
                }
                return;
            }
            if (opts.witnesses) found[task] = std::move(r.witness);
        }
    };

    if (jobs == 1) {
        CycleSearcher s(g, opts.search);
        for (std::size_t item = 0; item < items; ++item) {
            if (item * lengths.size() > first_bad.load()) break;
            run_item(item, s);
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            CycleSearcher s(g, opts.search);
            while (true) {
                std::size_t item = next.fetch_add(1);
                if (item >= items || item * lengths.size() > first_bad.load()) break;
                run_item(item, s);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
    }
    rep.nodes = nodes.load();

    const std::size_t bad = first_bad.load();
    if (bad != kNone) {
        rep.verdict = status[bad] == SearchStatus::Timeout ? Verdict::Timeout : Verdict::Fail;
        PropertyFailure f;
        f.length = lengths[bad % lengths.size()];
        if (by_vertex) {
            f.vertex = static_cast<Vertex>(bad / lengths.size());
        } else {
            f.edge = edges[bad / lengths.size()];
        }
        rep.first_failure = f;
        return rep;
    }
    rep.verdict = Verdict::Pass;
    if (opts.witnesses) {
        for (std::size_t task = 0; task < total; ++task) {
            if (!found[task]) continue;
            const std::size_t item = task / lengths.size(), len = lengths[task % lengths.size()];
            if (by_vertex) {
                rep.vertex_witnesses.emplace(std::pair{static_cast<Vertex>(item), len}, std::move(*found[task]));
            } else {
                rep.edge_witnesses.emplace(std::pair{edges[item], len}, std::move(*found[task]));
            }
        }
    }
    return rep;
}

inline PropertyReport is_edge_pancyclic(const Graph& g, const CheckOptions& opts = {}) {
    return check_property(g, Property::edge_pancyclic(), opts);
}

inline PropertyReport is_vertex_pancyclic(const Graph& g, const CheckOptions& opts = {}) {
    return check_property(g, Property::vertex_pancyclic(), opts);
}

inline PropertyReport is_k_edge_proper(const Graph& g, std::size_t k, const CheckOptions& opts = {}) {
    return check_property(g, Property::k_edge_proper(k), opts);
}

}  // namespace pancyclic
