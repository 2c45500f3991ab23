#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pancyclic/constructions.hpp"
#include "pancyclic/cycle_search.hpp"
#include "pancyclic/gadget.hpp"
#include "pancyclic/parallel.hpp"

namespace pancyclic {

enum class WitnessErrc {
    LengthOutOfRange,
    EdgeNotInBlock,
    NoSuchPath,
    ParamOutOfRange,
    RecipeInapplicable,
    RangeUnsatisfiable,
    Gap,
    Counterexample,
    MissingEdge,
    WrongConstruction,
};

inline const char* to_string(WitnessErrc e) {
    switch (e) {
    case WitnessErrc::LengthOutOfRange: return "LengthOutOfRange";
    case WitnessErrc::EdgeNotInBlock: return "EdgeNotInBlock";
    case WitnessErrc::NoSuchPath: return "NoSuchPath";
    case WitnessErrc::ParamOutOfRange: return "ParamOutOfRange";
    case WitnessErrc::RecipeInapplicable: return "RecipeInapplicable";
    case WitnessErrc::RangeUnsatisfiable: return "RangeUnsatisfiable";
    case WitnessErrc::Gap: return "Gap";
    case WitnessErrc::Counterexample: return "Counterexample";
    case WitnessErrc::MissingEdge: return "MissingEdge";
    case WitnessErrc::WrongConstruction: return "WrongConstruction";
    }
    return "?";
}

class WitnessError : public std::runtime_error {
public:
    WitnessError(WitnessErrc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    WitnessErrc code() const noexcept { return code_; }

private:
    WitnessErrc code_;
};

enum class Recipe : std::uint8_t {
    BlockLocal,
    Window,
    ChordLocal,
    SkeletonLift,
    RingLift,
    ChordPair,
    ChordPairAlt,
    ArcLift,
    Fallback,
};

inline const char* to_string(Recipe r) {
    switch (r) {
    case Recipe::BlockLocal: return "block-local";
    case Recipe::Window: return "window";
    case Recipe::ChordLocal: return "chord-local";
    case Recipe::SkeletonLift: return "skeleton-lift";
    case Recipe::RingLift: return "ring-lift";
    case Recipe::ChordPair: return "chord-pair";
    case Recipe::ChordPairAlt: return "chord-pair-alt";
    case Recipe::ArcLift: return "arc-lift";
    case Recipe::Fallback: return "fallback-search";
    }
    return "?";
}

struct BlockPath {
    std::uint64_t block = 0;
    std::vector<Vertex> vertices;  // v_i^1 ... v_i^{100s}
    std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
};

struct TaggedWitness {
    CycleWitness witness;
    Recipe recipe = Recipe::Fallback;
    int p = 0;  // lifting exponent for skeleton-lift
};

struct WitnessCheck {
    bool pass = false;
    WitnessDefect defect = WitnessDefect::None;
};

inline WitnessCheck validate_witness(const Graph& g, const CycleWitness& w, const EdgeRef& e, std::size_t k) {
    auto d = check_cycle(g, w, k, e);
    return {d == WitnessDefect::None, d};
}

// ---------------------------------------------------------------------------
// Short cycles in the skeleton.

/// Cycle of G_1 through e of length in [s^p - s^{p-1}, s^p + 3] using at most
/// three chords; vertices are G_1 indices.
inline CycleWitness lemma_cycle(const LabeledConstruction& g1, const EdgeRef& e, std::uint64_t p) {
    if (g1.kind != LabeledConstruction::Kind::Skeleton) {
        throw WitnessError(WitnessErrc::WrongConstruction, "lemma_cycle needs the skeleton G1");
    }
    if (p < 1 || p + 1 > g1.ell()) {
        throw WitnessError(WitnessErrc::ParamOutOfRange,
                           "p=" + std::to_string(p) + " outside [1," + std::to_string(g1.ell() - 1) + "]");
    }
    if (e.v >= g1.graph.vertex_count() || !g1.graph.has_edge(e)) {
        throw WitnessError(WitnessErrc::MissingEdge, "edge not in G1");
    }
    const auto s = static_cast<std::int64_t>(g1.s());
    const auto N = static_cast<std::int64_t>(g1.base_count);
    auto pw = [&](std::uint64_t x) {
        std::int64_t r = 1;
        for (std::uint64_t i = 0; i < x; ++i) r *= s;
        return r;
    };
    const std::int64_t sp = pw(p);
    std::vector<std::int64_t> raw;
    if (g1.edge_class(e) == EdgeClass::E1) {
        std::int64_t x = e.u + 1, y = e.v + 1;
        if (g1.wrap(x + 1) != static_cast<std::uint64_t>(y)) std::swap(x, y);
        std::int64_t js = s * (x / s);
        for (std::int64_t t = js; t <= js + sp; ++t) raw.push_back(t);
    } else {
        const Chord* chord = nullptr;
        for (const auto& c : g1.chords) {
            if (EdgeRef(g1.head(c.from), g1.head(c.to)) == e) chord = &c;
        }
        if (!chord) throw WitnessError(WitnessErrc::MissingEdge, "chord metadata missing");
        const auto js = static_cast<std::int64_t>(chord->from);
        const std::uint64_t q = chord->exponent;
        const std::int64_t sq = pw(q);
        if (p == q) {
            for (std::int64_t t = js; t <= js + sp; ++t) raw.push_back(t);
        } else if (p > q) {
            raw.push_back(js + sp);
            raw.push_back(js);
            for (std::int64_t t = js + sq; t < js + sp; ++t) raw.push_back(t);
        } else {
            raw.push_back(js + sq);
            for (std::int64_t t = js; t <= js + sp; ++t) raw.push_back(t);
            raw.push_back(js + sp + sq);
        }
    }
    (void)N;
    CycleWitness w;
    for (auto r : raw) w.vertices.push_back(g1.head(r));
    return w;
}

/// Number of chord (E2) edges on a skeleton cycle.
inline std::size_t chord_count(const LabeledConstruction& g1, const CycleWitness& w) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < w.vertices.size(); ++i) {
        EdgeRef e(w.vertices[i], w.vertices[(i + 1) % w.vertices.size()]);
        if (g1.graph.has_edge(e) && g1.edge_class(e) == EdgeClass::E2) ++c;
    }
    return c;
}

// ---------------------------------------------------------------------------
// Cycle plans: a cyclic list of block segments and single edges.

struct Segment {
    bool is_edge = false;
    Vertex edge_from = 0, edge_to = 0;
    std::int64_t block = 0;
    SegKind kind = SegKind::Full;
    bool reversed = false;
    int req = -1;
    std::uint8_t forbid = 0;
    Vertex from = 0, to = 0;  // filled by PlanBuilder::finish
};

struct Plan {
    Recipe recipe = Recipe::Fallback;
    int p = 0;
    std::vector<Segment> segs;
};

class PlanBuilder {
public:
    PlanBuilder(const LabeledConstruction& g, const GadgetModel& m, Recipe r, int p = 0) : g_(g), m_(m) {
        plan_.recipe = r;
        plan_.p = p;
    }

    Vertex port(std::int64_t i, std::uint8_t bit) const {
        return g_.vertex(i, static_cast<std::uint64_t>(m_.port_position(static_cast<PortBit>(bit))));
    }

    PlanBuilder& edge(Vertex x, Vertex y) {
        Segment s;
        s.is_edge = true;
        s.edge_from = x;
        s.edge_to = y;
        plan_.segs.push_back(s);
        return *this;
    }

    PlanBuilder& block(std::int64_t i, SegKind k, bool reversed = false, int req = -1) {
        Segment s;
        s.block = static_cast<std::int64_t>(g_.wrap(i));
        s.kind = k;
        s.reversed = reversed;
        s.req = req;
        plan_.segs.push_back(s);
        return *this;
    }

    /// Full blocks from P_from forward to P_to (from <= to as raw integers).
    PlanBuilder& run(std::int64_t from, std::int64_t to) {
        for (std::int64_t i = from; i < to; ++i) block(i, SegKind::Full);
        return *this;
    }

    /// Full blocks traversed backwards from P_from down to P_to (from >= to).
    PlanBuilder& run_back(std::int64_t from, std::int64_t to) {
        for (std::int64_t i = from - 1; i >= to; --i) block(i, SegKind::Full, true);
        return *this;
    }

    std::vector<Segment>& segments() { return plan_.segs; }

    /// Resolves endpoints, checks the chain closes, every single edge exists,
    /// anchors are distinct, and assigns forbidden ports.
    std::optional<Plan> finish() {
        auto& segs = plan_.segs;
        if (segs.empty()) return std::nullopt;
        std::map<std::int64_t, int> per_block;
        for (auto& s : segs) {
            if (s.is_edge) {
                s.from = s.edge_from;
                s.to = s.edge_to;
                if (s.from == s.to || !g_.graph.has_edge(s.from, s.to)) return std::nullopt;
            } else {
                auto [a, b] = GadgetModel::endpoints(s.kind);
                if (s.reversed) std::swap(a, b);
                s.from = port(s.block, a);
                s.to = port(s.block, b);
                ++per_block[s.block];
            }
        }
        std::vector<Vertex> anchors;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            if (segs[i].to != segs[(i + 1) % segs.size()].from) return std::nullopt;
            anchors.push_back(segs[i].from);
        }
        std::sort(anchors.begin(), anchors.end());
        if (std::adjacent_find(anchors.begin(), anchors.end()) != anchors.end()) return std::nullopt;
        for (auto& s : segs) {
            if (s.is_edge) continue;
            const int count = per_block[s.block];
            if (count > 2) return std::nullopt;
            std::uint8_t forbid = 0;
            for (std::uint8_t bit : {kPortP, kPortW, kPortU, kPortQ}) {
                Vertex v = port(s.block, bit);
                if (v == s.from || v == s.to) continue;
                if (count == 2 || std::binary_search(anchors.begin(), anchors.end(), v)) forbid |= bit;
            }
            s.forbid = forbid;
        }
        return plan_;
    }

private:
    const LabeledConstruction& g_;
    const GadgetModel& m_;
    Plan plan_;
};

/// Exact length set of a plan plus a realizer.
class PlanEval {
public:
    PlanEval(const Plan& plan, const GadgetModel& m, std::size_t vmax) : plan_(plan), m_(m) {
        tables_.resize(plan.segs.size());
        std::vector<std::size_t> irregular;
        for (std::size_t i = 0; i < plan.segs.size(); ++i) {
            const Segment& s = plan.segs[i];
            if (s.is_edge) {
                ++fixed_;
                continue;
            }
            tables_[i] = m.kind_table(s.kind, s.req, s.forbid);
            const auto& t = *tables_[i];
            int lo = -1, hi = -1;
            bool gap = false;
            for (int l = 0; l < static_cast<int>(t.size()); ++l) {
                if (t[l].pattern < 0) {
                    if (lo >= 0 && hi >= 0) gap = gap || false;
                    continue;
                }
                if (lo < 0) lo = l;
                if (hi >= 0 && l != hi + 1) gap = true;
                hi = l;
            }
            if (lo < 0) {
                empty_ = true;
                return;
            }
            if (gap) {
                irregular.push_back(i);
            } else {
                intervals_.push_back({i, lo, hi});
                ilo_ += lo;
                ihi_ += hi;
            }
        }
        // DP over irregular segments: pick_[j][sum] = length chosen for segment j.
        std::vector<char> reach(1, 1);
        for (std::size_t i : irregular) {
            const auto& t = *tables_[i];
            std::vector<char> next(reach.size() + t.size(), 0);
            std::vector<int> pick(next.size(), -1);
            for (std::size_t r = 0; r < reach.size(); ++r) {
                if (!reach[r]) continue;
                for (std::size_t l = 0; l < t.size(); ++l) {
                    if (t[l].pattern < 0 || next[r + l]) continue;
                    next[r + l] = 1;
                    pick[r + l] = static_cast<int>(l);
                }
            }
            reach = std::move(next);
            irregular_.push_back(i);
            picks_.push_back(std::move(pick));
        }
        reach_ = std::move(reach);
        feasible_.assign(vmax + 2, 0);
        std::vector<int> diff(vmax + 3, 0);
        for (std::size_t r = 0; r < reach_.size(); ++r) {
            if (!reach_[r]) continue;
            std::size_t lo = fixed_ + r + ilo_, hi = fixed_ + r + ihi_;
            if (lo > vmax) continue;
            hi = std::min(hi, vmax);
            ++diff[lo];
            --diff[hi + 1];
        }
        int run = 0;
        for (std::size_t k = 0; k <= vmax; ++k) {
            run += diff[k];
            feasible_[k] = run > 0;
        }
    }

    bool feasible(std::size_t k) const { return !empty_ && k < feasible_.size() && feasible_[k]; }
    const Plan& plan() const { return plan_; }

    std::size_t min_length() const {
        for (std::size_t k = 0; k < feasible_.size(); ++k)
            if (feasible(k)) return k;
        return 0;
    }

    /// Per-segment lengths for total k; interval segments are water-filled
    /// in ascending block order.
    std::vector<int> assign(std::size_t k) const {
        std::vector<int> len(plan_.segs.size(), 1);
        const std::size_t target = k - fixed_;
        std::size_t r = 0;
        for (; r < reach_.size(); ++r) {
            if (!reach_[r]) continue;
            if (target >= r + ilo_ && target <= r + ihi_) break;
        }
        std::size_t rem = r;
        for (std::size_t j = irregular_.size(); j-- > 0;) {
            int l = picks_[j][rem];
            len[irregular_[j]] = l;
            rem -= static_cast<std::size_t>(l);
        }
        std::size_t extra = target - r - ilo_;
        std::vector<Interval> order = intervals_;
        std::stable_sort(order.begin(), order.end(), [&](const Interval& a, const Interval& b) {
            return plan_.segs[a.seg].block < plan_.segs[b.seg].block;
        });
        for (const auto& iv : order) {
            std::size_t add = std::min<std::size_t>(extra, static_cast<std::size_t>(iv.hi - iv.lo));
            len[iv.seg] = iv.lo + static_cast<int>(add);
            extra -= add;
        }
        return len;
    }

    CycleWitness realize(std::size_t k, const LabeledConstruction& g) const {
        auto len = assign(k);
        CycleWitness w;
        w.vertices.reserve(k);
        for (std::size_t i = 0; i < plan_.segs.size(); ++i) {
            const Segment& s = plan_.segs[i];
            if (s.is_edge) {
                w.vertices.push_back(s.from);
                continue;
            }
            auto local = m_.realize(s.kind, s.req, s.forbid, len[i]);
            if (s.reversed) std::reverse(local.begin(), local.end());
            for (std::size_t t = 0; t + 1 < local.size(); ++t) {
                w.vertices.push_back(g.vertex(s.block, static_cast<std::uint64_t>(local[t])));
            }
        }
        return w;
    }

private:
    struct Interval {
        std::size_t seg;
        int lo, hi;
    };
    Plan plan_;
    const GadgetModel& m_;
    std::vector<std::shared_ptr<const GadgetModel::KindTable>> tables_;
    std::size_t fixed_ = 0;
    std::size_t ilo_ = 0, ihi_ = 0;
    bool empty_ = false;
    std::vector<Interval> intervals_;
    std::vector<std::size_t> irregular_;
    std::vector<std::vector<int>> picks_;
    std::vector<char> reach_;
    std::vector<char> feasible_;
};

// ---------------------------------------------------------------------------

struct LocatedEdge {
    EdgeClass cls = EdgeClass::E3;
    std::int64_t block = 0;  // E3: the block holding the edge
    int local = -1;          // E3: local edge index in H(s)
    std::size_t chord = 0;   // E4
    E4Role role = E4Role::HeadHead;
    std::int64_t a = 0, b = 0;   // E4: chord oriented a -> b
    std::uint8_t x_port = 0, y_port = 0;  // E4: ports of the endpoints in blocks a and b
};

/// Recipe-driven witness generator for one upper construction G(s, ell). The
/// gadget tables are shared and thread-safe; everything else is read-only.
class WitnessEngine {
public:
    explicit WitnessEngine(const LabeledConstruction& g)
        : g_(g), model_(g.s()), skeleton_(base_cycle(g.s(), g.ell())) {
        if (g.kind != LabeledConstruction::Kind::Full) {
            throw WitnessError(WitnessErrc::WrongConstruction, "witness engine needs the full construction G");
        }
    }

    const LabeledConstruction& construction() const { return g_; }
    const LabeledConstruction& skeleton() const { return skeleton_; }
    const GadgetModel& model() const { return model_; }
    std::size_t order() const { return g_.graph.vertex_count(); }

    LocatedEdge locate(const EdgeRef& e) const {
        if (e.v >= g_.graph.vertex_count() || !g_.graph.has_edge(e)) {
            throw WitnessError(WitnessErrc::MissingEdge, "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
        }
        LocatedEdge le;
        le.cls = g_.edge_class(e);
        if (le.cls == EdgeClass::E4) {
            auto info = *g_.e4_info(e);
            const Chord& c = g_.chords[info.chord];
            le.chord = info.chord;
            le.role = info.role;
            le.a = static_cast<std::int64_t>(c.from);
            le.b = static_cast<std::int64_t>(c.to);
            switch (info.role) {
            case E4Role::HeadHead: le.x_port = kPortP; le.y_port = kPortP; break;
            case E4Role::CenterHead: le.x_port = kPortW; le.y_port = kPortP; break;
            case E4Role::CenterCenter: le.x_port = kPortW; le.y_port = kPortW; break;
            case E4Role::BCenterCenter: le.x_port = kPortU; le.y_port = kPortW; break;
            }
            return le;
        }
        auto [blk, p, q] = local_of(e);
        le.block = blk;
        le.local = model_.edge_index(p, q);
        return le;
    }

    /// (block, p, q) for an E3 edge.
    std::tuple<std::int64_t, int, int> local_of(const EdgeRef& e) const {
        auto cu = g_.coord(e.u), cv = g_.coord(e.v);
        const int Q = model_.Q();
        if (cu.i == cv.i) return {static_cast<std::int64_t>(cu.i), static_cast<int>(cu.j), static_cast<int>(cv.j)};
        if (cv.j == 1 && g_.wrap(static_cast<std::int64_t>(cu.i) + 1) == cv.i)
            return {static_cast<std::int64_t>(cu.i), static_cast<int>(cu.j), Q};
        if (cu.j == 1 && g_.wrap(static_cast<std::int64_t>(cv.i) + 1) == cu.i)
            return {static_cast<std::int64_t>(cv.i), static_cast<int>(cv.j), Q};
        throw WitnessError(WitnessErrc::EdgeNotInBlock, "edge spans two blocks");
    }

    BlockPath block_path(std::int64_t i, std::size_t t, std::optional<EdgeRef> req) const {
        const std::size_t maxlen = 100 * g_.s() - 1;
        if (t < 3 || t > maxlen) {
            throw WitnessError(WitnessErrc::LengthOutOfRange,
                               "t=" + std::to_string(t) + " outside [3," + std::to_string(maxlen) + "]");
        }
        const auto blk = static_cast<std::int64_t>(g_.wrap(i));
        int local = -1;
        if (req) {
            if (req->v >= g_.graph.vertex_count() || !g_.graph.has_edge(*req) ||
                g_.edge_class(*req) != EdgeClass::E3) {
                throw WitnessError(WitnessErrc::EdgeNotInBlock, "required edge is not a gadget edge");
            }
            auto [b, p, q] = local_of(*req);
            if (b != blk) throw WitnessError(WitnessErrc::EdgeNotInBlock, "required edge lies in block " + std::to_string(b));
            local = model_.edge_index(p, q);
        }
        auto table = model_.kind_table(SegKind::Full, local, 0);
        if ((*table)[t].pattern < 0) {
            throw WitnessError(WitnessErrc::NoSuchPath, "no block path of length " + std::to_string(t) + " through the edge");
        }
        BlockPath bp;
        bp.block = static_cast<std::uint64_t>(blk);
        for (int pos : model_.realize(SegKind::Full, local, 0, static_cast<int>(t))) {
            bp.vertices.push_back(g_.vertex(blk, static_cast<std::uint64_t>(pos)));
        }
        return bp;
    }

    /// Window cycle of the E3 path edge v_i^j v_i^{j+1} at its base length j+7s+2.
    std::optional<CycleWitness> window_cycle(std::int64_t i, std::uint64_t j) const {
        EdgeRef e(g_.vertex(i, j), g_.vertex(i, j + 1));
        auto plan = window_plan(locate(e));
        if (!plan) return std::nullopt;
        PlanEval ev(*plan, model_, order());
        const std::size_t k = j + 7 * g_.s() + 2;
        if (!ev.feasible(k) || ev.min_length() != k) return std::nullopt;
        return ev.realize(k, g_);
    }

    // -- plan catalog --------------------------------------------------------

    std::optional<Plan> window_plan(const LocatedEdge& le) const {
        if (le.cls != EdgeClass::E3 || g_.ell() < 3) return std::nullopt;
        const auto s = static_cast<std::int64_t>(g_.s());
        const auto S = static_cast<std::int64_t>(g_.base_count / g_.s());
        const std::int64_t i = le.block;
        auto [t1, t2] = g_.tau(static_cast<std::uint64_t>(i));
        PlanBuilder pb(g_, model_, Recipe::Window);
        pb.block(i, SegKind::Full, false, le.local);
        pb.run(i + 1, t2);
        pb.block(t2, SegKind::HeadToCenter);
        std::vector<std::int64_t> centers{t2, t2 + S, t2 + S - s, t2 + S - 2 * s};
        for (std::int64_t m = 2; m <= s; ++m) centers.push_back(t2 + m * S - 2 * s);
        for (std::size_t c = 0; c + 1 < centers.size(); ++c) {
            pb.edge(pb.port(centers[c], kPortW), pb.port(centers[c + 1], kPortW));
        }
        pb.block(t1, SegKind::CenterToTail);
        pb.run(t1 + 1, i);
        return pb.finish();
    }

    /// Lifts a skeleton cycle (raw base indices, consecutive entries adjacent
    /// in G_1) to G through the located edge.
    std::optional<Plan> lift(std::vector<std::int64_t> c0, const LocatedEdge& le, Recipe r, int p = 0) const {
        const std::size_t m = c0.size();
        if (m < 3) return std::nullopt;
        auto w = [&](std::int64_t x) { return static_cast<std::int64_t>(g_.wrap(x)); };
        for (auto& x : c0) x = w(x);
        PlanBuilder pb(g_, model_, r, p);
        auto add_step = [&](std::int64_t x, std::int64_t y, int req_block_local) {
            if (y == w(x + 1)) {
                pb.block(x, SegKind::Full, false, req_block_local == x ? le.local : -1);
            } else if (y == w(x - 1)) {
                pb.block(y, SegKind::Full, true, req_block_local == y ? le.local : -1);
            } else {
                pb.edge(pb.port(x, kPortP), pb.port(y, kPortP));
            }
        };
        if (le.cls == EdgeClass::E3) {
            bool found = false;
            for (std::size_t t = 0; t < m; ++t) {
                std::int64_t x = c0[t], y = c0[(t + 1) % m];
                if ((x == le.block && y == w(le.block + 1)) || (y == le.block && x == w(le.block + 1))) found = true;
            }
            if (!found) return std::nullopt;
            for (std::size_t t = 0; t < m; ++t) add_step(c0[t], c0[(t + 1) % m], static_cast<int>(le.block));
            return pb.finish();
        }
        // E4: rotate so the walk is b ... a and the closing step is the chord.
        std::size_t at = m;
        for (std::size_t t = 0; t < m; ++t) {
            std::int64_t x = c0[t], y = c0[(t + 1) % m];
            if (x == le.a && y == le.b) at = t;
            if (x == le.b && y == le.a) {
                std::reverse(c0.begin(), c0.end());
                t = m;
                for (std::size_t u = 0; u < m; ++u) {
                    if (c0[u] == le.a && c0[(u + 1) % m] == le.b) at = u;
                }
            }
        }
        if (at == m) return std::nullopt;
        std::rotate(c0.begin(), c0.begin() + static_cast<std::ptrdiff_t>((at + 1) % m), c0.end());
        // now c0 = b, ..., a
        for (std::size_t t = 0; t + 1 < m; ++t) add_step(c0[t], c0[t + 1], -1);
        auto& segs = pb.segments();
        if (le.y_port == kPortW) {
            if (!segs.empty() && !segs.front().is_edge && segs.front().block == le.b && !segs.front().reversed) {
                segs.front().kind = SegKind::CenterToTail;
            } else {
                Segment s;
                s.block = le.b;
                s.kind = SegKind::HeadToCenter;
                s.reversed = true;
                segs.insert(segs.begin(), s);
            }
        }
        if (le.x_port != kPortP) {
            const SegKind tail = le.x_port == kPortW ? SegKind::CenterToTail : SegKind::UToTail;
            const SegKind head = le.x_port == kPortW ? SegKind::HeadToCenter : SegKind::HeadToU;
            if (!segs.empty() && !segs.back().is_edge && segs.back().block == le.a && segs.back().reversed) {
                segs.back().kind = tail;
            } else {
                pb.block(le.a, head);
            }
        }
        pb.edge(pb.port(le.a, le.x_port), pb.port(le.b, le.y_port));
        return pb.finish();
    }

    std::vector<std::int64_t> ring() const {
        std::vector<std::int64_t> c;
        for (std::uint64_t i = 1; i <= g_.base_count; ++i) c.push_back(static_cast<std::int64_t>(i));
        return c;
    }

    /// The two skeleton cycles made of a chord and one arc of the base cycle.
    std::vector<std::vector<std::int64_t>> arcs(const Chord& c) const {
        auto a = static_cast<std::int64_t>(c.from), b = static_cast<std::int64_t>(c.to);
        const auto N = static_cast<std::int64_t>(g_.base_count);
        std::vector<std::vector<std::int64_t>> out(2);
        for (std::int64_t x = a, end = b < a ? b + N : b; x <= end; ++x) out[0].push_back(x);
        for (std::int64_t x = b, end = a < b ? a + N : a; x <= end; ++x) out[1].push_back(x);
        return out;
    }

    std::optional<Plan> lemma_plan(const LocatedEdge& le, std::uint64_t p) const {
        EdgeRef base;
        if (le.cls == EdgeClass::E3) {
            base = EdgeRef(skeleton_.head(le.block), skeleton_.head(le.block + 1));
        } else {
            base = EdgeRef(skeleton_.head(le.a), skeleton_.head(le.b));
        }
        auto cyc = lemma_cycle(skeleton_, base, p);
        std::vector<std::int64_t> c0;
        for (Vertex v : cyc.vertices) c0.push_back(static_cast<std::int64_t>(v) + 1);
        return lift(c0, le, Recipe::SkeletonLift, static_cast<int>(p));
    }

    /// Plans for E4 edges that use two of the chord's four edges.
    std::vector<Plan> chord_pair_plans(const LocatedEdge& le) const {
        std::vector<Plan> out;
        if (le.cls != EdgeClass::E4) return out;
        const std::int64_t a = le.a, N = static_cast<std::int64_t>(g_.base_count);
        const std::int64_t b = le.b < le.a ? le.b + N : le.b;  // a < b as raw integers
        auto P = [&](std::int64_t i, std::uint8_t bit) { return PlanBuilder(g_, model_, Recipe::ChordPair).port(i, bit); };
        const bool ch = le.role == E4Role::CenterHead, bcc = le.role == E4Role::BCenterCenter;
        const bool hh = le.role == E4Role::HeadHead, cc = le.role == E4Role::CenterCenter;
        if (ch || bcc) {
            PlanBuilder pb(g_, model_, Recipe::ChordPair);
            pb.block(a, SegKind::UToTailB);
            pb.run(a + 1, b);
            pb.edge(P(b, kPortP), P(a, kPortW));
            pb.block(a, SegKind::HeadToCenterA, true);
            pb.run_back(a + N, b + 1);
            pb.block(b, SegKind::CenterToTail, true);
            pb.edge(P(b, kPortW), P(a, kPortU));
            if (auto plan = pb.finish()) out.push_back(*plan);
        }
        if (hh || cc) {
            PlanBuilder pb(g_, model_, Recipe::ChordPairAlt);
            pb.edge(P(a, kPortP), P(b, kPortP));
            pb.run_back(b, a + 1);
            pb.block(a, SegKind::CenterToTail, true);
            pb.edge(P(a, kPortW), P(b, kPortW));
            pb.block(b, SegKind::CenterToTail);
            pb.run(b + 1, a + N);
            if (auto plan = pb.finish()) out.push_back(*plan);
        }
        if (cc || ch) {
            PlanBuilder pb(g_, model_, Recipe::ChordPairAlt);
            pb.edge(P(a, kPortW), P(b, kPortW));
            pb.block(b, SegKind::CenterToTail);
            pb.run(b + 1, a + N);
            pb.block(a, SegKind::NoCenterFull);
            pb.run(a + 1, b);
            pb.edge(P(b, kPortP), P(a, kPortW));
            if (auto plan = pb.finish()) out.push_back(*plan);
        }
        return out;
    }

    std::vector<Plan> local_e4_plans(const LocatedEdge& le) const {
        std::vector<Plan> out;
        if (le.cls != EdgeClass::E4) return out;
        PlanBuilder pb(g_, model_, Recipe::ChordLocal);
        auto P = [&](std::int64_t i, std::uint8_t bit) { return pb.port(i, bit); };
        if (le.role == E4Role::HeadHead || le.role == E4Role::CenterHead) {
            pb.edge(P(le.b, kPortP), P(le.a, kPortP));
            pb.block(le.a, SegKind::HeadToCenter);
            pb.edge(P(le.a, kPortW), P(le.b, kPortP));
        } else {
            pb.edge(P(le.b, kPortW), P(le.a, kPortW));
            pb.block(le.a, SegKind::CenterToU);
            pb.edge(P(le.a, kPortU), P(le.b, kPortW));
        }
        if (auto plan = pb.finish()) out.push_back(*plan);
        return out;
    }

    /// Every plan for the edge in dispatch order.
    std::vector<Plan> plans(const LocatedEdge& le) const {
        std::vector<Plan> out;
        auto push = [&](std::optional<Plan> p) {
            if (p) out.push_back(std::move(*p));
        };
        if (le.cls == EdgeClass::E3) {
            push(window_plan(le));
        } else {
            for (auto& p : local_e4_plans(le)) out.push_back(std::move(p));
        }
        for (std::uint64_t p = 1; p < g_.ell(); ++p) push(lemma_plan(le, p));
        if (le.cls == EdgeClass::E3) {
            push(lift(ring(), le, Recipe::RingLift));
        } else {
            for (auto& p : chord_pair_plans(le)) out.push_back(std::move(p));
        }
        if (le.cls == EdgeClass::E3) {
            for (const auto& c : g_.chords)
                for (auto& arc : arcs(c)) push(lift(arc, le, Recipe::ArcLift));
        } else {
            for (auto& arc : arcs(g_.chords[le.chord])) push(lift(arc, le, Recipe::ArcLift));
        }
        return out;
    }

    /// Cycle inside the block through an E3 edge.
    std::optional<CycleWitness> local_cycle(const LocatedEdge& le, std::size_t k) const {
        if (le.cls != EdgeClass::E3 || k > static_cast<std::size_t>(model_.size())) return std::nullopt;
        auto row = model_.local_cycles(le.local);
        const auto& c = (*row)[k];
        if (c.type < 0) return std::nullopt;
        CycleWitness w;
        for (int pos : model_.local_cycle_sequence(c)) w.vertices.push_back(g_.vertex(le.block, static_cast<std::uint64_t>(pos)));
        return w;
    }

private:
    const LabeledConstruction& g_;
    GadgetModel model_;
    LabeledConstruction skeleton_;
};

/// Per-edge dispatcher that caches plan evaluations across lengths.
class EdgeWitnessPlanner {
public:
    EdgeWitnessPlanner(const WitnessEngine& engine, const EdgeRef& e)
        : engine_(engine), edge_(e), located_(engine.locate(e)) {
        for (auto& p : engine.plans(located_)) evals_.emplace_back(std::move(p), engine.model(), engine.order());
    }

    const LocatedEdge& located() const { return located_; }
    const std::vector<PlanEval>& evaluations() const { return evals_; }

    /// First recipe (in dispatch order, restricted to `allowed`) that covers k.
    std::optional<TaggedWitness> find(std::size_t k, const std::vector<Recipe>* allowed = nullptr,
                                      int only_p = 0) const {
        auto ok = [&](Recipe r) {
            return !allowed || std::find(allowed->begin(), allowed->end(), r) != allowed->end();
        };
        const auto& g = engine_.construction().graph;
        if (ok(Recipe::BlockLocal)) {
            if (auto w = engine_.local_cycle(located_, k)) {
                if (validate_witness(g, *w, edge_, k).pass) return TaggedWitness{std::move(*w), Recipe::BlockLocal, 0};
                ++validation_failures_;
            }
        }
        for (const auto& ev : evals_) {
            const Plan& plan = ev.plan();
            if (!ok(plan.recipe) || (only_p && plan.p != only_p) || !ev.feasible(k)) continue;
            auto w = ev.realize(k, engine_.construction());
            if (validate_witness(g, w, edge_, k).pass) return TaggedWitness{std::move(w), plan.recipe, plan.p};
            ++validation_failures_;
        }
        return std::nullopt;
    }

    std::size_t validation_failures() const { return validation_failures_; }

private:
    const WitnessEngine& engine_;
    EdgeRef edge_;
    LocatedEdge located_;
    std::vector<PlanEval> evals_;
    mutable std::size_t validation_failures_ = 0;
};

// ---------------------------------------------------------------------------
// Public entry points.

inline BlockPath block_path(const LabeledConstruction& g, std::int64_t i, std::size_t t,
                            std::optional<EdgeRef> required_edge = std::nullopt) {
    WitnessEngine engine(g);
    return engine.block_path(i, t, required_edge);
}

namespace detail {

inline void check_length(const LabeledConstruction& g, std::size_t k) {
    if (k < 3 || k > g.graph.vertex_count()) {
        throw WitnessError(WitnessErrc::LengthOutOfRange,
                           "k=" + std::to_string(k) + " outside [3," + std::to_string(g.graph.vertex_count()) + "]");
    }
}

}  // namespace detail

/// Short cycles: inside one block, around one chord, and the window cycle.
inline TaggedWitness short_witness(const WitnessEngine& engine, const EdgeRef& e, std::size_t k) {
    const auto& g = engine.construction();
    detail::check_length(g, k);
    if (k > 600 * g.s()) throw WitnessError(WitnessErrc::RecipeInapplicable, "k above 600s");
    EdgeWitnessPlanner planner(engine, e);
    if (planner.located().cls != EdgeClass::E3 && planner.located().cls != EdgeClass::E4) {
        throw WitnessError(WitnessErrc::RecipeInapplicable, "edge is not in E3 or E4");
    }
    static const std::vector<Recipe> allowed{Recipe::BlockLocal, Recipe::Window, Recipe::ChordLocal};
    if (auto w = planner.find(k, &allowed)) return *w;
    throw WitnessError(WitnessErrc::RecipeInapplicable, "no short recipe reaches length " + std::to_string(k));
}

/// A short skeleton cycle lifted block by block.
inline TaggedWitness mid_witness(const WitnessEngine& engine, const EdgeRef& e, std::size_t k, std::uint64_t p) {
    const auto& g = engine.construction();
    if (p < 1 || p + 1 > g.ell()) {
        throw WitnessError(WitnessErrc::ParamOutOfRange, "p=" + std::to_string(p));
    }
    detail::check_length(g, k);
    EdgeWitnessPlanner planner(engine, e);
    static const std::vector<Recipe> allowed{Recipe::SkeletonLift};
    if (auto w = planner.find(k, &allowed, static_cast<int>(p))) return *w;
    throw WitnessError(WitnessErrc::RangeUnsatisfiable,
                       "lifted cycle for p=" + std::to_string(p) + " cannot reach length " + std::to_string(k));
}

/// Long cycles: the whole ring lifted, or a cycle using two edges of one chord.
inline TaggedWitness long_witness(const WitnessEngine& engine, const EdgeRef& e, std::size_t k) {
    const auto& g = engine.construction();
    detail::check_length(g, k);
    auto le = engine.locate(e);
    const std::size_t lo = 3 * g.base_count + (le.cls == EdgeClass::E3 ? 100 : 200) * g.s();
    if (k < lo) {
        throw WitnessError(WitnessErrc::RangeUnsatisfiable, "k=" + std::to_string(k) + " below " + std::to_string(lo));
    }
    EdgeWitnessPlanner planner(engine, e);
    static const std::vector<Recipe> allowed{Recipe::RingLift, Recipe::ChordPair, Recipe::ChordPairAlt};
    if (auto w = planner.find(k, &allowed)) return *w;
    throw WitnessError(WitnessErrc::RangeUnsatisfiable, "no long recipe reaches length " + std::to_string(k));
}

struct AnyWitnessOptions {
    std::chrono::milliseconds fallback_budget{2000};
};

/// Recipes in order short, mid, long, arc lifts, then a bounded exact search.
inline TaggedWitness witness_any(const WitnessEngine& engine, const EdgeRef& e, std::size_t k,
                                 const AnyWitnessOptions& opts = {}) {
    const auto& g = engine.construction();
    detail::check_length(g, k);
    EdgeWitnessPlanner planner(engine, e);
    if (auto w = planner.find(k)) return *w;
    SearchOptions so;
    so.budget = opts.fallback_budget;
    auto r = search_cycle_through_edge(g.graph, e, k, so);
    if (r.status == SearchStatus::Found) return TaggedWitness{std::move(*r.witness), Recipe::Fallback, 0};
    if (r.status == SearchStatus::Absent) {
        throw WitnessError(WitnessErrc::Counterexample, "no cycle of length " + std::to_string(k) + " through the edge");
    }
    throw WitnessError(WitnessErrc::Gap, "recipes inapplicable and search timed out at length " + std::to_string(k));
}

inline TaggedWitness witness_any(const LabeledConstruction& g, const EdgeRef& e, std::size_t k,
                                 const AnyWitnessOptions& opts = {}) {
    WitnessEngine engine(g);
    return witness_any(engine, e, k, opts);
}

// ---------------------------------------------------------------------------
// Coverage.

struct SamplePolicy {
    bool all = true;
    std::size_t count = 0;
    std::uint64_t seed = 1;

    static SamplePolicy every() { return {}; }
    static SamplePolicy sample(std::size_t count, std::uint64_t seed = 1) { return {false, count, seed}; }
    static SamplePolicy none() { return {false, 0, 1}; }

    template <class T>
    std::vector<T> apply(const std::vector<T>& items) const {
        if (all) return items;
        std::vector<T> out;
        std::mt19937_64 rng(seed);
        std::sample(items.begin(), items.end(), std::back_inserter(out), std::min(count, items.size()), rng);
        return out;
    }
};

enum class CoverageOutcome : std::uint8_t { Recipe, Fallback, GapTimeout, GapAbsent };

inline const char* to_string(CoverageOutcome o) {
    switch (o) {
    case CoverageOutcome::Recipe: return "recipe-witnessed";
    case CoverageOutcome::Fallback: return "fallback-witnessed";
    case CoverageOutcome::GapTimeout: return "gap-timeout";
    case CoverageOutcome::GapAbsent: return "gap-proved-absent";
    }
    return "?";
}

struct CoverageEntry {
    EdgeRef edge;
    std::size_t length = 0;
    CoverageOutcome outcome = CoverageOutcome::Recipe;
    Recipe recipe = Recipe::Fallback;
};

struct CoverageOptions {
    SamplePolicy edges;
    SamplePolicy lengths;
    std::chrono::milliseconds budget{2000};
    unsigned jobs = 0;
};

struct CoverageReport {
    std::uint64_t s = 0, ell = 0;
    std::size_t edge_count = 0, length_count = 0, pairs = 0;
    std::map<std::string, std::size_t> by_recipe;
    std::map<std::string, std::size_t> by_class;  // pairs per edge class
    std::size_t recipe_witnessed = 0, fallback_witnessed = 0, gap_timeout = 0, gap_absent = 0;
    std::size_t validation_failures = 0;
    std::vector<CoverageEntry> non_recipe;  // every fallback or gap entry, in (edge, length) order

    bool complete() const { return gap_timeout == 0 && gap_absent == 0; }
};

inline CoverageReport coverage(const WitnessEngine& engine, const CoverageOptions& opts = {}) {
    const auto& g = engine.construction();
    CoverageReport rep;
    rep.s = g.s();
    rep.ell = g.ell();
    const auto edges = opts.edges.apply(g.graph.edges());
    std::vector<std::size_t> all_lengths;
    for (std::size_t k = 3; k <= g.graph.vertex_count(); ++k) all_lengths.push_back(k);
    auto lengths = opts.lengths.apply(all_lengths);
    std::sort(lengths.begin(), lengths.end());
    rep.edge_count = edges.size();
    rep.length_count = lengths.size();
    rep.pairs = edges.size() * lengths.size();

    struct EdgeResult {
        std::vector<CoverageEntry> entries;
        std::map<std::string, std::size_t> by_recipe;
        std::size_t fails = 0;
    };
    std::vector<EdgeResult> results(edges.size());
    parallel_for(edges.size(), resolve_jobs(opts.jobs), [&](std::size_t idx) {
        const EdgeRef e = edges[idx];
        EdgeWitnessPlanner planner(engine, e);
        std::optional<CycleSearcher> searcher;
        auto& res = results[idx];
        for (std::size_t k : lengths) {
            if (auto w = planner.find(k)) {
                ++res.by_recipe[to_string(w->recipe)];
                continue;
            }
            if (!searcher) {
                SearchOptions so;
                so.budget = opts.budget;
                searcher.emplace(g.graph, so);
            }
            auto r = searcher->through_edge(e, k);
            CoverageEntry ce{e, k, CoverageOutcome::Fallback, Recipe::Fallback};
            if (r.status == SearchStatus::Found) {
                if (!validate_witness(g.graph, *r.witness, e, k).pass) ++res.fails;
                ++res.by_recipe[to_string(Recipe::Fallback)];
            } else {
                ce.outcome = r.status == SearchStatus::Absent ? CoverageOutcome::GapAbsent : CoverageOutcome::GapTimeout;
            }
            res.entries.push_back(ce);
        }
        res.fails += planner.validation_failures();
    });
    for (std::size_t idx = 0; idx < edges.size(); ++idx) {
        auto& res = results[idx];
        rep.by_class[to_string(g.edge_class(edges[idx]))] += lengths.size();
        for (auto& [tag, n] : res.by_recipe) rep.by_recipe[tag] += n;
        rep.validation_failures += res.fails;
        for (auto& ce : res.entries) {
            switch (ce.outcome) {
            case CoverageOutcome::Fallback: ++rep.fallback_witnessed; break;
            case CoverageOutcome::GapTimeout: ++rep.gap_timeout; break;
            case CoverageOutcome::GapAbsent: ++rep.gap_absent; break;
            default: break;
            }
            rep.non_recipe.push_back(ce);
        }
    }
    rep.recipe_witnessed = rep.pairs - rep.fallback_witnessed - rep.gap_timeout - rep.gap_absent;
    return rep;
}

}  // namespace pancyclic
