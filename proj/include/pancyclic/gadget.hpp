#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "pancyclic/constructions.hpp"

namespace pancyclic {

// Local model of the gadget H(s) used by the witness engine.
//
// Positions 1..2L+2 (L = 50s-1) follow the block naming v^j: the A-fan path
// w_1..w_L is 1..L, its center w is L+1, the B-fan center u is L+2 and the
// B-fan path u_1..u_L is L+3..2L+2. Position 1 is the block head P and
// position 2L+2 is the tail Q (the next block's head). The map
// p -> 2L+3-p swaps the two fans and is an automorphism of H(s), so every
// route family is enumerated on the A side only and mirrored.
//
// Every simple path inside H between two of the ports {P, w, u, Q} is a
// concatenation of at most two fan routes and one to three of the bridge
// edges w u_1, u w_L, w u. The fan route families are
//   F1  P -> w     w_1..w_a w
//   F2  P -> w_L   w_1..w_L, or w_1..w_a w w_c..w_L (a < c)
//   F2s P -> w_L   straight only
//   F3  w -> w_L   w w_c..w_L
// and each segment kind lists the concatenation patterns that realize it.

enum class SegKind : std::uint8_t {
    Full,          // P -> Q
    NoCenterFull,  // P -> Q avoiding w
    HeadToCenter,  // P -> w
    CenterToTail,  // w -> Q
    HeadToU,       // P -> u
    UToTail,       // u -> Q
    CenterToU,     // w -> u
    HeadToCenterA, // P -> w inside the A fan only
    UToTailB,      // u -> Q inside the B fan only
};

inline const char* to_string(SegKind k) {
    switch (k) {
    case SegKind::Full: return "full";
    case SegKind::NoCenterFull: return "full-no-center";
    case SegKind::HeadToCenter: return "head-center";
    case SegKind::CenterToTail: return "center-tail";
    case SegKind::HeadToU: return "head-u";
    case SegKind::UToTail: return "u-tail";
    case SegKind::CenterToU: return "center-u";
    case SegKind::HeadToCenterA: return "head-center-a";
    case SegKind::UToTailB: return "u-tail-b";
    }
    return "?";
}

/// Port bits of a block.
enum PortBit : std::uint8_t { kPortP = 1, kPortW = 2, kPortU = 4, kPortQ = 8 };

class GadgetModel {
public:
    enum Fam : std::uint8_t { F1, F2, F2s, F3, kFamCount };

    /// Choice for one total length of a segment kind.
    struct Choice {
        std::int16_t pattern = -1;
        std::int32_t p1 = -1, p2 = -1;
    };
    using KindTable = std::vector<Choice>;

    /// Local cycle inside H: type and two parameters.
    struct LocalCycle {
        std::int8_t type = -1;  // 0 fan A, 1 fan B, 2 u-w-w_L.., 3 w-u-u_..., 4 crossing
        std::int16_t a = 0, b = 0;
    };

    explicit GadgetModel(std::uint64_t s) : s_(s), L_(static_cast<int>(50 * s - 1)) {
        const int n = size();
        index_.assign(static_cast<std::size_t>(n + 1) * (n + 1), -1);
        for (auto [a, b] : gadget_edges(s)) {
            int p = static_cast<int>(a), q = static_cast<int>(b);
            index_[p * (n + 1) + q] = index_[q * (n + 1) + p] = static_cast<int>(edges_.size());
            edges_.emplace_back(std::min(p, q), std::max(p, q));
        }
    }

    std::uint64_t s() const { return s_; }
    int L() const { return L_; }
    int size() const { return 2 * L_ + 2; }
    int P() const { return 1; }
    int W() const { return L_ + 1; }
    int U() const { return L_ + 2; }
    int Q() const { return 2 * L_ + 2; }
    int sigma(int p) const { return 2 * L_ + 3 - p; }
    int port_position(PortBit b) const {
        switch (b) {
        case kPortP: return P();
        case kPortW: return W();
        case kPortU: return U();
        case kPortQ: return Q();
        }
        return 0;
    }

    int edge_index(int p, int q) const {
        const int n = size();
        if (p < 1 || q < 1 || p > n || q > n) return -1;
        return index_[p * (n + 1) + q];
    }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    bool a_side(int p) const { return p >= 1 && p <= L_ + 1; }
    bool b_side(int p) const { return p >= L_ + 2 && p <= size(); }

    static std::pair<std::uint8_t, std::uint8_t> endpoints(SegKind k) {
        switch (k) {
        case SegKind::Full:
        case SegKind::NoCenterFull: return {kPortP, kPortQ};
        case SegKind::HeadToCenter:
        case SegKind::HeadToCenterA: return {kPortP, kPortW};
        case SegKind::CenterToTail: return {kPortW, kPortQ};
        case SegKind::HeadToU: return {kPortP, kPortU};
        case SegKind::UToTail:
        case SegKind::UToTailB: return {kPortU, kPortQ};
        case SegKind::CenterToU: return {kPortW, kPortU};
        }
        return {0, 0};
    }

    /// Lengths achievable by a segment kind with an optional required local
    /// edge (-1 for none) while avoiding the ports in `forbid`. Entry t is
    /// set iff a path of exactly t edges exists. Thread-safe.
    std::shared_ptr<const KindTable> kind_table(SegKind kind, int req, std::uint8_t forbid) const {
        auto [e0, e1] = endpoints(kind);
        forbid &= static_cast<std::uint8_t>(~(e0 | e1));
        auto key = std::make_tuple(static_cast<int>(kind), req, static_cast<int>(forbid));
        {
            std::lock_guard lock(mutex_);
            auto it = kind_cache_.find(key);
            if (it != kind_cache_.end()) return it->second;
        }
        auto table = std::make_shared<KindTable>(build_kind_table(kind, req, forbid));
        std::lock_guard lock(mutex_);
        return kind_cache_.emplace(key, std::move(table)).first->second;
    }

    /// Local positions of the segment (start first) for a length the table marks.
    std::vector<int> realize(SegKind kind, int req, std::uint8_t forbid, int len) const {
        auto table = kind_table(kind, req, forbid);
        if (len < 0 || len >= static_cast<int>(table->size()) || (*table)[len].pattern < 0) {
            throw std::logic_error("gadget: length not realizable");
        }
        const Choice& c = (*table)[len];
        const Pattern& pat = patterns(kind)[c.pattern];
        std::vector<int> seq;
        int fam_index = 0;
        for (const Part& part : pat.parts) {
            std::vector<int> piece;
            if (part.bridge) {
                piece = {part.x, part.y};
            } else {
                piece = route(part.fam, fam_index == 0 ? c.p1 : c.p2);
                ++fam_index;
                if (part.side_b)
                    for (int& p : piece) p = sigma(p);
                if (part.reversed) std::reverse(piece.begin(), piece.end());
            }
            if (!seq.empty() && seq.back() == piece.front()) {
                seq.insert(seq.end(), piece.begin() + 1, piece.end());
            } else {
                seq.insert(seq.end(), piece.begin(), piece.end());
            }
        }
        return seq;
    }

    /// Cycles inside H through a local edge, indexed by length (0..2L+2).
    std::shared_ptr<const std::vector<LocalCycle>> local_cycles(int req) const {
        {
            std::lock_guard lock(mutex_);
            if (!local_.empty()) return local_[static_cast<std::size_t>(req)];
        }
        build_local();
        std::lock_guard lock(mutex_);
        return local_[static_cast<std::size_t>(req)];
    }

    std::vector<int> local_cycle_sequence(const LocalCycle& c) const {
        std::vector<int> seq;
        const int L = L_;
        switch (c.type) {
        case 0:
        case 1:
            seq.push_back(W());
            for (int t = c.a; t <= c.b; ++t) seq.push_back(t);
            if (c.type == 1)
                for (int& p : seq) p = sigma(p);
            break;
        case 2:  // w u w_L .. w_a
            seq = {W(), U()};
            for (int t = L; t >= c.a; --t) seq.push_back(t);
            break;
        case 3:  // u w u_1 .. u_a
            seq = {U(), W()};
            for (int t = 1; t <= c.a; ++t) seq.push_back(L + 2 + t);
            break;
        case 4:  // w u_1 .. u_a u w_L .. w_b
            seq.push_back(W());
            for (int t = 1; t <= c.a; ++t) seq.push_back(L + 2 + t);
            seq.push_back(U());
            for (int t = L; t >= c.b; --t) seq.push_back(t);
            break;
        default: break;
        }
        return seq;
    }

private:
    struct Part {
        bool bridge = false;
        Fam fam = F1;
        bool side_b = false;
        bool reversed = false;
        int x = 0, y = 0;  // bridge endpoints in travel order
    };
    struct Pattern {
        std::vector<Part> parts;
    };

    Part fam(Fam f, bool side_b, bool reversed) const { return Part{false, f, side_b, reversed, 0, 0}; }
    Part bridge(int x, int y) const { return Part{true, F1, false, false, x, y}; }

    const std::vector<Pattern>& patterns(SegKind kind) const {
        std::lock_guard lock(pattern_mutex_);
        auto it = patterns_.find(kind);
        if (it != patterns_.end()) return it->second;
        const int w = W(), u = U(), wL = L_, u1 = L_ + 3;
        std::vector<Pattern> out;
        switch (kind) {
        case SegKind::Full:
            out.push_back({{fam(F1, false, false), bridge(w, u), fam(F1, true, true)}});
            out.push_back({{fam(F1, false, false), bridge(w, u1), fam(F2, true, true)}});
            out.push_back({{fam(F2, false, false), bridge(wL, u), fam(F1, true, true)}});
            out.push_back({{fam(F2s, false, false), bridge(wL, u), bridge(u, w), bridge(w, u1), fam(F2s, true, true)}});
            break;
        case SegKind::NoCenterFull:
            out.push_back({{fam(F2s, false, false), bridge(wL, u), fam(F1, true, true)}});
            break;
        case SegKind::HeadToCenter:
            out.push_back({{fam(F1, false, false)}});
            out.push_back({{fam(F2s, false, false), bridge(wL, u), bridge(u, w)}});
            out.push_back({{fam(F2s, false, false), bridge(wL, u), fam(F3, true, false), bridge(u1, w)}});
            break;
        case SegKind::HeadToCenterA:
            out.push_back({{fam(F1, false, false)}});
            break;
        case SegKind::CenterToTail:
            out.push_back({{bridge(w, u), fam(F1, true, true)}});
            out.push_back({{bridge(w, u1), fam(F2, true, true)}});
            out.push_back({{fam(F3, false, false), bridge(wL, u), fam(F1, true, true)}});
            break;
        case SegKind::HeadToU:
            out.push_back({{fam(F1, false, false), bridge(w, u)}});
            out.push_back({{fam(F2, false, false), bridge(wL, u)}});
            out.push_back({{fam(F1, false, false), bridge(w, u1), fam(F3, true, true)}});
            break;
        case SegKind::UToTail:
            out.push_back({{fam(F1, true, true)}});
            out.push_back({{bridge(u, w), bridge(w, u1), fam(F2s, true, true)}});
            out.push_back({{bridge(u, wL), fam(F3, false, true), bridge(w, u1), fam(F2s, true, true)}});
            break;
        case SegKind::UToTailB:
            out.push_back({{fam(F1, true, true)}});
            break;
        case SegKind::CenterToU:
            out.push_back({{bridge(w, u)}});
            out.push_back({{fam(F3, false, false), bridge(wL, u)}});
            out.push_back({{bridge(w, u1), fam(F3, true, true)}});
            break;
        }
        return patterns_.emplace(kind, std::move(out)).first->second;
    }

    // Route parameter encoding: a * (L + 2) + c.
    int encode(int a, int c) const { return a * (L_ + 2) + c; }

    std::vector<int> route(Fam f, int param) const {
        const int a = param / (L_ + 2), c = param % (L_ + 2);
        std::vector<int> seq;
        switch (f) {
        case F1:
            for (int t = 1; t <= a; ++t) seq.push_back(t);
            seq.push_back(W());
            break;
        case F2:
        case F2s:
            if (a == 0) {
                for (int t = 1; t <= L_; ++t) seq.push_back(t);
            } else {
                for (int t = 1; t <= a; ++t) seq.push_back(t);
                seq.push_back(W());
                for (int t = c; t <= L_; ++t) seq.push_back(t);
            }
            break;
        case F3:
            seq.push_back(W());
            for (int t = c; t <= L_; ++t) seq.push_back(t);
            break;
        default: break;
        }
        return seq;
    }

    template <class Fn>
    void for_each_route(Fam f, Fn&& fn) const {
        switch (f) {
        case F1:
            for (int a = 1; a <= L_; ++a) fn(encode(a, 0));
            break;
        case F2:
            fn(encode(0, 0));
            for (int a = 1; a < L_; ++a)
                for (int c = a + 1; c <= L_; ++c) fn(encode(a, c));
            break;
        case F2s: fn(encode(0, 0)); break;
        case F3:
            for (int c = L_; c >= 1; --c) fn(encode(0, c));
            break;
        default: break;
        }
    }

    /// Per family: table[(edge + 1) * 4 + mask][len] = route parameter, -1 if
    /// none. mask bit 0 excludes routes through position 1, bit 1 through w.
    const std::vector<std::vector<int>>& family_table(Fam f) const {
        std::lock_guard lock(family_mutex_);
        if (!family_[f].empty()) return family_[f];
        const int E = static_cast<int>(edges_.size());
        const int maxlen = L_ + 2;
        std::vector<std::vector<int>> tab(static_cast<std::size_t>(E + 1) * 4, std::vector<int>(maxlen + 1, -1));
        std::vector<int> idx;
        for_each_route(f, [&](int param) {
            auto seq = route(f, param);
            const int len = static_cast<int>(seq.size()) - 1;
            std::uint8_t ports = 0;
            idx.clear();
            for (std::size_t i = 0; i < seq.size(); ++i) {
                if (seq[i] == 1) ports |= 1;
                if (seq[i] == W()) ports |= 2;
                if (i + 1 < seq.size()) idx.push_back(edge_index(seq[i], seq[i + 1]));
            }
            for (int m = 0; m < 4; ++m) {
                if (ports & m) continue;
                auto& any = tab[static_cast<std::size_t>(m)];
                if (any[len] < 0) any[len] = param;
                for (int e : idx) {
                    auto& row = tab[static_cast<std::size_t>(e + 1) * 4 + m];
                    if (row[len] < 0) row[len] = param;
                }
            }
        });
        family_[f] = std::move(tab);
        return family_[f];
    }

    std::uint8_t port_of(int p) const {
        if (p == P()) return kPortP;
        if (p == W()) return kPortW;
        if (p == U()) return kPortU;
        if (p == Q()) return kPortQ;
        return 0;
    }

    KindTable build_kind_table(SegKind kind, int req, std::uint8_t forbid) const {
        KindTable table(static_cast<std::size_t>(size() + 1));
        const auto& pats = patterns(kind);
        int req_p = 0, req_q = 0;
        enum { None, OnA, OnB, OnBridge } where = None;
        int req_a = -1;  // required edge in A coordinates
        if (req >= 0) {
            std::tie(req_p, req_q) = edges_.at(static_cast<std::size_t>(req));
            if (a_side(req_p) && a_side(req_q)) {
                where = OnA;
                req_a = req;
            } else if (b_side(req_p) && b_side(req_q)) {
                where = OnB;
                req_a = edge_index(sigma(req_p), sigma(req_q));
            } else {
                where = OnBridge;
            }
        }
        for (std::size_t pi = 0; pi < pats.size(); ++pi) {
            const auto& parts = pats[pi].parts;
            bool ok = true, req_done = (where == None);
            int bridges = 0;
            std::vector<const std::vector<int>*> rows;
            for (const Part& part : parts) {
                if (part.bridge) {
                    ++bridges;
                    if ((port_of(part.x) | port_of(part.y)) & forbid) ok = false;
                    if (where == OnBridge && EdgeRef(part.x, part.y) == EdgeRef(req_p, req_q)) req_done = true;
                    continue;
                }
                std::uint8_t m = part.side_b ? static_cast<std::uint8_t>(((forbid & kPortQ) ? 1 : 0) | ((forbid & kPortU) ? 2 : 0))
                                             : static_cast<std::uint8_t>(((forbid & kPortP) ? 1 : 0) | ((forbid & kPortW) ? 2 : 0));
                int e = -1;
                if ((where == OnA && !part.side_b) || (where == OnB && part.side_b)) {
                    e = req_a;
                    req_done = true;
                }
                rows.push_back(&family_table(part.fam)[static_cast<std::size_t>(e + 1) * 4 + m]);
            }
            if (!ok || !req_done) continue;
            if (rows.empty()) {
                if (table[bridges].pattern < 0) table[bridges] = {static_cast<std::int16_t>(pi), -1, -1};
            } else if (rows.size() == 1) {
                const auto& r1 = *rows[0];
                for (int l1 = 0; l1 < static_cast<int>(r1.size()); ++l1) {
                    if (r1[l1] < 0) continue;
                    auto& slot = table[l1 + bridges];
                    if (slot.pattern < 0) slot = {static_cast<std::int16_t>(pi), r1[l1], -1};
                }
            } else {
                const auto& r1 = *rows[0];
                const auto& r2 = *rows[1];
                for (int l1 = 0; l1 < static_cast<int>(r1.size()); ++l1) {
                    if (r1[l1] < 0) continue;
                    for (int l2 = 0; l2 < static_cast<int>(r2.size()); ++l2) {
                        if (r2[l2] < 0) continue;
                        const int t = l1 + l2 + bridges;
                        if (t >= static_cast<int>(table.size())) continue;
                        auto& slot = table[t];
                        if (slot.pattern < 0) slot = {static_cast<std::int16_t>(pi), r1[l1], r2[l2]};
                    }
                }
            }
        }
        return table;
    }

    void build_local() const {
        const int E = static_cast<int>(edges_.size());
        const int maxlen = size();
        std::vector<std::vector<LocalCycle>> rows(static_cast<std::size_t>(E), std::vector<LocalCycle>(maxlen + 1));
        auto mark = [&](const LocalCycle& c) {
            auto seq = local_cycle_sequence(c);
            const int len = static_cast<int>(seq.size());
            for (std::size_t i = 0; i < seq.size(); ++i) {
                int e = edge_index(seq[i], seq[(i + 1) % seq.size()]);
                auto& slot = rows[static_cast<std::size_t>(e)][len];
                if (slot.type < 0) slot = c;
            }
        };
        const int L = L_;
        for (int t = 0; t <= 1; ++t)
            for (int a = 1; a < L; ++a)
                for (int b = a + 1; b <= L; ++b) mark({static_cast<std::int8_t>(t), static_cast<std::int16_t>(a), static_cast<std::int16_t>(b)});
        for (int a = 1; a <= L; ++a) {
            mark({2, static_cast<std::int16_t>(a), 0});
            mark({3, static_cast<std::int16_t>(a), 0});
        }
        for (int a = 1; a <= L; ++a)
            for (int b = 1; b <= L; ++b) mark({4, static_cast<std::int16_t>(a), static_cast<std::int16_t>(b)});
        std::vector<std::shared_ptr<const std::vector<LocalCycle>>> out;
        out.reserve(rows.size());
        for (auto& r : rows) out.push_back(std::make_shared<const std::vector<LocalCycle>>(std::move(r)));
        std::lock_guard lock(mutex_);
        if (local_.empty()) local_ = std::move(out);
    }

    std::uint64_t s_;
    int L_;
    std::vector<int> index_;
    std::vector<std::pair<int, int>> edges_;

    mutable std::mutex mutex_;
    mutable std::map<std::tuple<int, int, int>, std::shared_ptr<const KindTable>> kind_cache_;
    mutable std::vector<std::shared_ptr<const std::vector<LocalCycle>>> local_;
    mutable std::mutex family_mutex_;
    mutable std::vector<std::vector<int>> family_[kFamCount];
    mutable std::mutex pattern_mutex_;
    mutable std::map<SegKind, std::vector<Pattern>> patterns_;
};

}  // namespace pancyclic
