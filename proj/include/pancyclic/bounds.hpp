#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pancyclic/graph.hpp"

namespace pancyclic {

enum class BoundsErrc { BadKind, ParamTooSmall, MinDegreeTooLow };

inline const char* to_string(BoundsErrc e) {
    switch (e) {
    case BoundsErrc::BadKind: return "BadKind";
    case BoundsErrc::ParamTooSmall: return "ParamTooSmall";
    case BoundsErrc::MinDegreeTooLow: return "MinDegreeTooLow";
    }
    return "?";
}

class BoundsError : public std::runtime_error {
public:
    BoundsError(BoundsErrc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    BoundsErrc code() const noexcept { return code_; }

private:
    BoundsErrc code_;
};

inline std::string to_string(const mpq_class& q) {
    mpq_class c(q);
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline mpz_class ceil_div(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// ---------------------------------------------------------------------------
// Formulas.

enum class BoundKind { FLower, GRange, FiveThirds, SevenFourths, Conjecture };

inline std::optional<BoundKind> parse_bound_kind(const std::string& s) {
    if (s == "3n2" || s == "f-lower") return BoundKind::FLower;
    if (s == "g-range" || s == "g") return BoundKind::GRange;
    if (s == "5n3") return BoundKind::FiveThirds;
    if (s == "7n4") return BoundKind::SevenFourths;
    if (s == "conj" || s == "conjecture") return BoundKind::Conjecture;
    return std::nullopt;
}

/// Exact integer lower bound. GRange is the least integer above 3n/2.
inline mpz_class lower_bound(std::uint64_t n, BoundKind kind, std::uint64_t k = 0) {
    if (n < 1) throw BoundsError(BoundsErrc::BadKind, "n must be positive");
    const mpz_class N(static_cast<unsigned long>(n));
    switch (kind) {
    case BoundKind::FLower: return ceil_div(3 * N, 2);
    case BoundKind::GRange: return mpz_class(3 * N / 2) + 1;
    case BoundKind::FiveThirds: return ceil_div(5 * N, 3);
    case BoundKind::SevenFourths: return ceil_div(7 * N, 4);
    case BoundKind::Conjecture: {
        if (k < 4) throw BoundsError(BoundsErrc::BadKind, "conjecture needs k >= 4");
        const mpz_class K(static_cast<unsigned long>(k));
        return ceil_div((4 * K - 9) * N, 2 * K - 4);
    }
    }
    throw BoundsError(BoundsErrc::BadKind, "unknown kind");
}

/// Upper end of the vertex-pancyclic range, floor(5n/3).
inline mpz_class g_upper(std::uint64_t n) { return mpz_class(5 * mpz_class(static_cast<unsigned long>(n)) / 3); }

struct ConstructionCounts {
    mpz_class v, e, e1, e2;
};

inline ConstructionCounts construction_counts(std::uint64_t s, std::uint64_t ell) {
    if (s < 2 || ell < 1) throw BoundsError(BoundsErrc::ParamTooSmall, "need s >= 2 and ell >= 1");
    ConstructionCounts c;
    mpz_class S(static_cast<unsigned long>(s)), sl, sl1;
    mpz_pow_ui(sl.get_mpz_t(), S.get_mpz_t(), ell);
    mpz_pow_ui(sl1.get_mpz_t(), S.get_mpz_t(), ell - 1);
    c.e1 = sl;
    c.e2 = mpz_class(static_cast<unsigned long>(ell - 1)) * sl1;
    c.v = (100 * S - 1) * sl;
    c.e = 2 * c.v - c.e1 + 4 * c.e2;
    return c;
}

// ---------------------------------------------------------------------------
// Directed-rounding enclosures.

namespace detail {

class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(x_, prec); }
    ~Mpfr() { mpfr_clear(x_); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
    mpfr_ptr get() { return x_; }
    mpfr_srcptr get() const { return x_; }

    mpq_class exact() const {
        mpq_class q;
        mpfr_get_q(q.get_mpq_t(), x_);  // every finite binary float is a dyadic rational
        return q;
    }

private:
    mpfr_t x_;
};

}  // namespace detail

/// Closed rational interval [lo, hi] with dyadic endpoints.
struct Enclosure {
    mpq_class lo, hi;
    unsigned precision = 0;
    mpq_class width() const { return hi - lo; }
};

/// e^x for integer x.
inline Enclosure exp_enclosure(const mpz_class& x, unsigned prec) {
    detail::Mpfr a(prec), lo(prec), hi(prec);
    mpfr_set_z(a.get(), x.get_mpz_t(), MPFR_RNDN);
    if (mpfr_cmp_z(a.get(), x.get_mpz_t()) != 0) throw std::invalid_argument("exponent not representable");
    mpfr_exp(lo.get(), a.get(), MPFR_RNDD);
    mpfr_exp(hi.get(), a.get(), MPFR_RNDU);
    return {lo.exact(), hi.exact(), prec};
}

/// ln x for a positive integer x.
inline Enclosure log_enclosure(const mpz_class& x, unsigned prec) {
    // x may need more bits than prec: bracket it first, then take logs outward.
    detail::Mpfr xl(prec), xh(prec), lo(prec), hi(prec);
    mpfr_set_z(xl.get(), x.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(xh.get(), x.get_mpz_t(), MPFR_RNDU);
    mpfr_log(lo.get(), xl.get(), MPFR_RNDD);
    mpfr_log(hi.get(), xh.get(), MPFR_RNDU);
    return {lo.exact(), hi.exact(), prec};
}

// ---------------------------------------------------------------------------
// Size certificate for the upper construction.

enum class StepVerdict { Pass, Fail, Unresolved };

inline const char* to_string(StepVerdict v) {
    switch (v) {
    case StepVerdict::Pass: return "pass";
    case StepVerdict::Fail: return "fail";
    case StepVerdict::Unresolved: return "unresolved";
    }
    return "?";
}

struct CertificateStep {
    std::string id;
    std::string inequality;
    std::string left, right;  // exact integers/rationals, or enclosures "[lo, hi]"
    StepVerdict verdict = StepVerdict::Pass;
    unsigned precision = 0;  // 0 for pure integer steps
    std::string width;       // enclosure width, when one is used
    bool informational = false;  // recorded, but not part of the overall verdict
};

enum class EllRule { Floor, Ceil, Explicit };

struct BoundCertificate {
    std::string identifier = "theorem7";
    std::uint64_t s = 0, ell = 0;
    EllRule rule = EllRule::Ceil;
    std::string n, e;  // decimal strings
    std::vector<CertificateStep> steps;
    StepVerdict overall = StepVerdict::Pass;
    std::optional<std::string> first_failure;
};

struct Theorem7Options {
    EllRule rule = EllRule::Ceil;
    std::uint64_t ell = 0;       // for EllRule::Explicit
    unsigned precision = 128;    // starting precision
    unsigned max_precision = 256;
};

namespace detail {

inline std::string interval_string(const Enclosure& x) { return "[" + to_string(x.lo) + ", " + to_string(x.hi) + "]"; }

/// Compares an enclosed quantity X with an exact rational r, raising precision
/// until the enclosure no longer straddles r. Returns the sign of X - r, or
/// nullopt when max precision is reached.
template <class Encl>
std::optional<int> certified_compare(Encl&& enclose, const mpq_class& r, unsigned prec, unsigned max_prec,
                                     Enclosure& used) {
    for (unsigned p = prec;; p *= 2) {
        p = std::min(p, max_prec);
        used = enclose(p);
        if (used.lo > r) return 1;
        if (used.hi < r) return -1;
        if (used.lo == r && used.hi == r) return 0;
        if (p >= max_prec) return std::nullopt;
    }
}

inline mpz_class floor_q(const mpq_class& q) {
    mpz_class z;
    mpz_fdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return z;
}

}  // namespace detail

inline const char* to_string(EllRule r) {
    switch (r) {
    case EllRule::Floor: return "floor";
    case EllRule::Ceil: return "ceil";
    case EllRule::Explicit: return "explicit";
    }
    return "?";
}

inline BoundCertificate theorem7_certificate(std::uint64_t s, const Theorem7Options& opts = {}) {
    if (s < 2) throw BoundsError(BoundsErrc::ParamTooSmall, "s must be at least 2");
    BoundCertificate cert;
    cert.s = s;
    cert.rule = opts.rule;
    const mpz_class S(static_cast<unsigned long>(s));
    auto fail = [&](const CertificateStep& st) {
        if (st.informational) return;
        if (st.verdict == StepVerdict::Fail) {
            cert.overall = StepVerdict::Fail;
            if (!cert.first_failure) cert.first_failure = st.id;
        } else if (st.verdict == StepVerdict::Unresolved && cert.overall == StepVerdict::Pass) {
            cert.overall = StepVerdict::Unresolved;
            if (!cert.first_failure) cert.first_failure = st.id;
        }
    };
    auto verdict_of = [](std::optional<int> c, bool want_le) {
        if (!c) return StepVerdict::Unresolved;
        return (want_le ? *c <= 0 : *c >= 0) ? StepVerdict::Pass : StepVerdict::Fail;
    };

    // (h) hypothesis e^8 <= s.
    {
        CertificateStep st{"h", "e^8 <= s"};
        Enclosure used;
        auto c = detail::certified_compare([&](unsigned p) { return exp_enclosure(8, p); }, mpq_class(S),
                                           opts.precision, opts.max_precision, used);
        st.left = detail::interval_string(used);
        st.right = S.get_str();
        st.precision = used.precision;
        st.width = to_string(used.width());
        st.verdict = verdict_of(c, true);
        cert.steps.push_back(st);
        fail(st);
    }

    // (l) ell from the rule; s / ln s is enclosed via ln s.
    std::uint64_t ell = opts.ell;
    {
        CertificateStep st{"l", std::string("ell = ") + to_string(opts.rule) + "(s / ln s)"};
        if (opts.rule == EllRule::Explicit) {
            st.left = std::to_string(ell);
            st.right = "explicit";
            st.verdict = ell >= 1 ? StepVerdict::Pass : StepVerdict::Fail;
        } else {
            st.verdict = StepVerdict::Unresolved;
            for (unsigned p = opts.precision;; p *= 2) {
                p = std::min(p, opts.max_precision);
                Enclosure ln = log_enclosure(S, p);
                st.precision = p;
                if (ln.lo <= 0) {
                    if (p >= opts.max_precision) break;
                    continue;
                }
                mpq_class qlo = mpq_class(S) / ln.hi, qhi = mpq_class(S) / ln.lo;
                st.left = "[" + to_string(qlo) + ", " + to_string(qhi) + "]";
                st.width = to_string(qhi - qlo);
                mpz_class flo = detail::floor_q(qlo), fhi = detail::floor_q(qhi);
                const bool integral_hi = mpq_class(fhi) == qhi;
                if (flo == fhi && !integral_hi) {
                    ell = opts.rule == EllRule::Floor ? flo.get_ui() : flo.get_ui() + 1;
                    st.right = std::to_string(ell);
                    st.verdict = StepVerdict::Pass;
                    break;
                }
                if (p >= opts.max_precision) break;
            }
        }
        cert.steps.push_back(st);
        fail(st);
    }
    cert.ell = ell;
    if (ell < 1) return cert;
    const auto cnt = construction_counts(s, ell);
    cert.n = cnt.v.get_str();
    cert.e = cnt.e.get_str();
    const mpz_class L(static_cast<unsigned long>(ell));

    // (i) |E2| <= |E1|/8, i.e. 8(ell-1) <= s.
    {
        CertificateStep st{"i", "8(ell-1) <= s"};
        mpz_class left = 8 * (L - 1);
        st.left = left.get_str();
        st.right = S.get_str();
        st.verdict = left <= S ? StepVerdict::Pass : StepVerdict::Fail;
        cert.steps.push_back(st);
        fail(st);
    }

    // (ii) 2v - e = |E1| - 4|E2| >= v / (200 s), cleared of denominators.
    const mpz_class diff = cnt.e1 - 4 * cnt.e2;
    {
        CertificateStep st{"ii", "200 s (s^ell - 4(ell-1) s^(ell-1)) >= (100s-1) s^ell"};
        mpz_class left = 200 * S * diff;
        st.left = left.get_str();
        st.right = cnt.v.get_str();
        st.verdict = left >= cnt.v ? StepVerdict::Pass : StepVerdict::Fail;
        cert.steps.push_back(st);
        fail(st);
    }

    // (iii) s <= ln n, certified as e^s <= n with an upper enclosure of e^s.
    {
        CertificateStep st{"iii", "e^s <= n"};
        Enclosure used;
        auto c = detail::certified_compare([&](unsigned p) { return exp_enclosure(S, p); }, mpq_class(cnt.v),
                                           opts.precision, opts.max_precision, used);
        st.left = detail::interval_string(used);
        st.right = cnt.v.get_str();
        st.precision = used.precision;
        st.width = to_string(used.width());
        st.verdict = verdict_of(c, true);
        cert.steps.push_back(st);
        fail(st);
    }

    // The bracket s^ell <= e^s < s^(ell+1) is recorded but not required.
    {
        mpz_class sl, sl1;
        mpz_pow_ui(sl.get_mpz_t(), S.get_mpz_t(), ell);
        sl1 = sl * S;
        for (int side = 0; side < 2; ++side) {
            CertificateStep st{side == 0 ? "iii-a" : "iii-b", side == 0 ? "s^ell <= e^s" : "e^s < s^(ell+1)"};
            st.informational = true;
            Enclosure used;
            const mpq_class r(side == 0 ? sl : sl1);
            auto c = detail::certified_compare([&](unsigned p) { return exp_enclosure(S, p); }, r, opts.precision,
                                               opts.max_precision, used);
            st.left = side == 0 ? sl.get_str() : detail::interval_string(used);
            st.right = side == 0 ? detail::interval_string(used) : sl1.get_str();
            st.precision = used.precision;
            st.width = to_string(used.width());
            if (!c) {
                st.verdict = StepVerdict::Unresolved;
            } else if (side == 0) {
                st.verdict = *c >= 0 ? StepVerdict::Pass : StepVerdict::Fail;
            } else {
                st.verdict = *c < 0 ? StepVerdict::Pass : StepVerdict::Fail;
            }
            cert.steps.push_back(st);
        }
    }

    // (iv) e <= 2n - n/(200 ln n): assembled from (ii) and (iii), and checked
    // directly as ln n >= n / (200 (2n - e)) with ln n = ln(100s-1) + ell ln s.
    {
        CertificateStep st{"iv", "e <= 2n - n / (200 ln n)"};
        const bool chain = cert.steps[3].verdict == StepVerdict::Pass && cert.steps[4].verdict == StepVerdict::Pass;
        if (diff <= 0) {
            st.left = "2n - e = " + diff.get_str();
            st.right = "> 0 required";
            st.verdict = StepVerdict::Fail;
        } else {
            const mpq_class target(cnt.v, 200 * diff);
            Enclosure used;
            auto c = detail::certified_compare(
                [&](unsigned p) {
                    Enclosure a = log_enclosure(100 * S - 1, p), b = log_enclosure(S, p);
                    return Enclosure{a.lo + L * b.lo, a.hi + L * b.hi, p};
                },
                target, opts.precision, opts.max_precision, used);
            st.left = "ln n in " + detail::interval_string(used);
            st.right = to_string(target);
            st.precision = used.precision;
            st.width = to_string(used.width());
            const StepVerdict direct = verdict_of(c ? std::optional<int>(-*c) : std::nullopt, true);
            st.verdict = direct == StepVerdict::Unresolved && chain ? StepVerdict::Pass : direct;
        }
        cert.steps.push_back(st);
        fail(st);
    }
    return cert;
}

// ---------------------------------------------------------------------------
// Discharging audits.

enum class Scheme { T3, T4 };

struct ThresholdCheck {
    std::string threshold;
    bool pass = false;
};

struct DischargeFailure {
    std::vector<Vertex> vertices;
    std::string reason;
};

struct DischargeReport {
    Scheme scheme = Scheme::T3;
    std::vector<std::string> classes;  // per vertex
    std::vector<mpq_class> f0, f1;
    bool transfers_ran = false;
    mpq_class min_f1;
    std::optional<Vertex> argmin;
    mpq_class sum_f0, sum_f1;
    bool conservation = false;
    std::vector<ThresholdCheck> thresholds;
    bool verdict = false;
    std::optional<DischargeFailure> failure;
    std::optional<bool> edge_bound_implied;  // T3: e >= ceil(12n/7) holds on pass instances
};

namespace detail {

inline void require_min_degree(const Graph& g) {
    if (g.vertex_count() == 0 || g.min_degree() < 3) {
        throw BoundsError(BoundsErrc::MinDegreeTooLow, "discharging needs minimum degree 3");
    }
}

inline void finish_transfers(DischargeReport& r, const Graph& g) {
    r.transfers_ran = true;
    r.sum_f0 = 0;
    r.sum_f1 = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        r.sum_f0 += r.f0[v];
        r.sum_f1 += r.f1[v];
        if (!r.argmin || r.f1[v] < r.min_f1) {
            r.min_f1 = r.f1[v];
            r.argmin = v;
        }
    }
    const mpq_class twice_e(static_cast<unsigned long>(2 * g.edge_count()));
    r.conservation = r.sum_f0 == r.sum_f1 && r.sum_f1 == twice_e;
}

}  // namespace detail

inline DischargeReport discharge_audit_t3(const Graph& g) {
    detail::require_min_degree(g);
    DischargeReport r;
    r.scheme = Scheme::T3;
    const std::size_t n = g.vertex_count();
    r.classes.resize(n);
    r.f0.resize(n);
    for (Vertex v = 0; v < n; ++v) {
        r.classes[v] = g.degree(v) == 3 ? "V3" : "V4+";
        r.f0[v] = static_cast<unsigned long>(g.degree(v));
    }
    for (const auto& e : g.edges()) {
        if (g.degree(e.u) == 3 && g.degree(e.v) == 3) {
            r.failure = DischargeFailure{{e.u, e.v}, "V3 not independent"};
            return r;
        }
    }
    r.f1 = r.f0;
    const mpq_class give(1, 7);
    for (Vertex u = 0; u < n; ++u) {
        if (g.degree(u) < 4) continue;
        for (Vertex x : g.neighbors(u)) {
            if (g.degree(x) != 3) continue;
            r.f1[u] -= give;
            r.f1[x] += give;
        }
    }
    detail::finish_transfers(r, g);
    const mpq_class bound(24, 7);
    r.thresholds.push_back({"24/7", r.min_f1 >= bound});
    r.verdict = r.conservation && r.min_f1 >= bound;
    if (r.verdict) {
        const mpz_class need = ceil_div(12 * mpz_class(static_cast<unsigned long>(n)), 7);
        r.edge_bound_implied = mpz_class(static_cast<unsigned long>(g.edge_count())) >= need;
    }
    return r;
}

namespace detail {

/// A1/A2/A3 membership of a degree-3 vertex, or a failure reason.
inline std::string classify_t4(const Graph& g, Vertex v, std::string& reason) {
    auto nb = g.neighbors(v);
    std::array<Vertex, 3> N{nb[0], nb[1], nb[2]};
    auto big = [&](Vertex x) { return g.degree(x) >= 4; };
    const bool all_big = big(N[0]) && big(N[1]) && big(N[2]);
    int adjacent = 0;
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) adjacent += g.has_edge(N[a], N[b]) ? 1 : 0;
    if (adjacent == 3 && all_big) return "A1";
    const std::size_t dmax = std::max({g.degree(N[0]), g.degree(N[1]), g.degree(N[2])});
    for (int xi = 0; xi < 3; ++xi) {
        Vertex x = N[xi], y = N[(xi + 1) % 3], z = N[(xi + 2) % 3];
        if (!g.has_edge(x, y) || !g.has_edge(x, z)) continue;
        if (!g.has_edge(y, z) && dmax >= 5 && all_big) return "A2";
        if (g.degree(x) >= 5 && ((g.degree(y) == 3 && big(z)) || (g.degree(z) == 3 && big(y)))) return "A3";
    }
    if (adjacent < 2) {
        reason = "no neighbor x with xy, xz in E (A1/A2/A3 all need a neighbor adjacent to the other two)";
    } else if (adjacent == 3) {
        reason = all_big ? "unreachable" : "triangle neighborhood with a degree-3 neighbor fails A3 (needs d(x) >= 5 and exactly one of y, z in V3)";
    } else if (all_big) {
        reason = "A2 needs max degree >= 5 among the neighbors";
    } else {
        reason = "A3 needs d(x) >= 5 and exactly one of y, z in V3";
    }
    return "";
}

}  // namespace detail

inline DischargeReport discharge_audit_t4(const Graph& g) {
    detail::require_min_degree(g);
    DischargeReport r;
    r.scheme = Scheme::T4;
    const std::size_t n = g.vertex_count();
    r.classes.resize(n);
    r.f0.resize(n);
    for (Vertex v = 0; v < n; ++v) {
        r.f0[v] = static_cast<unsigned long>(g.degree(v));
        if (g.degree(v) != 3) {
            r.classes[v] = "V4+";
            continue;
        }
        std::string reason;
        r.classes[v] = detail::classify_t4(g, v, reason);
        if (r.classes[v].empty()) {
            r.failure = DischargeFailure{{v}, "vertex unclassifiable: " + reason};
            return r;
        }
    }
    r.f1 = r.f0;
    for (Vertex u = 0; u < n; ++u) {
        const std::size_t d = g.degree(u);
        if (d < 4) continue;
        for (Vertex x : g.neighbors(u)) {
            const std::string& c = r.classes[x];
            mpq_class give;
            if (c == "A1") give = mpq_class(1, 5);
            else if (c == "A2") give = d == 4 ? mpq_class(3, 23) : mpq_class(8, 23);
            else if (c == "A3") give = d == 4 ? mpq_class(2, 15) : mpq_class(7, 15);
            else continue;
            r.f1[u] -= give;
            r.f1[x] += give;
        }
    }
    detail::finish_transfers(r, g);
    for (auto t : {mpq_class(82, 23), mpq_class(18, 5), mpq_class(83, 23)}) {
        r.thresholds.push_back({to_string(t), r.min_f1 >= t});
    }
    r.verdict = r.conservation && r.min_f1 >= mpq_class(7, 2);
    return r;
}

}  // namespace pancyclic
