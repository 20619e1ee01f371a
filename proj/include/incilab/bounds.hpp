#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "incilab/powers.hpp"

namespace incilab {

// Parameters of the three-dimensional incidence bound. The constants A, B and
// b are never pinned down asymptotically; callers pass them (defaults 1, 1, 2).
struct BoundParams {
    std::uint64_t m = 1, n = 1, s = 1;
    Rational A = 1, B = 1, b = 2;

    void validate() const {
        if (m < 1 || n < 1) throw InvalidArgument("bound parameters require m, n >= 1");
        if (s < 1 || s > n) throw InvalidArgument("bound parameters require 1 <= s <= n");
        if (b <= 1) throw InvalidArgument("bound parameters require b > 1");
    }
};

namespace detail {
inline PowerProduct pp(std::uint64_t v) { return PowerProduct::of(v); }
inline Rational q(long a, long b = 1) {
    Rational r(a, b);
    r.canonicalize();
    return r;
}
}  // namespace detail

/// Planar Szemeredi-Trotter expression m^{2/3} n^{2/3} + m + n (unit constant).
inline Real st2d_bound(std::uint64_t m, std::uint64_t n) {
    using detail::pp, detail::q;
    if (m < 1 || n < 1) throw InvalidArgument("st2d_bound requires m, n >= 1");
    const PowerProduct lead = pp(m).pow(q(2, 3)) * pp(n).pow(q(2, 3));
    return Real::from(lead) + Real::from(Rational(static_cast<unsigned long>(m))) +
           Real::from(Rational(static_cast<unsigned long>(n)));
}

/// m^{1/2} n^{3/4}
inline PowerProduct gk_leading_term(std::uint64_t m, std::uint64_t n) {
    using detail::pp, detail::q;
    return pp(m).pow(q(1, 2)) * pp(n).pow(q(3, 4));
}

/// m^{2/3} n^{1/3} s^{1/3}
inline PowerProduct planar_term(std::uint64_t m, std::uint64_t n, std::uint64_t s) {
    using detail::pp, detail::q;
    return pp(m).pow(q(2, 3)) * pp(n).pow(q(1, 3)) * pp(s).pow(q(1, 3));
}

/// A (m^{1/2} n^{3/4} + m) + B (m^{2/3} n^{1/3} s^{1/3} + n).
inline Real gk_bound(const BoundParams& p) {
    p.validate();
    const Real m = Real::from(Rational(static_cast<unsigned long>(p.m)));
    const Real n = Real::from(Rational(static_cast<unsigned long>(p.n)));
    return Real::from(p.A) * (Real::from(gk_leading_term(p.m, p.n)) + m) +
           Real::from(p.B) * (Real::from(planar_term(p.m, p.n, p.s)) + n);
}

/// Unit-constant sum m^{1/2} n^{3/4} + m^{2/3} n^{1/3} s^{1/3} + m + n.
inline Real incidence_scale(std::uint64_t m, std::uint64_t n, std::uint64_t s) {
    return Real::from(gk_leading_term(m, n)) + Real::from(planar_term(m, n, s)) +
           Real::from(Rational(static_cast<unsigned long>(m))) + Real::from(Rational(static_cast<unsigned long>(n)));
}

/// min(m^2 + n, n^2 + m)
inline Integer trivial_bound(std::uint64_t m, std::uint64_t n) {
    const Integer M(static_cast<unsigned long>(m)), N(static_cast<unsigned long>(n));
    const Integer a = M * M + N, b = N * N + M;
    return a < b ? a : b;
}

enum class Regime { SmallM, LargeM };

inline const char* to_string(Regime r) { return r == Regime::SmallM ? "small-m" : "large-m"; }

/// Compare m with n^{3/2} exactly: m^2 vs n^3.
inline int compare_with_threshold(std::uint64_t m, std::uint64_t n) {
    const Integer M(static_cast<unsigned long>(m)), N(static_cast<unsigned long>(n));
    const Integer l = M * M, r = N * N * N;
    return l < r ? -1 : (l > r ? 1 : 0);
}

// ---------------------------------------------------------------------------
// Exponent ladders.

/// alpha_j = 3/2 - 2/(j+2), the ranges below n^{3/2}.
inline Rational alpha_small(long j) {
    if (j < 0) throw InvalidArgument("ladder index must be nonnegative");
    return detail::q(3, 2) - detail::q(2, j + 2);
}

/// Ranges above n^{3/2}: 2, 7/4, 23/14, then 3/2 + 1/(4j-2) from the reset value 8/5 at j = 3.
inline Rational alpha_large(long j) {
    if (j < 0) throw InvalidArgument("ladder index must be nonnegative");
    switch (j) {
        case 0: return 2;
        case 1: return detail::q(7, 4);
        case 2: return detail::q(23, 14);
        default: return detail::q(3, 2) + detail::q(1, 4 * j - 2);
    }
}

inline Rational alpha_sequence(Regime r, long j) { return r == Regime::SmallM ? alpha_small(j) : alpha_large(j); }

/// (9 + 2a) / (2 (7 - 2a)): the compatibility exponent below n^{3/2}.
inline Rational alpha_small_step(const Rational& a) { return (9 + 2 * a) / (2 * (7 - 2 * a)); }

/// (5a - 3) / (2a): first part above n^{3/2}, where E <= m^{1/3}/n^{1/3} binds.
inline Rational alpha_large_step_first(const Rational& a) { return (5 * a - 3) / (2 * a); }

/// (7a - 9) / (4a - 5): second part, where E <= m^2/n^3 binds.
inline Rational alpha_large_step(const Rational& a) { return (7 * a - 9) / (4 * a - 5); }

// ---------------------------------------------------------------------------
// Coefficient A_{m,n} = b^e.

struct AmnCoefficient {
    Regime regime = Regime::SmallM;
    std::optional<Rational> exponent_exact;
    long double exponent = 0;
    long double A = 0;  // b^e
};

inline AmnCoefficient amn_coefficient(std::uint64_t m, std::uint64_t n, const Rational& b = 2) {
    using detail::pp;
    if (m < 2 || n < 2) throw InvalidArgument("amn_coefficient requires m, n >= 2");
    if (b <= 1) throw InvalidArgument("amn_coefficient requires b > 1");
    const int side = compare_with_threshold(m, n);
    if (side == 0) throw MidrangeError("m = n^{3/2}: use midrange_bound");
    AmnCoefficient out;
    PowerProduct num, den;
    if (side < 0) {
        out.regime = Regime::SmallM;
        num = pp(m).pow(2) * pp(n);            // m^2 n
        den = pp(n).pow(3) / pp(m).pow(2);     // n^3 / m^2
    } else {
        out.regime = Regime::LargeM;
        num = pp(m).pow(3) / pp(n).pow(4);     // m^3 / n^4
        den = pp(m).pow(2) / pp(n).pow(3);     // m^2 / n^3
    }
    out.exponent_exact = log_ratio(num, den);
    out.exponent = out.exponent_exact ? to_long_double(*out.exponent_exact) : num.log() / den.log();
    out.A = std::pow(to_long_double(b), out.exponent);
    return out;
}

// ---------------------------------------------------------------------------
// Degree selection.

struct Window {
    PowerProduct lo, hi;
    bool nonempty() const { return lo <= hi; }
};

struct DegreePlan {
    Regime regime = Regime::SmallM;
    std::optional<long> j;          // ladder index; empty on the border m = n^{3/2}
    PowerProduct D;                 // first-stage degree
    std::optional<Window> E_window; // empty for the base range and on the border
    bool window_nonempty = false;
    std::string notes;
};

namespace detail {

// Smallest j >= 0 with m <= n^{alpha_small(j)}; nullopt if none up to cap.
inline std::optional<long> small_ladder_index(std::uint64_t m, std::uint64_t n, long cap = 100000) {
    const PowerProduct M = pp(m), N = pp(n);
    // Ladder exponent grows with j; start near the real-valued estimate.
    long j = 0;
    const long double ratio = std::log((long double)m) / std::log((long double)n);
    if (ratio < 1.5L) {
        const long double est = 2.0L / (1.5L - ratio) - 2.0L;
        j = std::max(0L, static_cast<long>(std::floor(est)) - 2);
    } else {
        j = cap;
    }
    j = std::min(j, cap);
    while (j > 0 && M <= N.pow(alpha_small(j - 1))) --j;
    while (j <= cap && !(M <= N.pow(alpha_small(j)))) ++j;
    if (j > cap) return std::nullopt;
    return j;
}

// Smallest j >= 0 with m >= n^{alpha_large(j)}.
inline std::optional<long> large_ladder_index(std::uint64_t m, std::uint64_t n, long cap = 100000) {
    const PowerProduct M = pp(m), N = pp(n);
    long j = 0;
    const long double ratio = std::log((long double)m) / std::log((long double)n);
    if (ratio > 1.5L) {
        const long double est = (1.0L / (ratio - 1.5L) + 2.0L) / 4.0L;
        j = std::max(0L, static_cast<long>(std::floor(est)) - 2);
    } else {
        j = cap;
    }
    j = std::min(j, cap);
    while (j > 0 && N.pow(alpha_large(j - 1)) <= M) --j;
    while (j <= cap && !(N.pow(alpha_large(j)) <= M)) ++j;
    if (j > cap) return std::nullopt;
    return j;
}

}  // namespace detail

/// Regime, ladder index, first-stage degree D and the admissible window for
/// the second-stage degree E. Requires sqrt(n) <= m <= n^2.
inline DegreePlan degree_plan(std::uint64_t m, std::uint64_t n, std::optional<long> j_hint = std::nullopt) {
    using detail::pp, detail::q;
    if (m < 1 || n < 1) throw RangeError("degree_plan requires m, n >= 1");
    {
        const Integer M(static_cast<unsigned long>(m)), N(static_cast<unsigned long>(n));
        if (M * M < N || M > N * N)
            throw RangeError("degree_plan: m = " + std::to_string(m) + " outside [sqrt(n), n^2] for n = " + std::to_string(n));
    }
    if (j_hint && *j_hint < 0) throw InvalidArgument("degree_plan: negative ladder index");
    DegreePlan plan;
    const PowerProduct M = pp(m), N = pp(n);
    const int side = compare_with_threshold(m, n);
    plan.regime = side <= 0 ? Regime::SmallM : Regime::LargeM;
    if (plan.regime == Regime::SmallM) {
        plan.D = M.pow(q(1, 2)) / N.pow(q(1, 4));
        plan.j = j_hint ? j_hint : detail::small_ladder_index(m, n);
    } else {
        plan.D = N.pow(2) / M;
        plan.j = j_hint ? j_hint : detail::large_ladder_index(m, n);
    }
    if (!plan.j) {
        plan.notes = "border range m = n^{3/2}: no finite ladder index, use midrange_bound";
        return plan;
    }
    if (*plan.j == 0) {
        plan.notes = "base range: the trivial bound applies, no second partition";
        return plan;
    }
    const Rational a = alpha_sequence(plan.regime, *plan.j - 1);
    Window w;
    if (plan.regime == Regime::SmallM) {
        // (m / n^a)^{1/(3-2a)} <= E <= min(n^{3/8}/m^{1/4}, m^{1/2}/n^{1/4})
        w.lo = (M / N.pow(a)).pow(1 / (3 - 2 * a));
        const PowerProduct u1 = N.pow(q(3, 8)) / M.pow(q(1, 4));
        const PowerProduct u2 = M.pow(q(1, 2)) / N.pow(q(1, 4));
        w.hi = u1 <= u2 ? u1 : u2;
    } else {
        // (n^a / m)^{1/(2a-3)} <= E <= min(m^{1/3}/n^{1/3}, m^2/n^3)
        w.lo = (N.pow(a) / M).pow(1 / (2 * a - 3));
        const PowerProduct u1 = M.pow(q(1, 3)) / N.pow(q(1, 3));
        const PowerProduct u2 = M.pow(2) / N.pow(3);
        w.hi = u1 <= u2 ? u1 : u2;
        plan.notes = compare(M, N.pow(q(8, 5))) >= 0 ? "m >= n^{8/5}: E <= m^{1/3}/n^{1/3} binds"
                                                     : "m < n^{8/5}: E <= m^2/n^3 binds";
    }
    plan.window_nonempty = w.nonempty();
    if (!plan.window_nonempty) {
        if (!plan.notes.empty()) plan.notes += "; ";
        plan.notes += "empty E window: lower " + w.lo.to_string() + " > upper " + w.hi.to_string();
    }
    plan.E_window = w;
    return plan;
}

// ---------------------------------------------------------------------------
// Border range m ~ n^{3/2}.

struct MidrangeBound {
    Real j0;          // sqrt(log n) / sqrt(log b)
    long j = 1;       // ladder index actually used: max(1, floor(j0))
    Real k;           // max(1, m / n^{alpha_small(j)})
    Real multiplier;  // 2^{c sqrt(log2 b) sqrt(log2 n)}, c = 2 or sqrt(4.5)
    Real value;       // multiplier * (m^{1/2} n^{3/4} + m^{2/3} n^{1/3} s^{1/3} + m + n)
    bool large_variant = false;
};

inline MidrangeBound midrange_bound(std::uint64_t m, std::uint64_t n, std::uint64_t s, const Rational& b = 2) {
    using detail::pp, detail::q;
    if (b <= 1) throw InvalidArgument("midrange_bound requires b > 1");
    if (m < 1 || n < 2 || s < 1) throw InvalidArgument("midrange_bound requires m, s >= 1 and n >= 2");
    MidrangeBound out;
    const PowerProduct N = pp(n), Bp = PowerProduct::of(b), M = pp(m);

    // j0 = sqrt(ln n / ln b); the ratio of logs is base independent.
    const auto ratio = log_ratio(N, Bp);
    if (ratio && is_perfect_square(*ratio)) {
        out.j0 = Real::from(exact_sqrt(*ratio));
    } else {
        const long double r = ratio ? to_long_double(*ratio) : N.log() / Bp.log();
        out.j0 = Real::from_interval(Interval::around(std::sqrt(r)));
    }
    out.j = std::max(1L, static_cast<long>(out.j0.exact ? floor(*out.j0.exact).get_si() : std::floor(out.j0.value())));

    const PowerProduct kk = M / N.pow(alpha_small(out.j));
    out.k = compare(kk, PowerProduct{}) < 0 ? Real::from(Rational(1)) : Real::from(kk);

    out.large_variant = compare_with_threshold(m, n) > 0;
    // Multiplier exponent c * sqrt(log2 b * log2 n).
    const PowerProduct two = pp(2);
    const auto lb = log_ratio(Bp, two), ln = log_ratio(N, two);
    std::optional<Rational> root;
    if (lb && ln && is_perfect_square(*lb * *ln)) root = exact_sqrt(*lb * *ln);
    if (!out.large_variant && root) {
        out.multiplier = Real::from(two.pow(2 * *root));
    } else {
        const long double c = out.large_variant ? std::sqrt(4.5L) : 2.0L;
        const long double prod = (Bp.log() / std::log(2.0L)) * (N.log() / std::log(2.0L));
        out.multiplier = Real::from_interval(Interval::around(std::exp2(c * std::sqrt(prod))));
    }
    out.value = out.multiplier * incidence_scale(m, n, s);
    return out;
}

}  // namespace incilab
