#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace testing_support;

namespace {
PowerProduct pw(std::uint64_t base, long num, long den = 1) { return PowerProduct::of(base).pow(Q(num, den)); }
}  // namespace

TEST(PowerProduct, ExactComparisonAndValues) {
    EXPECT_EQ(pw(8, 2, 3).exact(), std::optional<Rational>(4));
    EXPECT_FALSE(pw(2, 1, 2).exact().has_value());
    EXPECT_LT(compare(pw(2, 1, 2), pw(3, 1, 3)), 0);
    EXPECT_EQ(compare(pw(4, 1, 2), PowerProduct::of(2)), 0);
    EXPECT_EQ(log_ratio(pw(16, 1), pw(2, 1)), std::optional<Rational>(4));
}

TEST(BoundFormulas, Goldens) {
    BoundParams p;
    p.m = p.n = 16;
    EXPECT_EQ(gk_bound(p).exact, std::optional<Rational>(80));
    EXPECT_EQ(st2d_bound(8, 8).exact, std::optional<Rational>(32));
    EXPECT_EQ(st2d_bound(1, 1).exact, std::optional<Rational>(3));
    EXPECT_EQ(st2d_bound(27, 8).exact, std::optional<Rational>(71));
    p.s = 8;
    EXPECT_EQ(gk_bound(p).exact, std::optional<Rational>(96));
    p.m = p.n = p.s = 1;
    EXPECT_EQ(gk_bound(p).exact, std::optional<Rational>(4));
    EXPECT_EQ(trivial_bound(2, 100), 104);
    EXPECT_EQ(trivial_bound(100, 2), 104);
}

// High-precision references from tests/oracles/oracles.py (mpmath, 50 digits).
TEST(BoundFormulas, OracleValues) {
    const Real a = st2d_bound(1000, 2000);
    EXPECT_LE(a.lower(), 18874.0105196819947475170563927L);
    EXPECT_GE(a.upper(), 18874.0105196819947475170563927L);
    EXPECT_NEAR(static_cast<double>(a.value()), 18874.0105196819947, 1e-9);
    const Real b = st2d_bound(3, 5);
    EXPECT_NEAR(static_cast<double>(b.value()), 14.0822019955734002, 1e-12);
    BoundParams p;
    p.m = 1000;
    p.n = 2000;
    p.s = 7;
    EXPECT_NEAR(static_cast<double>(gk_bound(p).value()), 14867.5583542069881, 1e-8);
    p.m = 54;
    p.n = 27;
    p.s = 27;
    EXPECT_NEAR(static_cast<double>(gk_bound(p).value()), 296.619649687131053, 1e-10);
    EXPECT_NEAR(static_cast<double>(st2d_bound(54, 27).value()), 209.579485209424157, 1e-10);
}

TEST(BoundFormulas, IntervalsAreOutward) {
    for (std::uint64_t m : {3u, 17u, 1000u, 123457u})
        for (std::uint64_t n : {2u, 5u, 999u}) {
            const Real r = incidence_scale(m, n, 1);
            const long double direct = std::sqrt((long double)m) * std::pow((long double)n, 0.75L) +
                                       std::cbrt((long double)m * m * n) + m + n;
            EXPECT_LE(r.lower(), direct * (1 + 1e-15L));
            EXPECT_GE(r.upper(), direct * (1 - 1e-15L));
            EXPECT_LE(r.lower(), r.upper());
        }
}

TEST(BoundFormulas, RejectBadParameters) {
    BoundParams p;
    p.m = 0;
    EXPECT_THROW(gk_bound(p), InvalidArgument);
    p.m = 5;
    p.n = 3;
    p.s = 4;
    EXPECT_THROW(gk_bound(p), InvalidArgument);
    EXPECT_THROW(st2d_bound(0, 3), InvalidArgument);
}

TEST(Ladders, ClosedFormsAndRecurrences) {
    // Frozen from the fraction oracle.
    const std::vector<Rational> small = {Q(1, 2), Q(5, 6), Q(1), Q(11, 10), Q(7, 6), Q(17, 14), Q(5, 4), Q(23, 18)};
    for (long j = 0; j < 8; ++j) EXPECT_EQ(alpha_small(j), small[j]);
    const std::vector<Rational> large = {Q(2), Q(7, 4), Q(23, 14), Q(8, 5), Q(11, 7), Q(14, 9), Q(17, 11), Q(20, 13), Q(23, 15)};
    for (long j = 0; j < 9; ++j) EXPECT_EQ(alpha_large(j), large[j]);
    for (long j = 1; j <= 64; ++j) {
        EXPECT_EQ(alpha_small_step(alpha_small(j - 1)), alpha_small(j));
        EXPECT_LT(alpha_small(j - 1), alpha_small(j));
        EXPECT_LT(alpha_small(j), Q(3, 2));
    }
    EXPECT_EQ(alpha_large_step_first(Q(2)), Q(7, 4));
    EXPECT_EQ(alpha_large_step_first(Q(7, 4)), Q(23, 14));
    EXPECT_EQ(alpha_large_step_first(Q(23, 14)), Q(73, 46));  // replaced by 8/5
    for (long j = 4; j <= 64; ++j) EXPECT_EQ(alpha_large_step(alpha_large(j - 1)), alpha_large(j));
    for (long j = 1; j <= 64; ++j) {
        EXPECT_GT(alpha_large(j - 1), alpha_large(j));
        EXPECT_GT(alpha_large(j), Q(3, 2));
    }
}

TEST(Amn, ExactExponents) {
    const auto a = amn_coefficient(1u << 16, 1u << 16);
    ASSERT_TRUE(a.exponent_exact.has_value());
    EXPECT_EQ(*a.exponent_exact, 3);
    EXPECT_DOUBLE_EQ(static_cast<double>(a.A), 8.0);
    const auto b = amn_coefficient(1u << 28, 1u << 16);  // m = n^{7/4}
    ASSERT_TRUE(b.exponent_exact.has_value());
    EXPECT_EQ(*b.exponent_exact, Q(5, 2));
    EXPECT_EQ(b.regime, Regime::LargeM);
    EXPECT_THROW(amn_coefficient(1u << 24, 1u << 16), MidrangeError);
    EXPECT_EQ(amn_coefficient(1u << 8, 1u << 16).exponent_exact, std::optional<Rational>(1));  // m = n^{1/2}
}

TEST(DegreePlan, Goldens) {
    // Frozen from the mpmath oracle.
    EXPECT_EQ(degree_plan(1u << 20, 1u << 16).D.exact(), std::optional<Rational>(64));
    const auto big = degree_plan(1ull << 30, 1u << 16);
    EXPECT_EQ(big.regime, Regime::LargeM);
    EXPECT_EQ(big.D.exact(), std::optional<Rational>(4));
    const auto eq = degree_plan(1u << 20, 1u << 20, 2);
    EXPECT_EQ(eq.D.exact(), std::optional<Rational>(32));
    ASSERT_TRUE(eq.E_window.has_value());
    EXPECT_EQ(eq.E_window->lo, PowerProduct::of(2).pow(Q(5, 2)));
    EXPECT_EQ(eq.E_window->hi, PowerProduct::of(2).pow(Q(5, 2)));
    EXPECT_EQ(eq.E_window->lo, PowerProduct::of(1u << 20).pow(Q(1, 8)));
    EXPECT_TRUE(eq.window_nonempty);
    EXPECT_NEAR(static_cast<double>(degree_plan(1000000, 100000).D.approx()), 56.2341325190349080, 1e-9);
}

TEST(DegreePlan, LadderIndexIsMinimal) {
    for (std::uint64_t n : {64u, 4096u}) {
        for (std::uint64_t m = 8; m <= n * n; m *= 2) {
            DegreePlan p;
            try {
                p = degree_plan(m, n);
            } catch (const RangeError&) {
                continue;
            }
            if (!p.j) continue;
            const PowerProduct M = PowerProduct::of(m), N = PowerProduct::of(n);
            const long j = *p.j;
            if (p.regime == Regime::SmallM) {
                EXPECT_LE(compare(M, N.pow(alpha_small(j))), 0);
                if (j > 0) EXPECT_GT(compare(M, N.pow(alpha_small(j - 1))), 0);
            } else {
                EXPECT_GE(compare(M, N.pow(alpha_large(j))), 0);
                if (j > 0) EXPECT_LT(compare(M, N.pow(alpha_large(j - 1))), 0);
            }
        }
    }
}

TEST(DegreePlan, BorderAndRange) {
    const auto border = degree_plan(1u << 24, 1u << 16);
    EXPECT_FALSE(border.j.has_value());
    EXPECT_FALSE(border.E_window.has_value());
    EXPECT_THROW(degree_plan(3, 100), RangeError);
    EXPECT_THROW(degree_plan(10001, 100), RangeError);
    const auto base = degree_plan(100, 100);
    EXPECT_EQ(base.j, std::optional<long>(2));  // 100 <= 100^{alpha_2} = 100
}

TEST(Midrange, GoldenAtPowersOfTwo) {
    // m = 2^24, n = 2^16, s = 2^8, b = 2: j0 = 4, multiplier 2^8.
    const auto mb = midrange_bound(1u << 24, 1u << 16, 1u << 8);
    EXPECT_EQ(mb.j, 4);
    EXPECT_EQ(mb.j0.exact, std::optional<Rational>(4));
    EXPECT_EQ(mb.multiplier.exact, std::optional<Rational>(256));
    const Rational scale = Rational(1 << 24) + Rational(1 << 24) + Rational(1 << 24) + Rational(1 << 16);
    EXPECT_EQ(mb.value.exact, std::optional<Rational>(Rational(256) * scale));
    EXPECT_FALSE(mb.large_variant);
    EXPECT_THROW(midrange_bound(10, 10, 1, 1), InvalidArgument);
}
