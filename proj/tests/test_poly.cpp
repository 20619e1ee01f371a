#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace testing_support;

namespace {

UniPoly from_roots(const std::vector<long>& roots, long lead = 1) {
    UniPoly q = UniPoly::constant(lead);
    for (long r : roots) q = q * UniPoly{Q(-r), Q(1)};
    return q;
}

}  // namespace

TEST(UniPoly, BasicArithmetic) {
    const UniPoly a{Q(1), Q(2), Q(3)};  // 3t^2 + 2t + 1
    EXPECT_EQ(a.degree(), 2u);
    EXPECT_EQ(a(Q(2)), 17);
    EXPECT_EQ(a.derivative(), (UniPoly{Q(2), Q(6)}));
    EXPECT_FALSE(UniPoly{}.degree().has_value());
    const auto [q, r] = UniPoly::divmod(from_roots({1, 2, 3}), from_roots({2}));
    EXPECT_EQ(q, from_roots({1, 3}));
    EXPECT_TRUE(r.is_zero());
}

TEST(UniPoly, GcdAndSquareFree) {
    const UniPoly g = UniPoly::gcd(from_roots({1, 1, 2}), from_roots({1, 3}));
    EXPECT_EQ(g.monic(), from_roots({1}));
    EXPECT_EQ(from_roots({4, 4, 4, -1}).square_free().monic(), from_roots({4, -1}));
}

TEST(RealRoots, SmallExamples) {
    EXPECT_EQ(count_real_roots(from_roots({-1, 0, 1})), 3u);
    EXPECT_EQ(count_real_roots(UniPoly{Q(1), Q(0), Q(1)}), 0u);
    EXPECT_EQ(count_real_roots(from_roots({1, 1, -2})), 2u);
    EXPECT_EQ(count_real_roots(UniPoly::constant(5)), 0u);
    EXPECT_THROW(count_real_roots(UniPoly{}), InvalidArgument);
}

// Frozen values from tests/oracles/oracles.py (sympy real_roots).
TEST(RealRoots, OracleValues) {
    EXPECT_EQ(count_real_roots(UniPoly{Q(-6), Q(11), Q(-12), Q(12), Q(-6), Q(1)}), 3u);
    EXPECT_EQ(count_real_roots(UniPoly{Q(1), Q(-3), Q(0), Q(0), Q(0), Q(1)}), 3u);
    EXPECT_EQ(count_real_roots(UniPoly{Q(20), Q(4), Q(-20), Q(-4), Q(5), Q(1)}), 3u);
    EXPECT_EQ(count_real_roots(UniPoly{Q(1), Q(0), Q(0), Q(0), Q(1)}), 0u);
    EXPECT_EQ(count_real_roots(UniPoly{Q(-7), Q(39), Q(-66), Q(20), Q(24)}), 2u);
}

// Sturm counts agree with a brute-force bracket count on polynomials with
// known integer roots (distinct ones counted once) times a root-free factor.
TEST(RealRoots, MatchesBruteForceOnIntegerRoots) {
    Rng rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<long> roots;
        const int k = static_cast<int>(rng.uniform(1, 5));
        for (int i = 0; i < k; ++i) roots.push_back(rng.uniform(-6, 6));
        UniPoly q = from_roots(roots, rng.uniform(1, 4) * (rng.uniform(0, 1) ? 1 : -1));
        if (rng.uniform(0, 1)) q = q * UniPoly{Q(rng.uniform(1, 5)), Q(0), Q(1)};
        std::set<long> distinct(roots.begin(), roots.end());
        // Brute force: sign changes on a fine integer/half-integer grid plus exact zeros.
        std::size_t brute = 0;
        for (long v = -7; v <= 7; ++v) brute += q(Q(v)) == 0;
        EXPECT_EQ(brute, distinct.size());
        EXPECT_EQ(count_real_roots(q), distinct.size());
        const auto iso = isolate_real_roots(q);
        ASSERT_EQ(iso.size(), distinct.size());
        auto it = distinct.begin();
        for (const auto& r : iso) {
            EXPECT_TRUE(r.lo <= *it && *it <= r.hi);
            ++it;
        }
    }
}

TEST(RealRoots, IsolatesIrrationalRoots) {
    const UniPoly q{Q(-2), Q(0), Q(1)};  // t^2 - 2
    const auto iso = isolate_real_roots(q);
    ASSERT_EQ(iso.size(), 2u);
    for (const auto& r : iso) {
        EXPECT_FALSE(r.exact());
        EXPECT_NE(sgn(q(r.lo)), sgn(q(r.hi)));
    }
}

TEST(RealRoots, SamplesAvoidRootsAndSeparateThem) {
    Rng rng(22);
    for (int trial = 0; trial < 150; ++trial) {
        std::vector<long> roots;
        for (int i = 0, k = static_cast<int>(rng.uniform(0, 5)); i < k; ++i) roots.push_back(rng.uniform(-4, 4));
        UniPoly q = from_roots(roots);
        if (rng.uniform(0, 2) == 0) q = q * UniPoly{Q(-3), Q(0), Q(1)};  // sqrt(3) roots
        const auto samples = sample_between_roots(q);
        const auto n = count_real_roots(q);
        ASSERT_EQ(samples.size(), n + 1);
        for (std::size_t i = 0; i < samples.size(); ++i) {
            EXPECT_NE(q(samples[i]), 0);
            if (i > 0) {
                EXPECT_LT(samples[i - 1], samples[i]);
                EXPECT_EQ(SturmSequence(q.square_free()).roots_in(samples[i - 1], samples[i]), 1u);
            }
        }
    }
}

TEST(TriPoly, DegreeAndZeroMarker) {
    EXPECT_FALSE(TriPoly().degree().has_value());
    EXPECT_EQ((X * Y * Z + X).degree(), 3u);
    EXPECT_TRUE((X * X - Y * Z).is_homogeneous());
    EXPECT_EQ(X - X, TriPoly());
}

TEST(TriPoly, EvaluateAndTranslate) {
    const TriPoly f = X * X + Y * Y + Z * Z - C(4);
    EXPECT_EQ(f(P(2, 0, 0)), 0);
    EXPECT_EQ(f(P(1, 1, 1)), -1);
    const TriPoly g = f.translate(P(2, 0, 0));  // f(p + v)
    EXPECT_EQ(g(P(0, 0, 0)), 0);
    EXPECT_EQ(g(P(-2, 0, 0)), f(P(0, 0, 0)));
}

TEST(TriPoly, DivisionByFactor) {
    const TriPoly a = (X - Y) * (X + Z) * (X + Z), b = X + Z;
    const auto [q, r] = a.divmod(b);
    EXPECT_TRUE(r.is_zero());
    EXPECT_EQ(q * b, a);
    EXPECT_FALSE((X * Y - Z).divisible_by(X + Y));
}

TEST(TriPoly, PrimitiveNormalization) {
    const TriPoly f = TriPoly(Q(-1, 2)) * X + TriPoly(Q(1, 3)) * Y;
    const TriPoly p = f.primitive();
    EXPECT_EQ(p.leading_term().second, 3);
    EXPECT_EQ(p, TriPoly(Q(-6)) * f);
}

// Frozen values from tests/oracles/oracles.py (sympy gcd).
TEST(TriPoly, GcdOracleValues) {
    EXPECT_EQ(gcd((X - Y) * (X + Z).pow(2), (X - Y) * (Y + Z) * (X + Z)).primitive(), ((X - Y) * (X + Z)).primitive());
    const TriPoly cone = X * X + Y * Y - Z * Z;
    EXPECT_EQ(gcd(cone * (X + C(1)), cone * (Y - C(2))).primitive(), cone.primitive());
    EXPECT_TRUE(gcd(X * Y - Z, X + Y).is_constant());
}

TEST(TriPoly, RestrictionMatchesPointwiseEvaluation) {
    Rng rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        TriPoly f;
        for (int k = 0; k < 6; ++k)
            f.add_term({unsigned(rng.uniform(0, 2)), unsigned(rng.uniform(0, 2)), unsigned(rng.uniform(0, 2))},
                       Q(rng.uniform(-5, 5)));
        if (f.is_zero()) continue;
        const Point3 b = random_point(rng, 4);
        const Vec3 d = random_dir(rng, 3);
        const UniPoly q = f.restrict(b, d);
        for (long t = -3; t <= 3; ++t) EXPECT_EQ(q(Q(t)), f(b + Q(t) * d));
    }
}
