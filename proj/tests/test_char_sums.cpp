#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "hamgap/char_sums.hpp"
#include "hamgap/cyclotomic.hpp"
#include "hamgap/errors.hpp"
#include "hamgap/hamming.hpp"
#include "oracles.hpp"

using namespace hamgap;

namespace {

PrimeContext indexed(u64 p) {
    PrimeContextOptions o;
    o.build_index_table = true;
    return PrimeContext(p, o);
}

std::vector<Character> all_characters(PrimeContext& ctx) {
    std::vector<Character> out;
    for (u64 d : divisors(ctx.p() - 1))
        for (auto& c : build_characters(ctx, d)) out.push_back(c);
    return out;
}

// Σ_{u ∈ U} Σ_{v ∈ V} χ(q) in floating point from a brute discrete-log table.
std::complex<double> brute_double_sum(u64 p, u64 j, const std::vector<u64>& qs) {
    const auto ind = oracle::discrete_logs(p);
    std::complex<double> s = 0;
    for (u64 q : qs) s += oracle::character(p, j, static_cast<long long>(q), ind);
    return s;
}

}  // namespace

TEST(Cyclotomic, SmallPolynomials) {
    EXPECT_EQ(cyclotomic_polynomial(1), (std::vector<std::int64_t>{-1, 1}));
    EXPECT_EQ(cyclotomic_polynomial(2), (std::vector<std::int64_t>{1, 1}));
    EXPECT_EQ(cyclotomic_polynomial(6), (std::vector<std::int64_t>{1, -1, 1}));
    EXPECT_EQ(cyclotomic_polynomial(12), (std::vector<std::int64_t>{1, 0, -1, 0, 1}));
    // Φ_105 is the first with a coefficient of absolute value 2.
    const auto& p105 = cyclotomic_polynomial(105);
    EXPECT_EQ(p105.size(), 49u);
    EXPECT_NE(std::find(p105.begin(), p105.end(), -2), p105.end());
}

TEST(Cyclotomic, GeometricSumReducesToZero) {
    for (u64 n = 2; n < 60; ++n) {
        const auto rem = reduce_mod_cyclotomic(std::vector<std::int64_t>(n, 1), n);
        for (auto c : rem) ASSERT_EQ(c, 0) << n;
    }
}

TEST(ExactSum, ZeroAndIntegerDetection) {
    ExactComplexSum all(12);
    for (u64 k = 0; k < 12; ++k) all.add_root(k);
    EXPECT_TRUE(all.is_zero());
    EXPECT_EQ(all.as_integer(), std::optional<std::int64_t>(0));

    // Sum of primitive d-th roots of unity is μ(d).
    for (u64 d : divisors(36)) {
        ExactComplexSum s(36);
        for (u64 k = 0; k < d; ++k)
            if (std::gcd(k, d) == 1) s.add_root(k * (36 / d));
        EXPECT_EQ(s.as_integer(), std::optional<std::int64_t>(moebius(d))) << d;
    }

    ExactComplexSum i(8);
    i.add_root(2);
    EXPECT_FALSE(i.is_zero());
    EXPECT_EQ(i.as_integer(), std::nullopt);
    ExactComplexSum j(8);
    j.add_root(6, -1);  // ζ^2 = −ζ^6 for ζ of order 8
    EXPECT_TRUE(i.exactly_equals(j));
}

TEST(DoubleSum, SpecExample) {
    auto ctx = indexed(17);
    const Character chi = legendre_character(ctx);
    const auto s = double_sum_S(ctx, 17, 2, 1, 1, chi);
    const long long want = oracle::legendre(27, 17) + oracle::legendre(29, 17);
    EXPECT_EQ(want, -2);
    EXPECT_EQ(s.as_integer(), std::optional<std::int64_t>(want));
    EXPECT_EQ(s.terms(), 2u);
}

TEST(DoubleSum, PrincipalCountsTerms) {
    for (u64 p : {17ull, 101ull, 257ull}) {
        auto ctx = indexed(p);
        const Character chi0 = principal_character(ctx);
        for (u64 n = 1; n <= p; n += 5)
            for (unsigned k = 1; k <= ctx.r(); ++k)
                for (unsigned l = 0; l <= k; ++l)
                    for (unsigned m = 0; m <= ctx.r() - k; ++m) {
                        const auto qs = enum_Q(n, ctx, k, l, m);
                        std::int64_t nonzero = 0;
                        for (u64 q : qs) nonzero += q % p != 0;
                        ASSERT_EQ(double_sum_S(ctx, n, k, l, m, chi0).as_integer(), std::optional<std::int64_t>(nonzero));
                    }
    }
}

TEST(DoubleSum, MatchesFloatingOracleAndTriangleBound) {
    std::mt19937_64 rng(11);
    const auto primes = oracle::primes_upto(300);
    for (int trial = 0; trial < 300; ++trial) {
        const u64 p = primes[2 + rng() % (primes.size() - 2)];
        auto ctx = indexed(p);
        const u64 n = 1 + rng() % p;
        const unsigned k = 1 + static_cast<unsigned>(rng() % ctx.r());
        const unsigned l = static_cast<unsigned>(rng() % (k + 1));
        const unsigned m = static_cast<unsigned>(rng() % (ctx.r() - k + 1));
        const auto chars = all_characters(ctx);
        const Character& chi = chars[rng() % chars.size()];
        const auto s = double_sum_S(ctx, n, k, l, m, chi);
        const auto qs = enum_Q(n, ctx, k, l, m);
        ASSERT_LT(std::abs(s.approx() - brute_double_sum(p, chi.exponent(), qs)), 1e-9);
        ASSERT_LE(s.magnitude(), static_cast<double>(enum_U(n, ctx, k, l).size() * enum_V(n, ctx, k, m).size()) + 1e-9);
    }
}

TEST(DoubleSum, LoopOrdersAgreeExactly) {
    std::mt19937_64 rng(2024);
    const auto primes = oracle::primes_upto(500);
    for (int trial = 0; trial < 1000; ++trial) {
        const u64 p = primes[1 + rng() % (primes.size() - 1)];
        auto ctx = indexed(p);
        const u64 n = 1 + rng() % p;
        const unsigned k = 1 + static_cast<unsigned>(rng() % ctx.r());
        const unsigned l = static_cast<unsigned>(rng() % (k + 1));
        const unsigned m = static_cast<unsigned>(rng() % (ctx.r() - k + 1));
        const auto d = divisors(p - 1);
        const auto chars = build_characters(ctx, d[rng() % d.size()]);
        const Character& chi = chars[rng() % chars.size()];
        const auto a = double_sum_S(ctx, n, k, l, m, chi, LoopOrder::UOuter);
        const auto b = double_sum_S(ctx, n, k, l, m, chi, LoopOrder::VOuter);
        ASSERT_TRUE(a.exactly_equals(b)) << p << " n=" << n;
    }
}

TEST(IntervalSum, Examples) {
    auto c7 = indexed(7);
    EXPECT_EQ(interval_char_sum(legendre_character(c7), 0, 3).as_integer(), std::optional<std::int64_t>(1));
    EXPECT_EQ(interval_char_sum(principal_character(c7), 0, 7).as_integer(), std::optional<std::int64_t>(6));
    EXPECT_THROW(interval_char_sum(legendre_character(c7), 0, 0), DomainError);
    EXPECT_THROW(interval_char_sum(legendre_character(c7), 0, 8), DomainError);
}

TEST(IntervalSum, FullPeriodOrthogonality) {
    for (u64 p : oracle::primes_upto(200)) {
        if (p == 2) continue;
        auto ctx = indexed(p);
        for (const auto& chi : all_characters(ctx)) {
            const auto s = interval_char_sum(chi, static_cast<std::int64_t>(p % 5) - 2, p);
            if (chi.is_principal()) ASSERT_EQ(s.as_integer(), std::optional<std::int64_t>(p - 1));
            else ASSERT_TRUE(s.is_zero()) << p << " j=" << chi.exponent();
        }
    }
}

// Σ_χ χ(a) = p − 1 for a ≡ 1 and 0 otherwise.
TEST(Characters, SecondOrthogonality) {
    for (u64 p : oracle::primes_upto(120)) {
        if (p == 2) continue;
        auto ctx = indexed(p);
        const auto chars = all_characters(ctx);
        for (std::int64_t a = 1; a < static_cast<std::int64_t>(p); ++a) {
            ExactComplexSum s(p - 1);
            for (const auto& chi : chars) accumulate(s, chi, a);
            ASSERT_EQ(s.as_integer(), std::optional<std::int64_t>(a == 1 ? p - 1 : 0));
        }
    }
}

TEST(IntervalSum, ReportRatio) {
    auto ctx = indexed(101);
    const auto rep = interval_sum_report(legendre_character(ctx), 0, 50, 1);
    EXPECT_TRUE(rep.applicable);
    EXPECT_NEAR(rep.bound, std::sqrt(101.0), 1e-9);  // ν = 1: Z^0 · p^(1/2)
    EXPECT_NEAR(rep.ratio, rep.magnitude / rep.bound, 1e-12);
    const auto p0 = interval_sum_report(principal_character(ctx), 0, 50, 1);
    EXPECT_FALSE(p0.applicable);
}

TEST(PolySum, Examples) {
    auto c7 = indexed(7);
    const Character l7 = legendre_character(c7);
    const std::vector<std::int64_t> id{0, 1}, sq{0, 0, 1};
    EXPECT_TRUE(poly_char_sum(l7, id, 0, 6).sum.is_zero());
    const auto s = poly_char_sum(l7, sq, 0, 6);
    EXPECT_EQ(s.sum.as_integer(), std::optional<std::int64_t>(6));
    EXPECT_FALSE(s.report.applicable);  // F is a square

    auto c17 = indexed(17);
    const std::vector<std::int64_t> uu1{0, 1, 1};
    const auto j = poly_char_sum(legendre_character(c17), uu1, 0, 16);
    long long brute = 0;
    for (long long u = 1; u <= 16; ++u) brute += oracle::legendre(u * (u + 1), 17);
    EXPECT_EQ(brute, -1);
    EXPECT_EQ(j.sum.as_integer(), std::optional<std::int64_t>(-1));
    EXPECT_EQ(j.roots.distinct_roots, 2u);
    EXPECT_TRUE(j.report.applicable);

    const std::vector<std::int64_t> constant{3};
    EXPECT_THROW(poly_char_sum(l7, constant, 0, 6), DomainError);
    EXPECT_THROW(poly_char_sum(l7, id, 0, 7), DomainError);
}

TEST(PolySum, RootStructure) {
    // u^2 (u + 1) mod 7: roots 0 (double) and 6.
    const std::vector<std::int64_t> f{0, 0, 1, 1};
    const auto rs = root_structure(f, 7);
    EXPECT_EQ(rs.distinct_roots, 2u);
    // u^2 + 1 mod 7 is irreducible: two conjugate roots over the closure.
    EXPECT_EQ(root_structure(std::vector<std::int64_t>{1, 0, 1}, 7).distinct_roots, 2u);
    // (u + 1)^3 mod 11.
    EXPECT_EQ(root_structure(std::vector<std::int64_t>{1, 3, 3, 1}, 11).distinct_roots, 1u);
}

// Ratios against the Weil-type bound stay well below 2 for random polynomials.
TEST(PolySum, WeilRatioTripwire) {
    std::mt19937_64 rng(99);
    const auto primes = oracle::primes_upto(200);
    double worst = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const u64 p = primes[3 + rng() % (primes.size() - 3)];
        auto ctx = indexed(p);
        const auto d = divisors(p - 1);
        const u64 order = d[1 + rng() % (d.size() - 1)];
        const auto chars = build_characters(ctx, order);
        const Character& chi = chars[rng() % chars.size()];
        std::vector<std::int64_t> f(2 + rng() % 4);
        for (auto& c : f) c = static_cast<std::int64_t>(rng() % p);
        if (f.back() == 0) f.back() = 1;
        const auto M = static_cast<std::int64_t>(rng() % p);
        const u64 K = 1 + rng() % (p - 1);
        const auto res = poly_char_sum(chi, f, M, K);
        const auto ind = oracle::discrete_logs(p);
        std::complex<double> brute = 0;
        for (std::int64_t u = M + 1; u <= M + static_cast<std::int64_t>(K); ++u) {
            long long v = 0;
            for (auto it = f.rbegin(); it != f.rend(); ++it) v = (v * u + *it) % static_cast<long long>(p);
            brute += oracle::character(p, chi.exponent(), v, ind);
        }
        ASSERT_LT(std::abs(res.sum.approx() - brute), 1e-9);
        if (res.report.applicable) worst = std::max(worst, res.report.ratio);
    }
    EXPECT_LE(worst, 2.0);
}

TEST(Indicator, Examples) {
    auto c7 = indexed(7);
    auto c17 = indexed(17);
    EXPECT_EQ(primitive_root_indicator(c7, 3), Rational(1));
    EXPECT_EQ(primitive_root_indicator(c7, 2), Rational(0));
    EXPECT_EQ(primitive_root_indicator(c17, 1), Rational(0));
    EXPECT_THROW(primitive_root_indicator(c17, 34), DomainError);

    std::vector<u64> all(16);
    std::iota(all.begin(), all.end(), u64{1});
    EXPECT_EQ(count_primroots_via_characters(c17, all), 8);
    EXPECT_EQ(count_primroots_via_characters(c17, std::vector<u64>{}), 0);

    const auto q = enum_Q(17, c17, 2, 1, 1);
    std::int64_t direct = 0;
    const auto prs = oracle::primitive_roots(17);
    for (u64 x : q) direct += std::binary_search(prs.begin(), prs.end(), x % 17);
    EXPECT_EQ(direct, 2);
    EXPECT_EQ(count_primroots_via_characters(c17, q), direct);
}

TEST(Indicator, IdentityForSmallPrimes) {
    for (u64 p : oracle::primes_upto(200)) {
        if (p == 2) continue;
        auto ctx = indexed(p);
        IndicatorEvaluator ev(ctx);
        for (u64 a = 1; a < p; ++a)
            ASSERT_EQ(ev.indicator(static_cast<std::int64_t>(a)), Rational(oracle::order(a, p) == p - 1 ? 1 : 0))
                << a << " mod " << p;
    }
}

TEST(LegendrePartial, Examples) {
    for (u64 p : {7ull, 17ull, 101ull}) EXPECT_EQ(legendre_partial_sum_report(p, p).sum, 0);
    const auto s7 = legendre_partial_sum_report(7, 3);
    EXPECT_EQ(s7.sum, 1);
    EXPECT_NEAR(s7.report.ratio, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(legendre_partial_sum_report(17, 1).report.ratio, 1.0, 1e-15);
}

TEST(Hoelder, Reports) {
    auto ctx = indexed(17);
    const auto rep = hoelder_bound_report(ctx, 17, 2, 1, 1, legendre_character(ctx), 1);
    EXPECT_TRUE(rep.applicable);
    EXPECT_TRUE(std::isfinite(rep.ratio));
    EXPECT_NEAR(rep.magnitude, 2.0, 1e-12);
    const auto p0 = hoelder_bound_report(ctx, 17, 2, 1, 1, principal_character(ctx), 1);
    EXPECT_FALSE(p0.applicable);
    EXPECT_NE(p0.note.find("principal"), std::string::npos);
}
