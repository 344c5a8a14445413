#include <gtest/gtest.h>

#include <cmath>

#include "hamgap/constants.hpp"
#include "hamgap/errors.hpp"

using namespace hamgap;

TEST(Entropy, Values) {
    EXPECT_DOUBLE_EQ(entropy(0.5), 1.0);
    EXPECT_NEAR(entropy(0.3), entropy(0.7), 1e-15);
    EXPECT_NEAR(entropy(0.11002786), 0.5, 1e-6);
    EXPECT_THROW(entropy(0.0), DomainError);
    EXPECT_THROW(entropy(1.0), DomainError);
    double prev = 0;
    for (int i = 1; i <= 10000; ++i) {
        const double h = entropy(0.5 * i / 10000.0);
        ASSERT_GT(h, prev);
        prev = h;
    }
}

TEST(Rho0, Solver) {
    const double r = solve_rho0(1e-10);
    EXPECT_GT(r, 0.110027);
    EXPECT_LT(r, 0.110028);
    EXPECT_NEAR(solve_rho0(), 0.11002786, 1e-8);
    EXPECT_NEAR(entropy(solve_rho0()), 0.5, 1e-12);
    EXPECT_NEAR(solve_rho0(1e-12), solve_rho0(1e-14), 1e-10);
    EXPECT_NEAR(solve_rho0(1e-10), solve_rho0(1e-14), 1e-10);
    EXPECT_THROW(solve_rho0(1e-15), DomainError);
}

TEST(Theta0, Value) {
    EXPECT_NEAR(theta0(), 0.07581633, 1e-8);
    EXPECT_NEAR(2 * theta0(), quarter_sqrt_e(), 1e-16);
    EXPECT_NEAR(8 * std::sqrt(std::exp(1.0)) * theta0(), 1.0, 1e-12);
}

TEST(Artin, PartialProducts) {
    EXPECT_DOUBLE_EQ(artin_constant(2), 0.5);
    EXPECT_NEAR(artin_constant(1'000'000), 0.3739558, 1e-7);
    double prev = 1.0;
    for (std::uint64_t lim : {2u, 3u, 10u, 100u, 1000u, 10000u, 100000u}) {
        const double a = artin_constant(lim);
        EXPECT_LE(a, prev);
        prev = a;
    }
    // The tail beyond 10^4 is about 1e−5 in log terms.
    const double diff = artin_constant(10'000) - artin_constant(1'000'000);
    EXPECT_GT(diff, 0.0);
    EXPECT_LT(diff, 1e-4);
    RecordProperty("artin_1e4_minus_1e6", std::to_string(diff));
}

TEST(BoundProfile, Values) {
    const auto b = bound_profile_for_digits(22);
    EXPECT_NEAR(b.rho0_bound, 22 * solve_rho0(), 1e-12);
    EXPECT_NEAR(b.rho0_bound, 2.4206, 1e-4);
    EXPECT_DOUBLE_EQ(b.burgess_bound, 5.5);
    for (unsigned r = 1; r < 64; ++r) {
        const auto x = bound_profile_for_digits(r);
        EXPECT_LT(x.rho0_bound, x.hilbert_delta_bound);
        EXPECT_LT(x.hilbert_delta_bound, x.burgess_bound);
        EXPECT_LT(x.theta0_bound, x.quarter_sqrt_e_bound);
    }
    EXPECT_EQ(bound_profile(17).r, 5u);
    EXPECT_EQ(bound_profile(2999999).r, 22u);
}
