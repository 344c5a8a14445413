#include "hamgap/constants.hpp"

#include <bit>
#include <cmath>

#include <boost/math/tools/roots.hpp>

#include "hamgap/errors.hpp"
#include "hamgap/number_theory.hpp"

namespace hamgap {

double entropy(double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("entropy: gamma must lie in (0, 1)");
    return (-gamma * std::log(gamma) - (1.0 - gamma) * std::log1p(-gamma)) / std::log(2.0);
}

double solve_rho0(double tolerance) {
    if (!(tolerance >= 1e-14)) throw DomainError("solve_rho0: tolerance must be at least 1e-14");
    // H is increasing on (0, 1/2], so H(ρ) − 1/2 changes sign exactly once.
    auto f = [](double x) { return entropy(x) - 0.5; };
    auto done = [tolerance](double a, double b) { return std::abs(b - a) < tolerance; };
    std::uintmax_t max_iter = 200;
    const auto [lo, hi] = boost::math::tools::bisect(f, 1e-12, 0.5, done, max_iter);
    return 0.5 * (lo + hi);
}

double theta0() { return 1.0 / (8.0 * std::sqrt(std::exp(1.0))); }

double quarter_sqrt_e() { return 1.0 / (4.0 * std::sqrt(std::exp(1.0))); }

double artin_constant(std::uint64_t prime_limit) {
    if (prime_limit < 2) throw DomainError("artin_constant: prime_limit must be at least 2");
    // Kahan summation of log factors; the tail terms are ~1/q² and tiny.
    double sum = 0.0, comp = 0.0;
    for (u64 q : sieve_primes(prime_limit)) {
        const double qd = static_cast<double>(q);
        const double term = std::log1p(-1.0 / (qd * (qd - 1.0)));
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return std::exp(sum);
}

BoundProfile bound_profile_for_digits(unsigned r) {
    static const double rho0 = solve_rho0();
    BoundProfile b;
    b.r = r;
    b.rho0_bound = rho0 * r;
    b.burgess_bound = 0.25 * r;
    b.theta0_bound = theta0() * r;
    b.quarter_sqrt_e_bound = quarter_sqrt_e() * r;
    b.hilbert_delta_bound = 0.2 * r;
    return b;
}

BoundProfile bound_profile(std::uint64_t p) {
    if (p < 3) throw DomainError("bound_profile: p must be at least 3");
    return bound_profile_for_digits(static_cast<unsigned>(std::bit_width(p)));
}

}  // namespace hamgap
