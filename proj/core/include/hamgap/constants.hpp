#pragma once

#include <cstdint>

namespace hamgap {

/// Binary entropy H(γ) = (−γ log γ − (1−γ) log(1−γ)) / log 2, 0 < γ < 1.
double entropy(double gamma);

/// Root of H(ρ) = 1/2 on (0, 1/2] by bisection, stopping once the bracket is
/// narrower than `tolerance` (≥ 1e-14).
double solve_rho0(double tolerance = 1e-14);

/// 1 / (8 √e).
double theta0();

/// 1 / (4 √e).
double quarter_sqrt_e();

/// Π_{q ≤ prime_limit} (1 − 1/(q(q−1))), accumulated as a compensated sum of
/// log1p terms.
double artin_constant(std::uint64_t prime_limit);

/// Reference values quoted alongside computed ones in reports.
namespace reference {
inline constexpr double rho0 = 0.11002786;
inline constexpr double theta0 = 0.07581633;
inline constexpr double artin = 0.3739558;
inline constexpr double w1_fraction_1e6 = 0.500344;
inline constexpr double W1_fraction_1e6 = 0.373792;
}  // namespace reference

/// Theoretical growth curves at r binary digits, where r counts the digits of
/// p (r = L = bit length, one more than the exponent with 2^r < p ≤ 2^(r+1)).
struct BoundProfile {
    unsigned r = 0;
    double rho0_bound = 0;            // ρ₀·r
    double burgess_bound = 0;         // 0.25·r
    double theta0_bound = 0;          // ϑ₀·r
    double quarter_sqrt_e_bound = 0;  // r/(4√e)
    double hilbert_delta_bound = 0;   // 0.2·r
};

BoundProfile bound_profile_for_digits(unsigned r);
BoundProfile bound_profile(std::uint64_t p);

}  // namespace hamgap
