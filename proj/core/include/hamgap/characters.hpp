#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "hamgap/number_theory.hpp"

namespace hamgap {

/// Multiplicative character χ_j mod p: χ_j(g^i) = ζ^(j·i) with ζ = e^(2πi/(p−1))
/// and g the least primitive root; χ(0) = 0.
///
/// Values are kept exact as exponents of ζ ("root indices" in [0, p−2]).
class Character {
public:
    Character(u64 p, u64 g, u64 j, std::shared_ptr<const std::vector<std::uint32_t>> index_table);

    u64 p() const { return p_; }
    u64 generator() const { return g_; }
    u64 exponent() const { return j_; }
    /// Multiplicative order d = (p−1)/gcd(j, p−1).
    u64 order() const { return order_; }
    bool is_principal() const { return j_ == 0; }

    /// Root index of χ(a), or nullopt when a ≡ 0 (mod p).
    std::optional<u64> index(std::int64_t a) const;

    /// Floating-point value; 0 for a ≡ 0.
    std::complex<double> value(std::int64_t a) const;

    /// χ^k.
    Character power(u64 k) const;

private:
    u64 p_;
    u64 g_;
    u64 j_;
    u64 order_;
    std::shared_ptr<const std::vector<std::uint32_t>> ind_;
};

/// e^(2πi·k/n).
std::complex<double> root_of_unity(u64 k, u64 n);

/// All φ(d) characters of exact order d, by increasing exponent j.
/// Builds the index table of ctx on demand. Throws DomainError if d ∤ p−1
/// and CapabilityError above the context's index-table cap.
std::vector<Character> build_characters(PrimeContext& ctx, u64 d);

Character principal_character(PrimeContext& ctx);

/// The quadratic character; agrees with legendre_symbol pointwise.
Character legendre_character(PrimeContext& ctx);

}  // namespace hamgap
