#pragma once

#include <cstdint>
#include <vector>

namespace hamgap {

/// Coefficients (ascending) of the n-th cyclotomic polynomial. Cached;
/// safe to call concurrently.
const std::vector<std::int64_t>& cyclotomic_polynomial(std::uint64_t n);

/// Remainder of Σ coeffs[k]·x^k modulo Φ_n, of length φ(n). Two integer
/// combinations of n-th roots of unity are equal iff their remainders are.
std::vector<std::int64_t> reduce_mod_cyclotomic(std::vector<std::int64_t> coeffs, std::uint64_t n);

}  // namespace hamgap
