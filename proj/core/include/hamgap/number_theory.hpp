#pragma once

// Modular arithmetic over word-sized primes: sieving, factorization,
// Euler's criterion, multiplicative orders and primitive roots.

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "hamgap/bitmap.hpp"

namespace hamgap {

using u64 = std::uint64_t;
__extension__ typedef unsigned __int128 u128;

/// Primes in [2, limit], ascending. Throws EmptyRangeError for limit < 2.
std::vector<u64> sieve_primes(u64 limit);

/// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(u64 n);

/// Prime factors of n with multiplicity, ascending. factorize(1) is empty.
///
/// Trial division up to 10^6, then Pollard-rho (Brent) with a fixed seed, so
/// the result is deterministic. Supports n < 2^63.
std::vector<u64> factorize(u64 n);

/// Distinct primes of a sorted factor multiset.
std::vector<u64> distinct_factors(std::span<const u64> factors);

inline u64 mod_mul(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

/// a^e mod p by square-and-multiply with 128-bit intermediates.
u64 mod_pow(u64 a, u64 e, u64 p);

/// Euler phi from a sorted factor multiset of n.
u64 euler_phi(u64 n, std::span<const u64> factors);
u64 euler_phi(u64 n);

/// Möbius function; 0 when n has a square factor.
int moebius(u64 n);

/// All positive divisors of n, ascending.
std::vector<u64> divisors(u64 n);

/// Legendre symbol (a/p) via Euler's criterion. p must be an odd prime
/// (only parity and p > 1 are checked); throws InvalidModulusError otherwise.
int legendre_symbol(std::int64_t a, u64 p);

/// Least t ≥ 1 with a^t ≡ 1 (mod p). factors_pm1 is factorize(p − 1).
/// Throws DomainError when a ≡ 0.
u64 multiplicative_order(u64 a, u64 p, std::span<const u64> factors_pm1);

struct PrimeContextOptions {
    bool build_primitive_root_bitmap = false;
    bool build_index_table = false;
    // Index tables (discrete logs) are only built below this bound.
    u64 index_table_cap = 100'000;
};

/// A prime modulus with its bit parameters and cached lookup structures.
///
/// r is the exponent with 2^r < p ≤ 2^(r+1); expansions use L = r + 1 bits.
/// Caches are built on request through the non-const ensure_* members and
/// are immutable afterwards, so a fully built context is safe to share
/// between threads. Copies share the caches.
class PrimeContext {
public:
    explicit PrimeContext(u64 p, PrimeContextOptions options = {});

    u64 p() const { return p_; }
    unsigned r() const { return r_; }
    unsigned bit_len() const { return r_ + 1; }
    const std::vector<u64>& factors_pm1() const { return factors_pm1_; }
    const std::vector<u64>& distinct_factors_pm1() const { return distinct_pm1_; }
    u64 phi_pm1() const { return phi_pm1_; }
    const PrimeContextOptions& options() const { return options_; }

    /// Least primitive root g(p); g(2) = 1.
    u64 least_primitive_root() const { return g_; }

    /// Bitmap of width 2^L with bit a set iff a ∈ [1, p−1] is a primitive root.
    const Bitmap& ensure_primitive_root_bitmap();
    const Bitmap* primitive_root_bitmap() const { return pr_bitmap_.get(); }

    /// ind[a] with g^ind[a] ≡ a, for a ∈ [1, p−1]; ind[0] is unused.
    /// Throws CapabilityError when p exceeds options().index_table_cap.
    const std::vector<std::uint32_t>& ensure_index_table();
    std::shared_ptr<const std::vector<std::uint32_t>> index_table() const { return index_table_; }

private:
    u64 p_;
    unsigned r_;
    PrimeContextOptions options_;
    std::vector<u64> factors_pm1_;
    std::vector<u64> distinct_pm1_;
    u64 phi_pm1_;
    u64 g_;
    std::shared_ptr<const Bitmap> pr_bitmap_;
    std::shared_ptr<const std::vector<std::uint32_t>> index_table_;
};

/// True iff a has order p − 1; a = 0 is never a primitive root. For p = 2
/// the only primitive root is 1.
bool is_primitive_root(u64 a, const PrimeContext& ctx);

/// Primitive-root bitmap of width 2^L, cached into ctx.
const Bitmap& primitive_roots(PrimeContext& ctx);

/// Computes the primitive-root bitmap without touching any cache. Powers of
/// the least primitive root with exponent coprime to p − 1.
Bitmap compute_primitive_root_bitmap(u64 p, unsigned bit_len, u64 g, std::span<const u64> distinct_pm1);

u64 least_primitive_root(const PrimeContext& ctx);

}  // namespace hamgap
