#include "hamgap/number_theory.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <string>

#include "hamgap/errors.hpp"

namespace hamgap {

namespace {

constexpr u64 kTrialDivisionBound = 1'000'000;

// Small primes used by trial division, built once.
const std::vector<u64>& trial_primes() {
    static const std::vector<u64> primes = sieve_primes(kTrialDivisionBound);
    return primes;
}

u64 pollard_brent(u64 n, std::mt19937_64& rng) {
    if (n % 2 == 0) return 2;
    std::uniform_int_distribution<u64> dist(1, n - 1);
    for (;;) {
        u64 y = dist(rng);
        const u64 c = dist(rng);
        const u64 m = 128;
        u64 g = 1, q = 1, x = 0, ys = 0;
        u64 r = 1;
        auto f = [&](u64 v) { return (mod_mul(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mod_mul(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_large(u64 n, std::mt19937_64& rng, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    const u64 d = pollard_brent(n, rng);
    factor_large(d, rng, out);
    factor_large(n / d, rng, out);
}

}  // namespace

std::vector<u64> sieve_primes(u64 limit) {
    if (limit < 2) throw EmptyRangeError("sieve_primes: limit must be at least 2, got " + std::to_string(limit));
    // Odd-only sieve: index i stands for 2i + 1.
    const u64 half = (limit - 1) / 2 + 1;
    std::vector<bool> composite(half, false);
    std::vector<u64> primes{2};
    for (u64 i = 1; i < half; ++i) {
        if (composite[i]) continue;
        const u64 q = 2 * i + 1;
        primes.push_back(q);
        for (u64 j = q * q / 2; j < half; j += q) composite[j] = true;
    }
    return primes;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    const int s = std::countr_zero(d);
    d >>= s;
    // These bases are deterministic for all n < 3.3 * 10^24.
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u64 x = mod_pow(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mod_mul(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<u64> factorize(u64 n) {
    if (n == 0) throw DomainError("factorize: n must be positive");
    std::vector<u64> out;
    for (u64 q : trial_primes()) {
        if (q * q > n) break;
        while (n % q == 0) {
            out.push_back(q);
            n /= q;
        }
    }
    if (n > 1) {
        if (n < kTrialDivisionBound * kTrialDivisionBound) {
            out.push_back(n);  // no factor below 10^6 and n < 10^12: prime
        } else {
            std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
            factor_large(n, rng, out);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<u64> distinct_factors(std::span<const u64> factors) {
    std::vector<u64> out(factors.begin(), factors.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

u64 mod_pow(u64 a, u64 e, u64 p) {
    u64 result = 1 % p;
    a %= p;
    while (e > 0) {
        if (e & 1) result = mod_mul(result, a, p);
        a = mod_mul(a, a, p);
        e >>= 1;
    }
    return result;
}

u64 euler_phi(u64 n, std::span<const u64> factors) {
    u64 phi = n;
    for (u64 q : distinct_factors(factors)) phi = phi / q * (q - 1);
    return phi;
}

u64 euler_phi(u64 n) { return euler_phi(n, factorize(n)); }

int moebius(u64 n) {
    const auto f = factorize(n);
    if (std::adjacent_find(f.begin(), f.end()) != f.end()) return 0;
    return f.size() % 2 == 0 ? 1 : -1;
}

std::vector<u64> divisors(u64 n) {
    std::vector<u64> out{1};
    const auto f = factorize(n);
    for (std::size_t i = 0; i < f.size();) {
        std::size_t j = i;
        while (j < f.size() && f[j] == f[i]) ++j;
        const std::size_t base = out.size();
        u64 pw = 1;
        for (std::size_t e = i; e < j; ++e) {
            pw *= f[i];
            for (std::size_t t = 0; t < base; ++t) out.push_back(out[t] * pw);
        }
        i = j;
    }
    std::sort(out.begin(), out.end());
    return out;
}

int legendre_symbol(std::int64_t a, u64 p) {
    if (p < 3 || p % 2 == 0) throw InvalidModulusError("legendre_symbol: modulus must be an odd prime, got " + std::to_string(p));
    const auto sp = static_cast<std::int64_t>(p);
    const u64 ar = static_cast<u64>(((a % sp) + sp) % sp);
    if (ar == 0) return 0;
    return mod_pow(ar, (p - 1) / 2, p) == 1 ? 1 : -1;
}

u64 multiplicative_order(u64 a, u64 p, std::span<const u64> factors_pm1) {
    a %= p;
    if (a == 0) throw DomainError("multiplicative_order: a is divisible by p");
    u64 t = p - 1;
    for (u64 q : distinct_factors(factors_pm1)) {
        while (t % q == 0 && mod_pow(a, t / q, p) == 1) t /= q;
    }
    return t;
}

PrimeContext::PrimeContext(u64 p, PrimeContextOptions options) : p_(p), options_(options) {
    if (!is_prime(p)) throw InvalidModulusError("PrimeContext: " + std::to_string(p) + " is not prime");
    if (p >= (u64{1} << 62)) throw CapabilityError("PrimeContext: p must be below 2^62");
    // 2^r < p <= 2^(r+1)
    r_ = static_cast<unsigned>(std::bit_width(p - 1)) - 1;
    factors_pm1_ = factorize(p - 1);
    distinct_pm1_ = distinct_factors(factors_pm1_);
    phi_pm1_ = euler_phi(p - 1, factors_pm1_);
    g_ = 1;
    if (p > 2) {
        for (u64 a = 2;; ++a) {
            bool primitive = true;
            for (u64 q : distinct_pm1_) {
                if (mod_pow(a, (p - 1) / q, p) == 1) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) {
                g_ = a;
                break;
            }
        }
    }
    if (options_.build_primitive_root_bitmap) ensure_primitive_root_bitmap();
    if (options_.build_index_table) ensure_index_table();
}

const Bitmap& PrimeContext::ensure_primitive_root_bitmap() {
    if (!pr_bitmap_)
        pr_bitmap_ = std::make_shared<const Bitmap>(compute_primitive_root_bitmap(p_, bit_len(), g_, distinct_pm1_));
    return *pr_bitmap_;
}

const std::vector<std::uint32_t>& PrimeContext::ensure_index_table() {
    if (!index_table_) {
        if (p_ > options_.index_table_cap)
            throw CapabilityError("index table requested for p = " + std::to_string(p_) + " above cap " +
                                  std::to_string(options_.index_table_cap));
        std::vector<std::uint32_t> ind(p_, 0);
        u64 x = 1;
        for (u64 j = 0; j + 1 < p_; ++j) {
            ind[x] = static_cast<std::uint32_t>(j);
            x = mod_mul(x, g_, p_);
        }
        index_table_ = std::make_shared<const std::vector<std::uint32_t>>(std::move(ind));
    }
    return *index_table_;
}

Bitmap compute_primitive_root_bitmap(u64 p, unsigned bit_len, u64 g, std::span<const u64> distinct_pm1) {
    // Keeps x * g below 2^64 and the bitmap within memory.
    if (bit_len > 32) throw CapabilityError("primitive-root bitmap requires p < 2^32");
    Bitmap bm(std::size_t{1} << bit_len);
    if (p == 2) {
        bm.set(1);
        return bm;
    }
    const u64 n = p - 1;
    // Exponents j coprime to p − 1 give exactly the primitive roots g^j.
    std::vector<bool> shares_factor(n, false);
    for (u64 q : distinct_pm1)
        for (u64 j = 0; j < n; j += q) shares_factor[j] = true;
    u64 x = 1;
    for (u64 j = 0; j < n; ++j) {
        if (!shares_factor[j]) bm.set(x);
        x = x * g % p;
    }
    return bm;
}

bool is_primitive_root(u64 a, const PrimeContext& ctx) {
    const u64 p = ctx.p();
    if (p == 2) return a % 2 == 1;
    a %= p;
    if (a == 0) return false;
    if (const Bitmap* bm = ctx.primitive_root_bitmap()) return bm->test(a);
    for (u64 q : ctx.distinct_factors_pm1())
        if (mod_pow(a, (p - 1) / q, p) == 1) return false;
    return true;
}

const Bitmap& primitive_roots(PrimeContext& ctx) { return ctx.ensure_primitive_root_bitmap(); }

u64 least_primitive_root(const PrimeContext& ctx) { return ctx.least_primitive_root(); }

}  // namespace hamgap
