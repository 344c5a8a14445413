#include "hamgap/cyclotomic.hpp"

#include <map>
#include <mutex>

#include "hamgap/errors.hpp"
#include "hamgap/number_theory.hpp"

namespace hamgap {

namespace {

using Poly = std::vector<std::int64_t>;

// Exact quotient of a by the monic polynomial b.
Poly divide_exact(const Poly& a, const Poly& b) {
    Poly rem = a;
    const std::size_t db = b.size() - 1;
    Poly q(a.size() - db, 0);
    for (std::size_t i = a.size(); i-- > db;) {
        const std::int64_t c = rem[i];
        q[i - db] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] -= c * b[j];
    }
    for (std::size_t j = 0; j < db; ++j)
        if (rem[j] != 0) throw InvariantViolation("cyclotomic: inexact division");
    return q;
}

Poly build(std::uint64_t n, std::map<std::uint64_t, Poly>& cache) {
    Poly poly(n + 1, 0);
    poly[0] = -1;
    poly[n] = 1;
    for (std::uint64_t d : divisors(n)) {
        if (d == n) continue;
        auto it = cache.find(d);
        if (it == cache.end()) it = cache.emplace(d, build(d, cache)).first;
        poly = divide_exact(poly, it->second);
    }
    return poly;
}

}  // namespace

const std::vector<std::int64_t>& cyclotomic_polynomial(std::uint64_t n) {
    static std::mutex mutex;
    static std::map<std::uint64_t, Poly> cache;
    if (n == 0) throw DomainError("cyclotomic_polynomial: n must be positive");
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build(n, cache)).first;
    return it->second;
}

std::vector<std::int64_t> reduce_mod_cyclotomic(std::vector<std::int64_t> coeffs, std::uint64_t n) {
    const Poly& phi = cyclotomic_polynomial(n);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t i = coeffs.size(); i-- > deg;) {
        const std::int64_t c = coeffs[i];
        if (c == 0) continue;
        for (std::size_t j = 0; j <= deg; ++j) coeffs[i - deg + j] -= c * phi[j];
    }
    coeffs.resize(deg, 0);
    return coeffs;
}

}  // namespace hamgap
