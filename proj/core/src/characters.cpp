#include "hamgap/characters.hpp"

#include <numbers>
#include <numeric>
#include <string>

#include "hamgap/errors.hpp"

namespace hamgap {

Character::Character(u64 p, u64 g, u64 j, std::shared_ptr<const std::vector<std::uint32_t>> index_table)
    : p_(p), g_(g), j_(j % (p - 1)), ind_(std::move(index_table)) {
    if (!ind_) throw DomainError("Character: index table required");
    order_ = (p_ - 1) / std::gcd(j_, p_ - 1);
}

std::optional<u64> Character::index(std::int64_t a) const {
    const auto sp = static_cast<std::int64_t>(p_);
    const auto ar = static_cast<u64>(((a % sp) + sp) % sp);
    if (ar == 0) return std::nullopt;
    return mod_mul(j_, (*ind_)[ar], p_ - 1);
}

std::complex<double> Character::value(std::int64_t a) const {
    const auto k = index(a);
    if (!k) return {0.0, 0.0};
    return root_of_unity(*k, p_ - 1);
}

Character Character::power(u64 k) const { return Character(p_, g_, mod_mul(j_, k, p_ - 1), ind_); }

std::complex<double> root_of_unity(u64 k, u64 n) {
    k %= n;
    // Exact values on the axes keep small sums free of rounding noise.
    if (k == 0) return {1.0, 0.0};
    if (2 * k == n) return {-1.0, 0.0};
    if (4 * k == n) return {0.0, 1.0};
    if (4 * k == 3 * n) return {0.0, -1.0};
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    return std::polar(1.0, theta);
}

std::vector<Character> build_characters(PrimeContext& ctx, u64 d) {
    const u64 n = ctx.p() - 1;
    if (d == 0 || n % d != 0)
        throw DomainError("build_characters: " + std::to_string(d) + " does not divide p - 1 = " + std::to_string(n));
    ctx.ensure_index_table();
    const auto table = ctx.index_table();
    std::vector<Character> out;
    const u64 step = n / d;
    for (u64 t = 0; t < d; ++t) {
        if (std::gcd(t, d) != 1) continue;
        out.emplace_back(ctx.p(), ctx.least_primitive_root(), step * t, table);
    }
    return out;
}

Character principal_character(PrimeContext& ctx) {
    ctx.ensure_index_table();
    return Character(ctx.p(), ctx.least_primitive_root(), 0, ctx.index_table());
}

Character legendre_character(PrimeContext& ctx) {
    if (ctx.p() < 3) throw InvalidModulusError("legendre_character: p must be odd");
    ctx.ensure_index_table();
    return Character(ctx.p(), ctx.least_primitive_root(), (ctx.p() - 1) / 2, ctx.index_table());
}

}  // namespace hamgap
