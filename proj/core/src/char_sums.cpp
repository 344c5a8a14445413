#include "hamgap/char_sums.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "hamgap/cyclotomic.hpp"
#include "hamgap/errors.hpp"
#include "hamgap/hamming.hpp"

namespace hamgap {

std::complex<double> ExactComplexSum::approx() const {
    long double re = 0.0L, im = 0.0L;
    for (u64 k = 0; k < order_; ++k) {
        if (counts_[k] == 0) continue;
        const long double theta = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(k) /
                                  static_cast<long double>(order_);
        re += static_cast<long double>(counts_[k]) * std::cos(theta);
        im += static_cast<long double>(counts_[k]) * std::sin(theta);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

ExactComplexSum::Canonical ExactComplexSum::canonical() const {
    u64 g = order_;
    for (u64 k = 0; k < order_; ++k)
        if (counts_[k] != 0) g = std::gcd(g, k);
    const u64 m = order_ / g;
    std::vector<std::int64_t> coeffs(m, 0);
    for (u64 k = 0; k < order_; k += g) coeffs[k / g] = counts_[k];
    return {m, reduce_mod_cyclotomic(std::move(coeffs), m)};
}

bool ExactComplexSum::is_zero() const {
    const auto c = canonical();
    return std::all_of(c.coeffs.begin(), c.coeffs.end(), [](std::int64_t v) { return v == 0; });
}

std::optional<std::int64_t> ExactComplexSum::as_integer() const {
    const auto c = canonical();
    for (std::size_t i = 1; i < c.coeffs.size(); ++i)
        if (c.coeffs[i] != 0) return std::nullopt;
    return c.coeffs.empty() ? 0 : c.coeffs[0];
}

bool ExactComplexSum::exactly_equals(const ExactComplexSum& other) const {
    ExactComplexSum diff = *this;
    diff -= other;
    return diff.is_zero();
}

ExactComplexSum& ExactComplexSum::operator+=(const ExactComplexSum& other) {
    if (other.order_ != order_) throw DomainError("ExactComplexSum: order mismatch");
    for (u64 k = 0; k < order_; ++k) counts_[k] += other.counts_[k];
    terms_ += other.terms_;
    return *this;
}

ExactComplexSum& ExactComplexSum::operator-=(const ExactComplexSum& other) {
    if (other.order_ != order_) throw DomainError("ExactComplexSum: order mismatch");
    for (u64 k = 0; k < order_; ++k) counts_[k] -= other.counts_[k];
    terms_ += other.terms_;
    return *this;
}

std::string formula_name(BoundFormula f, unsigned nu) {
    switch (f) {
        case BoundFormula::Weil: return "Weil";
        case BoundFormula::PolyaVinogradovBurgess: return fmt::format("PV-Burgess({})", nu);
        case BoundFormula::Hoelder: return fmt::format("Hoelder({})", nu);
        case BoundFormula::ShortLegendre: return "ShortLegendre";
    }
    return "unknown";
}

namespace {

BoundReport make_report(double magnitude, double bound, BoundFormula f, unsigned nu) {
    BoundReport rep;
    rep.magnitude = magnitude;
    rep.bound = bound;
    rep.formula = f;
    rep.nu = nu;
    rep.ratio = bound > 0.0 ? magnitude / bound : 0.0;
    return rep;
}

}  // namespace

ExactComplexSum double_sum_S(const PrimeContext& ctx, u64 n, unsigned k, unsigned l, unsigned m,
                             const Character& chi, LoopOrder order) {
    const auto us = enum_U(n, ctx, k, l);
    const auto vs = enum_V(n, ctx, k, m);
    const unsigned shift = ctx.r() - k + 1;
    const u64 p = ctx.p();
    ExactComplexSum sum(p - 1);
    auto term = [&](u64 u, u64 v) { accumulate(sum, chi, static_cast<std::int64_t>(((u << shift) + v) % p)); };
    if (order == LoopOrder::UOuter) {
        for (u64 u : us)
            for (u64 v : vs) term(u, v);
    } else {
        for (u64 v : vs)
            for (u64 u : us) term(u, v);
    }
    return sum;
}

ExactComplexSum interval_char_sum(const Character& chi, std::int64_t W, u64 Z) {
    if (Z < 1 || Z > chi.p()) throw DomainError(fmt::format("interval_char_sum: Z = {} outside [1, p = {}]", Z, chi.p()));
    ExactComplexSum sum(chi.p() - 1);
    for (u64 i = 1; i <= Z; ++i) accumulate(sum, chi, W + static_cast<std::int64_t>(i));
    return sum;
}

BoundReport interval_sum_report(const Character& chi, std::int64_t W, u64 Z, unsigned nu) {
    if (nu < 1) throw DomainError("interval_sum_report: nu must be at least 1");
    const double magnitude = interval_char_sum(chi, W, Z).magnitude();
    const double v = nu;
    const double bound = std::pow(static_cast<double>(Z), 1.0 - 1.0 / v) *
                         std::pow(static_cast<double>(chi.p()), (v + 1.0) / (4.0 * v * v));
    auto rep = make_report(magnitude, bound, BoundFormula::PolyaVinogradovBurgess, nu);
    if (chi.is_principal()) {
        rep.applicable = false;
        rep.note = "bound inapplicable (principal)";
    }
    return rep;
}

// ---------------------------------------------------------------------------

namespace {

using PolyP = std::vector<u64>;

void trim(PolyP& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

u64 inverse(u64 a, u64 p) { return mod_pow(a, p - 2, p); }

PolyP make_monic(PolyP a, u64 p) {
    trim(a);
    if (a.empty()) return a;
    const u64 inv = inverse(a.back(), p);
    for (auto& c : a) c = mod_mul(c, inv, p);
    return a;
}

// Quotient and remainder of a / b, b nonzero.
std::pair<PolyP, PolyP> divmod(PolyP a, PolyP b, u64 p) {
    trim(a);
    trim(b);
    if (a.size() < b.size()) return {PolyP{}, a};
    const u64 inv = inverse(b.back(), p);
    PolyP q(a.size() - b.size() + 1, 0);
    for (std::size_t i = a.size(); i-- >= b.size();) {
        const u64 c = mod_mul(a[i], inv, p);
        q[i - (b.size() - 1)] = c;
        if (c != 0)
            for (std::size_t j = 0; j < b.size(); ++j) {
                const std::size_t idx = i - (b.size() - 1) + j;
                a[idx] = (a[idx] + p - mod_mul(c, b[j], p)) % p;
            }
        if (i == 0) break;
    }
    trim(a);
    trim(q);
    return {q, a};
}

PolyP gcd(PolyP a, PolyP b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto r = divmod(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a, p);
}

PolyP derivative(const PolyP& a, u64 p) {
    PolyP d;
    for (std::size_t i = 1; i < a.size(); ++i) d.push_back(mod_mul(a[i], i % p, p));
    trim(d);
    return d;
}

std::size_t degree(const PolyP& a) { return a.empty() ? 0 : a.size() - 1; }

PolyP reduce_coeffs(std::span<const std::int64_t> coeffs, u64 p) {
    const auto sp = static_cast<std::int64_t>(p);
    PolyP out;
    for (auto c : coeffs) out.push_back(static_cast<u64>(((c % sp) + sp) % sp));
    trim(out);
    return out;
}

u64 eval(const PolyP& f, u64 x, u64 p) {
    u64 acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = (mod_mul(acc, x, p) + f[i]) % p;
    return acc;
}

}  // namespace

RootStructure root_structure(std::span<const std::int64_t> coeffs, u64 p) {
    PolyP f = reduce_coeffs(coeffs, p);
    if (degree(f) == 0) throw DomainError("root_structure: F is constant mod p");
    if (degree(f) >= p) throw DomainError("root_structure: deg F must be below p");
    f = make_monic(f, p);
    RootStructure rs{0, {}};
    PolyP c = gcd(f, derivative(f, p), p);
    PolyP w = divmod(f, c, p).first;
    for (unsigned i = 1; degree(w) > 0; ++i) {
        PolyP y = gcd(w, c, p);
        PolyP z = divmod(w, y, p).first;
        if (degree(z) > 0) {
            rs.distinct_roots += static_cast<unsigned>(degree(z));
            rs.multiplicities.push_back(i);
        }
        w = y;
        c = divmod(c, y, p).first;
    }
    return rs;
}

PolyCharSum poly_char_sum(const Character& chi, std::span<const std::int64_t> coeffs, std::int64_t M, u64 K,
                          double constant) {
    const u64 p = chi.p();
    if (K < 1 || K >= p) throw DomainError(fmt::format("poly_char_sum: K = {} outside [1, p)", K));
    const PolyP f = reduce_coeffs(coeffs, p);
    if (degree(f) == 0) throw DomainError("poly_char_sum: F is constant");
    const RootStructure roots = root_structure(coeffs, p);
    if (roots.distinct_roots > 8) throw DomainError("poly_char_sum: more than 8 distinct roots");
    ExactComplexSum sum(p - 1);
    const auto sp = static_cast<std::int64_t>(p);
    for (u64 i = 1; i <= K; ++i) {
        const auto u = static_cast<u64>((((M + static_cast<std::int64_t>(i)) % sp) + sp) % sp);
        accumulate(sum, chi, static_cast<std::int64_t>(eval(f, u, p)));
    }
    const double bound = constant * roots.distinct_roots * std::sqrt(static_cast<double>(p)) *
                         std::log(static_cast<double>(p));
    auto rep = make_report(sum.magnitude(), bound, BoundFormula::Weil, 0);
    if (chi.is_principal()) {
        rep.applicable = false;
        rep.note = "bound inapplicable (principal)";
    } else if (std::all_of(roots.multiplicities.begin(), roots.multiplicities.end(),
                           [&](unsigned e) { return e % chi.order() == 0; })) {
        rep.applicable = false;
        rep.note = fmt::format("bound inapplicable (F is a {}-th power)", chi.order());
    }
    return {std::move(sum), roots, rep};
}

// ---------------------------------------------------------------------------

IndicatorEvaluator::IndicatorEvaluator(PrimeContext& ctx) : p_(ctx.p()), phi_pm1_(ctx.phi_pm1()) {
    if (p_ < 3) throw InvalidModulusError("IndicatorEvaluator: p must be odd");
    for (u64 d : divisors(p_ - 1)) {
        const int mu = moebius(d);
        if (mu == 0) continue;
        layers_.push_back({d, mu, euler_phi(d), build_characters(ctx, d)});
    }
}

Rational IndicatorEvaluator::indicator(std::int64_t a) const {
    const auto sp = static_cast<std::int64_t>(p_);
    if (((a % sp) + sp) % sp == 0) throw DomainError("primitive_root_indicator: a is divisible by p");
    Rational total(0);
    for (const auto& layer : layers_) {
        ExactComplexSum inner(p_ - 1);
        for (const auto& chi : layer.chars) accumulate(inner, chi, a);
        const auto value = inner.as_integer();
        if (!value) throw InvariantViolation(fmt::format("indicator: order-{} character sum is not an integer", layer.d));
        total += Rational(layer.mu * *value, static_cast<std::int64_t>(layer.phi_d));
    }
    return Rational(static_cast<std::int64_t>(phi_pm1_), static_cast<std::int64_t>(p_ - 1)) * total;
}

std::int64_t IndicatorEvaluator::count(std::span<const u64> residues) const {
    std::int64_t total = 0;
    for (u64 r : residues) {
        if (r % p_ == 0) continue;
        const Rational v = indicator(static_cast<std::int64_t>(r % p_));
        if (v.denominator() != 1) throw InvariantViolation("indicator: non-integral value");
        total += v.numerator();
    }
    return total;
}

Rational primitive_root_indicator(PrimeContext& ctx, std::int64_t a) { return IndicatorEvaluator(ctx).indicator(a); }

std::int64_t count_primroots_via_characters(PrimeContext& ctx, std::span<const u64> residues) {
    if (residues.empty()) return 0;
    return IndicatorEvaluator(ctx).count(residues);
}

LegendrePartialSum legendre_partial_sum_report(u64 p, u64 N) {
    if (N < 1 || N > p) throw DomainError(fmt::format("legendre_partial_sum: N = {} outside [1, p]", N));
    std::int64_t sum = 0;
    for (u64 n = 1; n <= N; ++n) sum += legendre_symbol(static_cast<std::int64_t>(n), p);
    return {sum, make_report(static_cast<double>(std::llabs(sum)), static_cast<double>(N), BoundFormula::ShortLegendre, 0)};
}

BoundReport hoelder_bound_report(const PrimeContext& ctx, u64 n, unsigned k, unsigned l, unsigned m,
                                 const Character& chi, unsigned nu) {
    if (nu < 1) throw DomainError("hoelder_bound_report: nu must be at least 1");
    const double U = static_cast<double>(enum_U(n, ctx, k, l).size());
    const double V = static_cast<double>(enum_V(n, ctx, k, m).size());
    const double magnitude = double_sum_S(ctx, n, k, l, m, chi).magnitude();
    const double v = nu;
    const double ue = std::pow(U, (2.0 * v - 1.0) / (2.0 * v));
    const double logp = std::log(static_cast<double>(ctx.p()));
    const double bound = ue * std::sqrt(V) * std::pow(2.0, k / (2.0 * v)) +
                         ue * V * std::pow(2.0, ctx.r() / (4.0 * v)) * std::pow(logp, 1.0 / (2.0 * v));
    auto rep = make_report(magnitude, bound, BoundFormula::Hoelder, nu);
    if (chi.is_principal()) {
        rep.applicable = false;
        rep.note = "bound inapplicable (principal)";
    }
    return rep;
}

}  // namespace hamgap
