#pragma once

// Exact character sums over F_p and bound-versus-actual diagnostics.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "hamgap/characters.hpp"
#include "hamgap/number_theory.hpp"

namespace hamgap {

using Rational = boost::rational<std::int64_t>;

/// Σ c_k ζ^k over the (p−1)-th roots of unity with integer multiplicities.
class ExactComplexSum {
public:
    explicit ExactComplexSum(u64 order) : order_(order), counts_(order, 0) {}

    u64 order() const { return order_; }
    std::span<const std::int64_t> counts() const { return counts_; }
    /// Number of summands added, zero terms included.
    std::uint64_t terms() const { return terms_; }

    void add_root(u64 index, std::int64_t multiplicity = 1) {
        counts_[index % order_] += multiplicity;
        terms_ += static_cast<std::uint64_t>(multiplicity < 0 ? -multiplicity : multiplicity);
    }
    void add_zero_term() { ++terms_; }

    std::complex<double> approx() const;
    double magnitude() const { return std::abs(approx()); }

    /// Canonical representative: the sum lives in Z[ζ_m] with m | order;
    /// coeffs are its remainder modulo Φ_m.
    struct Canonical {
        u64 root_order;
        std::vector<std::int64_t> coeffs;
    };
    Canonical canonical() const;

    bool is_zero() const;
    /// The exact value when it is a rational integer.
    std::optional<std::int64_t> as_integer() const;
    bool exactly_equals(const ExactComplexSum& other) const;

    ExactComplexSum& operator+=(const ExactComplexSum& other);
    ExactComplexSum& operator-=(const ExactComplexSum& other);

private:
    u64 order_;
    std::vector<std::int64_t> counts_;
    std::uint64_t terms_ = 0;
};

enum class BoundFormula { Weil, PolyaVinogradovBurgess, Hoelder, ShortLegendre };

std::string formula_name(BoundFormula f, unsigned nu = 0);

struct BoundReport {
    double magnitude = 0.0;
    double bound = 0.0;
    BoundFormula formula = BoundFormula::Weil;
    unsigned nu = 0;
    double ratio = 0.0;  // magnitude / bound
    bool applicable = true;
    std::string note;
};

/// χ(a) added to sum (zero term for a ≡ 0).
inline void accumulate(ExactComplexSum& sum, const Character& chi, std::int64_t a) {
    if (auto k = chi.index(a)) sum.add_root(*k);
    else sum.add_zero_term();
}

enum class LoopOrder { UOuter, VOuter };

/// S_n(k, l, m; χ) = Σ_{u ∈ U_{k,l}(n)} Σ_{v ∈ V_{k,m}(n)} χ(u·2^(r−k+1) + v).
ExactComplexSum double_sum_S(const PrimeContext& ctx, u64 n, unsigned k, unsigned l, unsigned m,
                             const Character& chi, LoopOrder order = LoopOrder::UOuter);

/// Σ_{z=W+1}^{W+Z} χ(z). Requires 1 ≤ Z ≤ p.
ExactComplexSum interval_char_sum(const Character& chi, std::int64_t W, u64 Z);

/// Interval sum against Z^(1−1/ν)·p^((ν+1)/(4ν²)) (constant 1, o(1) dropped).
BoundReport interval_sum_report(const Character& chi, std::int64_t W, u64 Z, unsigned nu);

// ---------------------------------------------------------------------------
// Polynomial arguments
// ---------------------------------------------------------------------------

/// Squarefree decomposition data of F ∈ F_p[U] (Yun), deg F < p.
struct RootStructure {
    unsigned distinct_roots;             // over the algebraic closure
    std::vector<unsigned> multiplicities;  // one entry per squarefree layer with roots
};
RootStructure root_structure(std::span<const std::int64_t> coeffs, u64 p);

struct PolyCharSum {
    ExactComplexSum sum;
    RootStructure roots;
    BoundReport report;
};

/// Σ_{u=M+1}^{M+K} χ(F(u)) with F given by ascending coefficients, against
/// c·d·√p·log p. Requires F non-constant mod p, deg F < p, at most 8 distinct
/// roots and 1 ≤ K < p.
PolyCharSum poly_char_sum(const Character& chi, std::span<const std::int64_t> coeffs, std::int64_t M, u64 K,
                          double constant = 1.0);

// ---------------------------------------------------------------------------
// Primitive-root indicator
// ---------------------------------------------------------------------------

/// Evaluates φ(p−1)/(p−1) · Σ_{d|p−1} μ(d)/φ(d) · Σ_{ord χ = d} χ(a) exactly.
/// Inner sums are reduced in Z[ζ] and must come out as integers.
class IndicatorEvaluator {
public:
    explicit IndicatorEvaluator(PrimeContext& ctx);

    /// 1 if a is a primitive root, 0 otherwise, as an exact rational.
    /// Throws DomainError for a ≡ 0.
    Rational indicator(std::int64_t a) const;

    /// Σ of indicators over residues (taken mod p); multiples of p add 0.
    std::int64_t count(std::span<const u64> residues) const;

private:
    struct Layer {
        u64 d;
        int mu;
        u64 phi_d;
        std::vector<Character> chars;
    };
    u64 p_;
    u64 phi_pm1_;
    std::vector<Layer> layers_;
};

Rational primitive_root_indicator(PrimeContext& ctx, std::int64_t a);
std::int64_t count_primroots_via_characters(PrimeContext& ctx, std::span<const u64> residues);

/// Σ_{n≤N} (n/p) with ratio |sum|/N. 1 ≤ N ≤ p, p odd.
struct LegendrePartialSum {
    std::int64_t sum;
    BoundReport report;
};
LegendrePartialSum legendre_partial_sum_report(u64 p, u64 N);

/// |S_n| against
///   U^((2ν−1)/2ν)·V^(1/2)·2^(k/2ν) + U^((2ν−1)/2ν)·V·2^(r/4ν)·(log p)^(1/2ν)
/// with U = #U_{k,l}(n), V = #V_{k,m}(n). Principal χ is flagged inapplicable.
BoundReport hoelder_bound_report(const PrimeContext& ctx, u64 n, unsigned k, unsigned l, unsigned m,
                                 const Character& chi, unsigned nu);

}  // namespace hamgap
