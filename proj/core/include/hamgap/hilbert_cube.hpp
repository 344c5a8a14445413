#pragma once

// Hilbert cubes H(a0; a1..ad) = { a0 + Σ θ_i a_i : θ ∈ {0,1}^d } over F_p.
//
// Generators are required to be nonzero and pairwise distinct mod p. A zero
// generator would add a dimension without changing the element set, so all
// dimensions reported here are under the nonzero-generator convention.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hamgap/bitmap.hpp"
#include "hamgap/number_theory.hpp"

namespace hamgap {

struct HilbertCube {
    u64 a0 = 0;
    std::vector<u64> gens;

    std::size_t dimension() const { return gens.size(); }
    bool operator==(const HilbertCube&) const = default;
};

/// "(a0;[a1,a2,...])"
std::string to_string(const HilbertCube& cube);

/// Throws DomainError on a zero or repeated generator (mod p).
void validate(const HilbertCube& cube, u64 p);

inline constexpr std::size_t kMaxCubeDimension = 30;

/// Element set as a bitmap over [0, p). Throws CapabilityError above
/// kMaxCubeDimension.
Bitmap cube_element_bitmap(const HilbertCube& cube, u64 p);

/// Sorted distinct residues of the cube.
std::vector<u64> cube_elements(const HilbertCube& cube, u64 p);

enum class CubePredicate { NonResidue, PrimitiveRoot };

/// How 0 (neither residue nor non-residue) is treated by containment.
/// Neutral: a cube is "inside" the set when no element is a unit outside it,
/// so 0 may occur, exactly as it may in an avoiding cube. Multiplying by a
/// fixed non-residue then maps cubes avoiding non-residues onto cubes inside
/// them, giving f̄ = f. Excluded: every element must itself lie in the set.
enum class ZeroRule { Neutral, Excluded };

std::string zero_rule_name(ZeroRule rule);

/// Residues in [0, p) satisfying the predicate (0 is neither).
Bitmap predicate_set(PrimeContext& ctx, CubePredicate pred);

bool cube_avoids(const HilbertCube& cube, PrimeContext& ctx, CubePredicate pred);
bool cube_contained(const HilbertCube& cube, PrimeContext& ctx, CubePredicate pred,
                    ZeroRule zero = ZeroRule::Neutral);

enum class SearchMode { Exhaustive, Heuristic };

struct CubeSearchOptions {
    u64 exhaustive_max_p = 60;
    std::uint64_t node_budget = 2'000'000'000ULL;
    std::uint64_t seed = 20130917;
    unsigned restarts = 200;
    unsigned tasks = 1;
};

struct CubeSearchResult {
    std::size_t dimension = 0;
    HilbertCube witness;
    bool exact = false;  // false: heuristic lower bound
    std::uint64_t nodes = 0;
};

/// Thrown when the exhaustive search runs out of budget; carries the best
/// cube found so far.
class SearchBudgetExceeded : public std::runtime_error {
public:
    SearchBudgetExceeded(const std::string& what, CubeSearchResult partial)
        : std::runtime_error(what), partial_(std::move(partial)) {}
    const CubeSearchResult& partial() const { return partial_; }

private:
    CubeSearchResult partial_;
};

/// Largest d such that some cube avoids the predicate set (f(p) for
/// NonResidue, F(p) for PrimitiveRoot). Exhaustive mode returns the
/// lexicographically least witness among maximal cubes (a0 first, then the
/// ascending generator list).
CubeSearchResult max_avoiding_dimension(PrimeContext& ctx, CubePredicate pred, SearchMode mode,
                                        const CubeSearchOptions& options = {});

/// Largest d such that some cube lies inside the predicate set (f̄, F̄).
CubeSearchResult max_contained_dimension(PrimeContext& ctx, CubePredicate pred, SearchMode mode,
                                         const CubeSearchOptions& options = {}, ZeroRule zero = ZeroRule::Neutral);

struct ArithmeticProgression {
    u64 length;
    u64 step;    // a
    u64 offset;  // b: terms are a·n + b, n = 1..length
};

/// Longest {a·n + b : n = 1..L} inside the cube, a ≠ 0; ties go to the
/// smallest a, then the smallest first term. L is capped at p.
ArithmeticProgression longest_ap_in_cube(const HilbertCube& cube, u64 p);

/// The D for which the additive-combinatorics AP guarantee applies to a cube
/// of dimension d mod p (largest admissible D with d ≥ 8(p/log p)^(1/D)),
/// together with the guaranteed length 2^−10 (d/log p)^(1+1/(D−1)).
struct ApGuarantee {
    unsigned D;
    double guaranteed_length;
};
std::optional<ApGuarantee> ap_guarantee(u64 p, std::size_t d);

/// (0; [1, ..., d]).
HilbertCube small_elements_cube(std::size_t d);

struct CubeCensus {
    u64 p = 0;
    ZeroRule zero_rule = ZeroRule::Neutral;
    CubeSearchResult f, F, f_bar, F_bar;

    bool chain_ok() const {
        return F_bar.dimension <= f_bar.dimension && f_bar.dimension == f.dimension && f.dimension <= F.dimension;
    }
    /// f(p) < 12 p^(1/4)
    bool hs_bound_ok() const;
};

CubeCensus cube_census(u64 p, SearchMode mode, const CubeSearchOptions& options = {},
                       ZeroRule zero = ZeroRule::Neutral);

}  // namespace hamgap
