#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hamgap/bitmap.hpp"
#include "hamgap/number_theory.hpp"

namespace hamgap {

unsigned hamming_weight(u64 n);

/// popcount(a ^ b); both operands must be below 2^L (DomainError otherwise).
unsigned hamming_distance(u64 a, u64 b, unsigned L);

std::uint64_t binomial(unsigned n, unsigned k);

// ---------------------------------------------------------------------------
// Flip sets around n
// ---------------------------------------------------------------------------

/// Positive u < 2^k whose k-bit expansion differs from the k most significant
/// of the L = r+1 bits of n in exactly `l` positions. Ascending.
/// Requires 1 ≤ k ≤ r, l ≤ k and n ∈ [1, p].
std::vector<u64> enum_U(u64 n, const PrimeContext& ctx, unsigned k, unsigned l);

/// Positive v < 2^(r−k+1) at distance exactly m from the r−k+1 low bits of n.
/// Requires 1 ≤ k ≤ r, m ≤ r − k and n ∈ [1, p]. Ascending.
std::vector<u64> enum_V(u64 n, const PrimeContext& ctx, unsigned k, unsigned m);

/// Cardinalities of the flip sets: `exact` counts what enum_* return,
/// `nominal` is the closed form C(k, l) resp. C(r − k, m) quoted for them.
struct FlipSetCount {
    std::uint64_t exact;
    std::uint64_t nominal;
    bool zero_excluded;  // the all-zero pattern was reachable and dropped
};
FlipSetCount count_U(u64 n, const PrimeContext& ctx, unsigned k, unsigned l);
FlipSetCount count_V(u64 n, const PrimeContext& ctx, unsigned k, unsigned m);

/// The set u·2^(r−k+1) + v over enum_U × enum_V (plain integers, not reduced).
std::vector<u64> enum_Q(u64 n, const PrimeContext& ctx, unsigned k, unsigned l, unsigned m);

// ---------------------------------------------------------------------------
// Distance to primitive roots
// ---------------------------------------------------------------------------

enum class NDomain {
    ZeroToPMinus1,  // residue classes by least non-negative representative
    OneToP,
};

enum class TargetRule {
    Literal,  // target integer itself lies in [1, p−1] and is a primitive root
    Reduced,  // any t < 2^L whose residue mod p is a primitive root
};

struct DeltaVariant {
    NDomain n_domain = NDomain::ZeroToPMinus1;
    TargetRule target_rule = TargetRule::Literal;

    static DeltaVariant canonical() { return {}; }
    static DeltaVariant interval() { return {NDomain::OneToP, TargetRule::Literal}; }
    static DeltaVariant reduced() { return {NDomain::ZeroToPMinus1, TargetRule::Reduced}; }

    bool operator==(const DeltaVariant&) const = default;
};

/// Preset name: "canonical", "interval", "reduced", or "custom(...)".
std::string variant_id(const DeltaVariant& v);

/// Accepts the preset names plus "domain0" (alias of canonical).
/// Throws DomainError for anything else.
DeltaVariant parse_variant(std::string_view name);

/// Members of the n-domain as a bitmap of width 2^L.
Bitmap domain_bitmap(const PrimeContext& ctx, const DeltaVariant& variant);

/// Valid targets as a bitmap of width 2^L. Builds the primitive-root cache.
Bitmap target_bitmap(PrimeContext& ctx, const DeltaVariant& variant);

struct MinDistance {
    unsigned distance;
    u64 witness;  // a nearest valid target
};

/// Grows Hamming balls around n (radius 0, 1, ...). Within a radius, flipped
/// position sets are tried in lexicographic order, positions ascending; the
/// first valid target wins. Throws InvariantViolation if none is reachable.
MinDistance min_distance_to_targets(u64 n, const Bitmap& targets, unsigned L);
MinDistance min_distance_to_primroots(u64 n, PrimeContext& ctx, const DeltaVariant& variant);

enum class DeltaEngine { Dilation, Bfs };

struct DeltaResult {
    unsigned delta = 0;
    std::vector<u64> witnesses;             // classes n mod p attaining delta, ascending
    std::vector<std::uint64_t> histogram;   // domain members at distance 0..delta

    /// FNV-1a over the histogram; equal across engines for equal results.
    std::uint64_t checksum() const;

    bool operator==(const DeltaResult&) const = default;
};

/// Δ_p: max over the n-domain of the distance to the nearest valid target.
/// For p = 2 only the 0..p−1 domain is representable (Δ_2 = 1); the
/// [1, p] domain throws CapabilityError.
DeltaResult delta_p(PrimeContext& ctx, const DeltaVariant& variant, DeltaEngine engine = DeltaEngine::Dilation);

/// One dilation round: every set bit spreads to its L single-flip neighbours.
Bitmap dilate(const Bitmap& set, unsigned L);

// ---------------------------------------------------------------------------
// Sparsest non-residue / primitive root
// ---------------------------------------------------------------------------

struct WeightWitness {
    unsigned weight;
    u64 witness;  // smallest value of that weight with the property

    bool operator==(const WeightWitness&) const = default;
};

/// w_p: least Hamming weight of a quadratic non-residue in [1, p−1]. p odd.
WeightWitness min_weight_nonresidue(const PrimeContext& ctx);

/// W_p: least Hamming weight of a primitive root in [1, p−1]; W_2 = 1.
WeightWitness min_weight_primitive_root(const PrimeContext& ctx);

struct ComputeSet {
    bool w = true;
    bool W = true;
    bool delta = true;

    bool operator==(const ComputeSet&) const = default;
};

struct HammingProfile {
    u64 p = 0;
    unsigned r = 0;
    std::optional<WeightWitness> w;
    std::optional<WeightWitness> W;
    std::optional<DeltaResult> delta;
    DeltaVariant variant;
};

/// Computes the requested statistics and checks w ≤ W ≤ Δ where defined
/// (InvariantViolation otherwise).
HammingProfile hamming_profile(u64 p, const DeltaVariant& variant, const ComputeSet& compute,
                               DeltaEngine engine = DeltaEngine::Dilation);

}  // namespace hamgap
