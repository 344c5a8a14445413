#include "hamgap/hamming.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <deque>
#include <string>

#include <fmt/format.h>

#include "hamgap/errors.hpp"

namespace hamgap {

unsigned hamming_weight(u64 n) { return static_cast<unsigned>(std::popcount(n)); }

unsigned hamming_distance(u64 a, u64 b, unsigned L) {
    if (L < 64 && (a >> L != 0 || b >> L != 0))
        throw DomainError(fmt::format("hamming_distance: operands {} and {} must be below 2^{}", a, b, L));
    return hamming_weight(a ^ b);
}

std::uint64_t binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t c = 1;
    for (unsigned i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

namespace {

// Calls fn(mask) for every `width`-bit mask of popcount `count`, ascending.
template <class Fn>
void for_each_mask(unsigned width, unsigned count, Fn&& fn) {
    if (count > width) return;
    if (count == 0) {
        fn(u64{0});
        return;
    }
    const u64 limit = width >= 64 ? ~u64{0} : (u64{1} << width);
    u64 mask = (count >= 64) ? ~u64{0} : (u64{1} << count) - 1;
    while (mask < limit) {
        fn(mask);
        // Gosper's hack: next larger integer with the same popcount.
        const u64 c = mask & (~mask + 1);
        const u64 rr = mask + c;
        if (rr == 0) break;
        mask = (((rr ^ mask) >> 2) / c) | rr;
    }
}

void check_flip_args(u64 n, const PrimeContext& ctx, unsigned k) {
    if (k < 1 || k > ctx.r())
        throw DomainError(fmt::format("flip set: k = {} outside [1, r = {}]", k, ctx.r()));
    if (n < 1 || n > ctx.p()) throw DomainError(fmt::format("flip set: n = {} outside [1, p = {}]", n, ctx.p()));
}

std::vector<u64> flips_around(u64 base, unsigned width, unsigned distance) {
    std::vector<u64> out;
    for_each_mask(width, distance, [&](u64 mask) {
        const u64 v = base ^ mask;
        if (v != 0) out.push_back(v);
    });
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<u64> enum_U(u64 n, const PrimeContext& ctx, unsigned k, unsigned l) {
    check_flip_args(n, ctx, k);
    if (l > k) throw DomainError(fmt::format("enum_U: l = {} exceeds k = {}", l, k));
    return flips_around(n >> (ctx.r() - k + 1), k, l);
}

std::vector<u64> enum_V(u64 n, const PrimeContext& ctx, unsigned k, unsigned m) {
    check_flip_args(n, ctx, k);
    if (m > ctx.r() - k) throw DomainError(fmt::format("enum_V: m = {} exceeds r - k = {}", m, ctx.r() - k));
    const unsigned width = ctx.r() - k + 1;
    return flips_around(n & ((u64{1} << width) - 1), width, m);
}

FlipSetCount count_U(u64 n, const PrimeContext& ctx, unsigned k, unsigned l) {
    const auto u = enum_U(n, ctx, k, l);
    const u64 top = n >> (ctx.r() - k + 1);
    const bool zero = hamming_weight(top) == l;
    return {u.size(), binomial(k, l), zero};
}

FlipSetCount count_V(u64 n, const PrimeContext& ctx, unsigned k, unsigned m) {
    const auto v = enum_V(n, ctx, k, m);
    const unsigned width = ctx.r() - k + 1;
    const bool zero = hamming_weight(n & ((u64{1} << width) - 1)) == m;
    return {v.size(), binomial(ctx.r() - k, m), zero};
}

std::vector<u64> enum_Q(u64 n, const PrimeContext& ctx, unsigned k, unsigned l, unsigned m) {
    const auto us = enum_U(n, ctx, k, l);
    const auto vs = enum_V(n, ctx, k, m);
    const unsigned shift = ctx.r() - k + 1;
    std::vector<u64> out;
    out.reserve(us.size() * vs.size());
    for (u64 u : us)
        for (u64 v : vs) out.push_back((u << shift) + v);
    return out;
}

std::string variant_id(const DeltaVariant& v) {
    if (v == DeltaVariant::canonical()) return "canonical";
    if (v == DeltaVariant::interval()) return "interval";
    if (v == DeltaVariant::reduced()) return "reduced";
    return fmt::format("custom(n={},target={})", v.n_domain == NDomain::OneToP ? "1..p" : "0..p-1",
                       v.target_rule == TargetRule::Literal ? "literal" : "reduced");
}

DeltaVariant parse_variant(std::string_view name) {
    if (name == "canonical" || name == "domain0") return DeltaVariant::canonical();
    if (name == "interval") return DeltaVariant::interval();
    if (name == "reduced") return DeltaVariant::reduced();
    if (name == "custom(n=1..p,target=reduced)") return {NDomain::OneToP, TargetRule::Reduced};
    throw DomainError(fmt::format("unknown Delta variant '{}'", name));
}

Bitmap domain_bitmap(const PrimeContext& ctx, const DeltaVariant& variant) {
    Bitmap dom(std::size_t{1} << ctx.bit_len());
    const u64 lo = variant.n_domain == NDomain::OneToP ? 1 : 0;
    const u64 hi = variant.n_domain == NDomain::OneToP ? ctx.p() : ctx.p() - 1;
    for (u64 n = lo; n <= hi; ++n) dom.set(n);
    return dom;
}

Bitmap target_bitmap(PrimeContext& ctx, const DeltaVariant& variant) {
    Bitmap targets = primitive_roots(ctx);
    if (variant.target_rule == TargetRule::Reduced) {
        const u64 width = u64{1} << ctx.bit_len();
        for (u64 t = ctx.p(); t < width; ++t)
            if (targets.test(t - ctx.p())) targets.set(t);
    }
    return targets;
}

MinDistance min_distance_to_targets(u64 n, const Bitmap& targets, unsigned L) {
    if (n >= targets.size()) throw DomainError(fmt::format("min_distance: n = {} outside 2^{}", n, L));
    std::array<unsigned, 64> pos{};
    for (unsigned s = 0; s <= L; ++s) {
        // Lexicographic walk over s-subsets of {0, ..., L−1}.
        for (unsigned i = 0; i < s; ++i) pos[i] = i;
        for (;;) {
            u64 mask = 0;
            for (unsigned i = 0; i < s; ++i) mask |= u64{1} << pos[i];
            if (targets.test(n ^ mask)) return {s, n ^ mask};
            int i = static_cast<int>(s) - 1;
            while (i >= 0 && pos[i] == L - s + static_cast<unsigned>(i)) --i;
            if (i < 0) break;
            ++pos[i];
            for (unsigned j = static_cast<unsigned>(i) + 1; j < s; ++j) pos[j] = pos[j - 1] + 1;
        }
    }
    throw InvariantViolation(fmt::format("min_distance: no target reachable from {}", n));
}

MinDistance min_distance_to_primroots(u64 n, PrimeContext& ctx, const DeltaVariant& variant) {
    const u64 lo = variant.n_domain == NDomain::OneToP ? 1 : 0;
    const u64 hi = variant.n_domain == NDomain::OneToP ? ctx.p() : ctx.p() - 1;
    if (n < lo || n > hi) throw DomainError(fmt::format("min_distance: n = {} outside the variant's domain", n));
    return min_distance_to_targets(n, target_bitmap(ctx, variant), ctx.bit_len());
}

std::uint64_t DeltaResult::checksum() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    mix(delta);
    for (auto c : histogram) mix(c);
    return h;
}

Bitmap dilate(const Bitmap& set, unsigned L) {
    static constexpr std::array<u64, 6> kLowMask = {
        0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
        0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL,
    };
    Bitmap out = set;
    auto src = set.words();
    auto dst = out.words();
    const unsigned in_word = std::min(L, 6u);
    for (std::size_t w = 0; w < src.size(); ++w) {
        const u64 x = src[w];
        u64 acc = 0;
        for (unsigned i = 0; i < in_word; ++i) {
            const unsigned shift = 1u << i;
            acc |= ((x & kLowMask[i]) << shift) | ((x >> shift) & kLowMask[i]);
        }
        dst[w] |= acc;
    }
    // Bits 6 and up address whole words: flipping one swaps word blocks.
    for (unsigned i = 6; i < L; ++i) {
        const std::size_t stride = std::size_t{1} << (i - 6);
        for (std::size_t w = 0; w < src.size(); ++w) dst[w] |= src[w ^ stride];
    }
    return out;
}

namespace {

DeltaResult collect(const PrimeContext& ctx, const Bitmap& domain, const std::vector<std::uint8_t>& dist) {
    DeltaResult res;
    for (u64 n : domain.to_vector()) {
        const unsigned d = dist[n];
        if (d == 0xFF) throw InvariantViolation(fmt::format("delta_p: {} unreachable mod {}", n, ctx.p()));
        if (d >= res.histogram.size()) res.histogram.resize(d + 1, 0);
        ++res.histogram[d];
    }
    res.delta = static_cast<unsigned>(res.histogram.size()) - 1;
    for (u64 n : domain.to_vector())
        if (dist[n] == res.delta) res.witnesses.push_back(n % ctx.p());
    std::sort(res.witnesses.begin(), res.witnesses.end());
    res.witnesses.erase(std::unique(res.witnesses.begin(), res.witnesses.end()), res.witnesses.end());
    return res;
}

DeltaResult delta_bfs(const PrimeContext& ctx, const Bitmap& targets, const Bitmap& domain) {
    const unsigned L = ctx.bit_len();
    std::vector<std::uint8_t> dist(targets.size(), 0xFF);
    std::deque<u64> queue;
    for (u64 t : targets.to_vector()) {
        dist[t] = 0;
        queue.push_back(t);
    }
    while (!queue.empty()) {
        const u64 x = queue.front();
        queue.pop_front();
        for (unsigned i = 0; i < L; ++i) {
            const u64 y = x ^ (u64{1} << i);
            if (dist[y] == 0xFF) {
                dist[y] = static_cast<std::uint8_t>(dist[x] + 1);
                queue.push_back(y);
            }
        }
    }
    return collect(ctx, domain, dist);
}

DeltaResult delta_dilation(const PrimeContext& ctx, const Bitmap& targets, const Bitmap& domain) {
    const unsigned L = ctx.bit_len();
    DeltaResult res;
    Bitmap covered = targets;
    Bitmap previous(targets.size());
    std::uint64_t seen = 0;
    for (unsigned s = 0;; ++s) {
        if (s > L) throw InvariantViolation(fmt::format("delta_p: dilation did not cover the domain mod {}", ctx.p()));
        // Domain members first reached at radius s.
        std::uint64_t now = 0;
        auto cw = covered.words();
        auto dw = domain.words();
        for (std::size_t w = 0; w < cw.size(); ++w) now += static_cast<std::uint64_t>(std::popcount(cw[w] & dw[w]));
        res.histogram.push_back(now - seen);
        seen = now;
        if (covered.contains(domain)) {
            res.delta = s;
            auto pw = previous.words();
            for (std::size_t w = 0; w < dw.size(); ++w) {
                u64 fresh = dw[w] & (s == 0 ? ~u64{0} : ~pw[w]);
                while (fresh != 0) {
                    const u64 n = w * 64 + static_cast<u64>(std::countr_zero(fresh));
                    res.witnesses.push_back(n % ctx.p());
                    fresh &= fresh - 1;
                }
            }
            std::sort(res.witnesses.begin(), res.witnesses.end());
            res.witnesses.erase(std::unique(res.witnesses.begin(), res.witnesses.end()), res.witnesses.end());
            return res;
        }
        previous = covered;
        covered = dilate(covered, L);
    }
}

}  // namespace

DeltaResult delta_p(PrimeContext& ctx, const DeltaVariant& variant, DeltaEngine engine) {
    if (ctx.p() == 2 && variant.n_domain == NDomain::OneToP)
        throw CapabilityError("delta_p: p = 2 is excluded for n in [1, p] (L = 1 cannot represent n = 2)");
    const Bitmap targets = target_bitmap(ctx, variant);
    const Bitmap domain = domain_bitmap(ctx, variant);
    return engine == DeltaEngine::Bfs ? delta_bfs(ctx, targets, domain) : delta_dilation(ctx, targets, domain);
}

namespace {

template <class Pred>
WeightWitness min_weight(const PrimeContext& ctx, Pred&& pred) {
    const u64 p = ctx.p();
    for (unsigned s = 1; s <= ctx.bit_len(); ++s) {
        std::optional<u64> hit;
        for_each_mask(ctx.bit_len(), s, [&](u64 v) {
            if (!hit && v < p && pred(v)) hit = v;
        });
        if (hit) return {s, *hit};
    }
    throw InvariantViolation(fmt::format("min_weight: no value qualifies mod {}", p));
}

}  // namespace

WeightWitness min_weight_nonresidue(const PrimeContext& ctx) {
    if (ctx.p() == 2) throw CapabilityError("w_p is undefined for p = 2");
    return min_weight(ctx, [&](u64 v) { return legendre_symbol(static_cast<std::int64_t>(v), ctx.p()) == -1; });
}

WeightWitness min_weight_primitive_root(const PrimeContext& ctx) {
    if (ctx.p() == 2) return {1, 1};
    return min_weight(ctx, [&](u64 v) { return is_primitive_root(v, ctx); });
}

HammingProfile hamming_profile(u64 p, const DeltaVariant& variant, const ComputeSet& compute, DeltaEngine engine) {
    PrimeContext ctx(p);
    HammingProfile prof;
    prof.p = p;
    prof.r = ctx.r();
    prof.variant = variant;
    // Undefined statistics for p = 2 are left empty.
    if (compute.w && p != 2) prof.w = min_weight_nonresidue(ctx);
    if (compute.W) prof.W = min_weight_primitive_root(ctx);
    if (compute.delta && !(p == 2 && variant.n_domain == NDomain::OneToP)) prof.delta = delta_p(ctx, variant, engine);
    if (prof.w && prof.W && prof.w->weight > prof.W->weight)
        throw InvariantViolation(fmt::format("w_p > W_p for p = {}", p));
    // dist(0, g) = weight(g), so W_p ≤ Δ_p whenever 0 is in the domain with literal targets.
    if (prof.W && prof.delta && variant == DeltaVariant::canonical() && prof.W->weight > prof.delta->delta)
        throw InvariantViolation(fmt::format("W_p > Delta_p for p = {}", p));
    return prof;
}

}  // namespace hamgap
