#include "hamgap/hilbert_cube.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "hamgap/errors.hpp"

namespace hamgap {

std::string to_string(const HilbertCube& cube) { return fmt::format("({};[{}])", cube.a0, fmt::join(cube.gens, ",")); }

void validate(const HilbertCube& cube, u64 p) {
    std::vector<u64> seen;
    for (u64 g : cube.gens) {
        const u64 r = g % p;
        if (r == 0) throw DomainError(fmt::format("cube {}: zero generator mod {}", to_string(cube), p));
        if (std::find(seen.begin(), seen.end(), r) != seen.end())
            throw DomainError(fmt::format("cube {}: repeated generator mod {}", to_string(cube), p));
        seen.push_back(r);
    }
}

Bitmap cube_element_bitmap(const HilbertCube& cube, u64 p) {
    if (cube.dimension() > kMaxCubeDimension)
        throw CapabilityError(fmt::format("cube dimension {} exceeds the enumeration cap {}", cube.dimension(), kMaxCubeDimension));
    Bitmap in(p);
    std::vector<u64> elems{cube.a0 % p};
    in.set(elems[0]);
    for (u64 g : cube.gens) {
        const std::size_t n = elems.size();
        for (std::size_t i = 0; i < n; ++i) {
            const u64 x = (elems[i] + g % p) % p;
            if (!in.test(x)) {
                in.set(x);
                elems.push_back(x);
            }
        }
    }
    return in;
}

std::vector<u64> cube_elements(const HilbertCube& cube, u64 p) { return cube_element_bitmap(cube, p).to_vector(); }

Bitmap predicate_set(PrimeContext& ctx, CubePredicate pred) {
    const u64 p = ctx.p();
    Bitmap out(p);
    if (pred == CubePredicate::PrimitiveRoot) {
        const Bitmap& pr = primitive_roots(ctx);
        for (u64 a = 1; a < p; ++a)
            if (pr.test(a)) out.set(a);
    } else if (p > 2) {
        for (u64 a = 1; a < p; ++a)
            if (legendre_symbol(static_cast<std::int64_t>(a), p) == -1) out.set(a);
    }
    return out;
}

bool cube_avoids(const HilbertCube& cube, PrimeContext& ctx, CubePredicate pred) {
    const Bitmap elems = cube_element_bitmap(cube, ctx.p());
    const Bitmap target = predicate_set(ctx, pred);
    auto e = elems.words();
    auto t = target.words();
    for (std::size_t i = 0; i < e.size(); ++i)
        if ((e[i] & t[i]) != 0) return false;
    return true;
}

std::string zero_rule_name(ZeroRule rule) { return rule == ZeroRule::Neutral ? "neutral" : "excluded"; }

bool cube_contained(const HilbertCube& cube, PrimeContext& ctx, CubePredicate pred, ZeroRule zero) {
    Bitmap allowed = predicate_set(ctx, pred);
    if (zero == ZeroRule::Neutral) allowed.set(0);
    return allowed.contains(cube_element_bitmap(cube, ctx.p()));
}

namespace {

bool lex_less(const HilbertCube& a, const HilbertCube& b) {
    if (a.a0 != b.a0) return a.a0 < b.a0;
    return a.gens < b.gens;
}

// Exhaustive DFS over a0 and ascending generator lists, with element sets
// held in one 64-bit word (p ≤ 64).
class ExhaustiveSearch {
public:
    ExhaustiveSearch(u64 p, u64 forbidden, std::uint64_t budget, std::atomic<std::uint64_t>& nodes)
        : p_(p), full_((p == 64) ? ~u64{0} : (u64{1} << p) - 1), forbidden_(forbidden), budget_(budget), nodes_(nodes) {}

    void run_a0(u64 a0) {
        if ((forbidden_ >> a0) & 1) return;
        gens_.clear();
        a0_ = a0;
        if (!found_) record();
        dfs(u64{1} << a0, 0);
    }

    bool found() const { return found_; }
    const CubeSearchResult& best() const { return best_; }
    bool exhausted() const { return exhausted_; }

private:
    u64 rotate(u64 set, u64 g) const { return ((set << g) | (set >> (p_ - g))) & full_; }

    void record() {
        found_ = true;
        best_.dimension = gens_.size();
        best_.witness = HilbertCube{a0_, gens_};
    }

    void dfs(u64 set, u64 last) {
        if (exhausted_) return;
        if (nodes_.fetch_add(1, std::memory_order_relaxed) >= budget_) {
            exhausted_ = true;
            return;
        }
        for (u64 g = last + 1; g < p_; ++g) {
            // Even taking every remaining generator cannot beat the best.
            if (gens_.size() + (p_ - g) <= best_.dimension) return;
            const u64 next = set | rotate(set, g);
            if ((next & forbidden_) != 0) continue;
            gens_.push_back(g);
            if (gens_.size() > best_.dimension) record();
            dfs(next, g);
            gens_.pop_back();
            if (exhausted_) return;
        }
    }

    u64 p_;
    u64 full_;
    u64 forbidden_;
    std::uint64_t budget_;
    std::atomic<std::uint64_t>& nodes_;
    u64 a0_ = 0;
    std::vector<u64> gens_;
    CubeSearchResult best_;
    bool found_ = false;
    bool exhausted_ = false;
};

CubeSearchResult exhaustive(PrimeContext& ctx, const Bitmap& allowed, const CubeSearchOptions& options) {
    const u64 p = ctx.p();
    if (p > options.exhaustive_max_p || p > 64)
        throw CapabilityError(fmt::format("exhaustive cube search limited to p <= {}", std::min<u64>(options.exhaustive_max_p, 64)));
    u64 forbidden = 0;
    for (u64 a = 0; a < p; ++a)
        if (!allowed.test(a)) forbidden |= u64{1} << a;

    std::atomic<std::uint64_t> nodes{0};
    const unsigned tasks = std::max(1u, std::min<unsigned>(options.tasks, static_cast<unsigned>(p)));
    std::vector<ExhaustiveSearch> searches;
    for (unsigned t = 0; t < tasks; ++t) searches.emplace_back(p, forbidden, options.node_budget, nodes);
    auto work = [&](unsigned t) {
        for (u64 a0 = t; a0 < p; a0 += tasks) searches[t].run_a0(a0);
    };
    if (tasks == 1) {
        work(0);
    } else {
        std::vector<std::jthread> threads;
        for (unsigned t = 0; t < tasks; ++t) threads.emplace_back(work, t);
    }

    CubeSearchResult best;
    bool any = false;
    bool exhausted = false;
    for (const auto& s : searches) {
        exhausted = exhausted || s.exhausted();
        if (!s.found()) continue;
        const auto& b = s.best();
        if (!any || b.dimension > best.dimension ||
            (b.dimension == best.dimension && lex_less(b.witness, best.witness))) {
            best = b;
            any = true;
        }
    }
    best.nodes = nodes.load();
    best.exact = !exhausted;
    if (exhausted) throw SearchBudgetExceeded(fmt::format("exhaustive cube search mod {} exceeded its node budget", p), best);
    if (!any) throw DomainError(fmt::format("no admissible cube base mod {} (target set empty)", p));
    return best;
}

CubeSearchResult heuristic(PrimeContext& ctx, const Bitmap& allowed, const CubeSearchOptions& options) {
    const u64 p = ctx.p();
    std::vector<u64> bases;
    for (u64 a = 0; a < p; ++a)
        if (allowed.test(a)) bases.push_back(a);
    if (bases.empty()) throw DomainError(fmt::format("no admissible cube base mod {} (target set empty)", p));

    std::mt19937_64 rng(options.seed);
    std::vector<u64> cands(p - 1);
    std::iota(cands.begin(), cands.end(), u64{1});
    CubeSearchResult best;
    best.witness.a0 = bases.front();
    Bitmap in(p);
    for (unsigned restart = 0; restart < std::max(1u, options.restarts); ++restart) {
        const u64 a0 = bases[std::uniform_int_distribution<std::size_t>(0, bases.size() - 1)(rng)];
        std::shuffle(cands.begin(), cands.end(), rng);
        std::vector<u64> elems{a0};
        std::vector<u64> gens;
        for (u64 e : in.to_vector()) in.reset(e);
        in.set(a0);
        for (u64 g : cands) {
            if (gens.size() >= kMaxCubeDimension) break;
            bool ok = true;
            std::vector<u64> fresh;
            for (u64 x : elems) {
                const u64 y = (x + g) % p;
                if (!allowed.test(y)) {
                    ok = false;
                    break;
                }
                if (!in.test(y) && std::find(fresh.begin(), fresh.end(), y) == fresh.end()) fresh.push_back(y);
            }
            if (!ok) continue;
            gens.push_back(g);
            for (u64 y : fresh) {
                in.set(y);
                elems.push_back(y);
            }
        }
        ++best.nodes;
        std::sort(gens.begin(), gens.end());
        HilbertCube cube{a0, gens};
        if (gens.size() > best.dimension || (gens.size() == best.dimension && lex_less(cube, best.witness))) {
            best.dimension = gens.size();
            best.witness = std::move(cube);
        }
    }
    best.exact = false;
    return best;
}

Bitmap complement(const Bitmap& set, u64 p) {
    Bitmap out(p);
    for (u64 a = 0; a < p; ++a)
        if (!set.test(a)) out.set(a);
    return out;
}

}  // namespace

CubeSearchResult max_avoiding_dimension(PrimeContext& ctx, CubePredicate pred, SearchMode mode,
                                        const CubeSearchOptions& options) {
    const Bitmap allowed = complement(predicate_set(ctx, pred), ctx.p());
    return mode == SearchMode::Exhaustive ? exhaustive(ctx, allowed, options) : heuristic(ctx, allowed, options);
}

CubeSearchResult max_contained_dimension(PrimeContext& ctx, CubePredicate pred, SearchMode mode,
                                         const CubeSearchOptions& options, ZeroRule zero) {
    Bitmap allowed = predicate_set(ctx, pred);
    if (zero == ZeroRule::Neutral) allowed.set(0);
    return mode == SearchMode::Exhaustive ? exhaustive(ctx, allowed, options) : heuristic(ctx, allowed, options);
}

ArithmeticProgression longest_ap_in_cube(const HilbertCube& cube, u64 p) {
    const Bitmap elems = cube_element_bitmap(cube, p);
    if (elems.count() == p) return {p, 1, p - 1};
    u64 outside = 0;
    while (elems.test(outside)) ++outside;
    ArithmeticProgression best{0, 1, 0};
    u64 best_first = 0;
    for (u64 a = 1; a < p; ++a) {
        // Walk the single cycle x, x+a, x+2a, ... starting outside the set.
        u64 x = outside;
        u64 run = 0, run_start = 0;
        for (u64 i = 0; i <= p; ++i) {
            if (elems.test(x)) {
                if (run == 0) run_start = x;
                ++run;
            } else {
                if (run > best.length || (run == best.length && run > 0 && a == best.step && run_start < best_first)) {
                    best = {run, a, (run_start + p - a) % p};
                    best_first = run_start;
                }
                run = 0;
            }
            x = (x + a) % p;
        }
    }
    return best;
}

std::optional<ApGuarantee> ap_guarantee(u64 p, std::size_t d) {
    const double logp = std::log(static_cast<double>(p));
    if (logp <= 1.0) return std::nullopt;
    const double dmax = std::sqrt(logp / (2.0 * std::log(logp)));
    for (auto D = static_cast<unsigned>(std::floor(dmax)); D >= 2; --D) {
        if (static_cast<double>(d) >= 8.0 * std::pow(static_cast<double>(p) / logp, 1.0 / D)) {
            const double len = std::pow(2.0, -10.0) * std::pow(static_cast<double>(d) / logp, 1.0 + 1.0 / (D - 1.0));
            return ApGuarantee{D, len};
        }
    }
    return std::nullopt;
}

HilbertCube small_elements_cube(std::size_t d) {
    if (d < 1) throw DomainError("small_elements_cube: d must be at least 1");
    HilbertCube cube;
    for (std::size_t i = 1; i <= d; ++i) cube.gens.push_back(i);
    return cube;
}

bool CubeCensus::hs_bound_ok() const {
    return static_cast<double>(f.dimension) < 12.0 * std::pow(static_cast<double>(p), 0.25);
}

CubeCensus cube_census(u64 p, SearchMode mode, const CubeSearchOptions& options, ZeroRule zero) {
    PrimeContext ctx(p);
    CubeCensus c;
    c.p = p;
    c.zero_rule = zero;
    c.f = max_avoiding_dimension(ctx, CubePredicate::NonResidue, mode, options);
    c.F = max_avoiding_dimension(ctx, CubePredicate::PrimitiveRoot, mode, options);
    c.f_bar = max_contained_dimension(ctx, CubePredicate::NonResidue, mode, options, zero);
    c.F_bar = max_contained_dimension(ctx, CubePredicate::PrimitiveRoot, mode, options, zero);
    return c;
}

}  // namespace hamgap
