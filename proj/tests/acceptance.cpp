// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on failure.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "hamgap/census.hpp"
#include "hamgap/char_sums.hpp"
#include "hamgap/constants.hpp"
#include "hamgap/hilbert_cube.hpp"
#include "hamgap/scan.hpp"
#include "oracles.hpp"

using namespace hamgap;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

std::uint64_t at(const Histogram& h, unsigned v) {
    auto it = h.find(v);
    return it == h.end() ? 0 : it->second;
}

ScanData scan_upto(u64 hi, ComputeSet compute, unsigned tasks = workers()) {
    ScanConfig c;
    c.lo = 2;
    c.hi = hi;
    c.compute = compute;
    c.tasks = tasks;
    return scan_data_from(c, scan_profiles(c));
}

const ScanData& census_1e4() {
    static const ScanData data = scan_upto(10'000, ComputeSet{});
    return data;
}

Verdict ac1() {
    const auto table = build_count_table(census_1e4(), {3, 4});
    std::vector<std::string> bad;
    const auto& ref = reference::count_table();
    for (const auto& row : table.rows) {
        const auto& want = *std::find_if(ref.begin(), ref.end(), [&](const auto& r) { return r.j == row.j; });
        if (row.pi != want.pi) bad.push_back(fmt::format("j={} pi {}≠{}", row.j, row.pi, want.pi));
        for (unsigned v = 1; v <= 3; ++v) {
            if (at(row.w, v) != want.w[v - 1]) bad.push_back(fmt::format("j={} w={} {}≠{}", row.j, v, at(row.w, v), want.w[v - 1]));
            if (at(row.W, v) != want.W[v - 1]) bad.push_back(fmt::format("j={} W={} {}≠{}", row.j, v, at(row.W, v), want.W[v - 1]));
        }
    }
    if (!bad.empty()) return {false, fmt::format("{}", fmt::join(bad, "; "))};
    const auto& r3 = table.rows[0];
    const auto& r4 = table.rows[1];
    return {true, fmt::format("w=1 {}/{}, w=2 {}/{}, W=1 {}/{}, W=2 {}/{}, W=3 {}/{}", at(r3.w, 1), at(r4.w, 1), at(r3.w, 2),
                              at(r4.w, 2), at(r3.W, 1), at(r4.W, 1), at(r3.W, 2), at(r4.W, 2), at(r3.W, 3), at(r4.W, 3))};
}

Verdict ac2() {
    // Engine consistency for every prime up to 2000.
    std::vector<u64> engine_bad;
    for (u64 p : sieve_primes(2000)) {
        if (p == 2) continue;
        PrimeContext ctx(p);
        const auto a = delta_p(ctx, DeltaVariant::canonical(), DeltaEngine::Dilation);
        const auto b = delta_p(ctx, DeltaVariant::canonical(), DeltaEngine::Bfs);
        const auto o = oracle::delta(p, 0, p - 1);
        if (!(a == b) || a.delta != o.delta || a.witnesses != o.classes) engine_bad.push_back(p);
    }
    // Census diff, itemized per prime when nonzero.
    const auto table = build_count_table(census_1e4(), {3, 4});
    const auto diffs = diff_against_reference(table);
    std::vector<std::string> items;
    for (const auto& d : diffs) items.push_back(fmt::format("j={} {} ours={} published={}", d.j, d.column, d.ours, d.published));
    if (!diffs.empty()) {
        for (const auto& row : census_1e4().rows) {
            if (!row.delta || *row.delta < 3) continue;
            PrimeContext ctx(row.p);
            const auto b = delta_p(ctx, DeltaVariant::canonical(), DeltaEngine::Bfs);
            items.push_back(fmt::format("p={} dilation Δ={} [{}] bfs Δ={} [{}]", row.p, *row.delta,
                                        fmt::join(row.witnesses, ";"), b.delta, fmt::join(b.witnesses, ";")));
        }
    }
    const bool pass = engine_bad.empty();
    const auto& r3 = table.rows[0];
    const auto& r4 = table.rows[1];
    std::string detail = fmt::format("Δ=1 {}/{}, Δ=2 {}/{}, Δ=3 {}/{}; engines agree with brute force for p <= 2000: {}",
                                     at(r3.delta, 1), at(r4.delta, 1), at(r3.delta, 2), at(r4.delta, 2), at(r3.delta, 3),
                                     at(r4.delta, 3), engine_bad.empty() ? "yes" : fmt::format("NO {}", fmt::join(engine_bad, ";")));
    detail += diffs.empty() ? "; no census diff" : fmt::format("; diff: {}", fmt::join(items, " | "));
    return {pass, detail};
}

Verdict ac3() {
    const std::vector<u64> want{17, 67, 257, 1753, 2089, 8209, 8233};
    std::vector<u64> got, ge4;
    for (const auto& row : census_1e4().rows) {
        if (row.delta && *row.delta == 3) got.push_back(row.p);
        if (row.delta && *row.delta >= 4) ge4.push_back(row.p);
    }
    const bool pass = got == want && ge4.empty();
    return {pass, fmt::format("Δ=3 primes <= 10^4: {}; Δ>=4: {}", fmt::join(got, ","), ge4.empty() ? "none" : fmt::format("{}", fmt::join(ge4, ",")))};
}

Verdict ac4() {
    const auto scan = scan_upto(1'000'000, ComputeSet{true, true, false});
    const auto rep = frequencies(scan, 1'000'000);
    const bool counts = rep.pi == 78498 && rep.w1 == 39276 && rep.W1 == 29342;
    const bool fracs = std::abs(rep.w1_fraction() - reference::w1_fraction_1e6) < 1e-6 &&
                       std::abs(rep.W1_fraction() - reference::W1_fraction_1e6) < 1e-6;
    return {counts && fracs, fmt::format("#w=1 {} #W=1 {} of {}; fractions {:.7f} {:.7f}", rep.w1, rep.W1, rep.pi,
                                         rep.w1_fraction(), rep.W1_fraction())};
}

Verdict ac5() {
    const double rho = solve_rho0();
    const double h = entropy(rho);
    const double th = theta0();
    const double a = artin_constant(1'000'000);
    const bool pass = std::abs(rho - 0.11002786) <= 1e-8 && std::abs(h - 0.5) <= 1e-12 && std::abs(th - 0.07581633) <= 1e-8 &&
                      std::abs(a - 0.3739558) <= 1e-7;
    return {pass, fmt::format("rho0 {:.12f} H-1/2 {:.2e} theta0 {:.12f} A(10^6) {:.10f}", rho, h - 0.5, th, a)};
}

Verdict ac6() {
    std::uint64_t checked = 0, bad = 0;
    for (u64 p : oracle::primes_upto(200)) {
        if (p == 2) continue;
        PrimeContextOptions o;
        o.build_index_table = true;
        PrimeContext ctx(p, o);
        IndicatorEvaluator ev(ctx);
        for (u64 a = 1; a < p; ++a) {
            ++checked;
            if (ev.indicator(static_cast<std::int64_t>(a)) != Rational(oracle::order(a, p) == p - 1 ? 1 : 0)) ++bad;
        }
    }
    return {bad == 0, fmt::format("{} residues checked, {} mismatches", checked, bad)};
}

Verdict ac7() {
    std::mt19937_64 rng(7);
    const auto primes = oracle::primes_upto(500);
    unsigned mismatches = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const u64 p = primes[1 + rng() % (primes.size() - 1)];
        PrimeContextOptions o;
        o.build_index_table = true;
        PrimeContext ctx(p, o);
        const u64 n = 1 + rng() % p;
        const unsigned k = 1 + static_cast<unsigned>(rng() % ctx.r());
        const unsigned l = static_cast<unsigned>(rng() % (k + 1));
        const unsigned m = static_cast<unsigned>(rng() % (ctx.r() - k + 1));
        const auto d = divisors(p - 1);
        const auto chars = build_characters(ctx, d[rng() % d.size()]);
        const Character& chi = chars[rng() % chars.size()];
        if (!double_sum_S(ctx, n, k, l, m, chi, LoopOrder::UOuter)
                 .exactly_equals(double_sum_S(ctx, n, k, l, m, chi, LoopOrder::VOuter)))
            ++mismatches;
    }
    std::uint64_t sums = 0, nonzero = 0;
    for (u64 p : oracle::primes_upto(200)) {
        if (p == 2) continue;
        PrimeContextOptions o;
        o.build_index_table = true;
        PrimeContext ctx(p, o);
        for (u64 dd : divisors(p - 1)) {
            if (dd == 1) continue;
            for (const auto& chi : build_characters(ctx, dd)) {
                ++sums;
                if (!interval_char_sum(chi, 0, p).is_zero()) ++nonzero;
            }
        }
    }
    return {mismatches == 0 && nonzero == 0,
            fmt::format("1000 tuples, {} loop-order mismatches; {} full-period sums, {} nonzero", mismatches, sums, nonzero)};
}

Verdict ac8() {
    unsigned solved = 0, chain_bad = 0, hs_bad = 0, strict_bad = 0;
    for (u64 p : oracle::primes_upto(40)) {
        if (p == 2) continue;
        CubeSearchOptions opts;
        opts.tasks = workers();
        const auto c = cube_census(p, SearchMode::Exhaustive, opts);
        ++solved;
        chain_bad += !c.chain_ok();
        hs_bad += !c.hs_bound_ok();
        strict_bad += !cube_census(p, SearchMode::Exhaustive, opts, ZeroRule::Excluded).chain_ok();
    }
    PrimeContext c5(5);
    const auto f5 = max_avoiding_dimension(c5, CubePredicate::NonResidue, SearchMode::Exhaustive);
    std::vector<bool> allowed(5, true);
    allowed[2] = allowed[3] = false;
    const unsigned brute = oracle::max_cube_inside(5, allowed);
    const bool f5_ok = f5.dimension == 2 && brute == 2 && f5.witness == HilbertCube{0, {1, 4}};
    return {chain_bad == 0 && hs_bad == 0 && f5_ok,
            fmt::format("{} odd primes <= 40: chain violations {}, f < 12p^(1/4) violations {}; f(5)={} witness {} (brute {}); "
                        "zero-neutral containment (strict containment: {} chain violations)",
                        solved, chain_bad, hs_bad, f5.dimension, to_string(f5.witness), brute, strict_bad)};
}

Verdict ac9() {
    unsigned chain_bad = 0, w1_bad = 0, checked = 0;
    for (const auto& row : census_1e4().rows) {
        if (row.p == 2) continue;
        ++checked;
        if (!(*row.w <= *row.W && *row.W <= *row.delta)) ++chain_bad;
        if ((*row.w == 1) != (oracle::legendre(2, row.p) == -1)) ++w1_bad;
    }
    ScanConfig c;
    c.lo = 3;
    c.hi = 10'000;
    c.block_size = 128;
    c.tasks = 1;
    std::ostringstream one, eight;
    run_scan(c, one);
    c.tasks = 8;
    run_scan(c, eight);
    const bool same = one.str() == eight.str();
    return {chain_bad == 0 && w1_bad == 0 && same,
            fmt::format("{} odd primes: w<=W<=Δ violations {}, w=1 vs (2|p)=-1 mismatches {}; 1 vs 8 workers byte-identical: {} ({} bytes)",
                        checked, chain_bad, w1_bad, same ? "yes" : "NO", one.str().size())};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"AC1 census w/W columns", ac1},     {"AC2 census Δ columns", ac2},   {"AC3 Δ=3 membership", ac3},
        {"AC4 frequencies at 10^6", ac4},    {"AC5 constants", ac5},          {"AC6 indicator identity", ac6},
        {"AC7 character-sum oracles", ac7}, {"AC8 cube suite", ac8},          {"AC9 property suite", ac9},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = check();
        } catch (const std::exception& e) {
            v = {false, fmt::format("exception: {}", e.what())};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << fmt::format("{} {} ({:.1f}s): {}\n", v.pass ? "PASS" : "FAIL", name, secs, v.detail) << std::flush;
        failed += !v.pass;
    }
    std::cout << fmt::format("{}/{} criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
