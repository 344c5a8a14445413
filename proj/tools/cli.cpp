#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "hamgap/census.hpp"
#include "hamgap/char_sums.hpp"
#include "hamgap/characters.hpp"
#include "hamgap/constants.hpp"
#include "hamgap/errors.hpp"
#include "hamgap/hilbert_cube.hpp"
#include "hamgap/scan.hpp"

namespace hamgap::cli {
namespace {

// Accepts plain integers and the shorthand "1e6".
u64 parse_count(const std::string& text) {
    auto parse_plain = [&](std::string_view s) {
        u64 v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
            throw DomainError(fmt::format("not a non-negative integer: '{}'", text));
        return v;
    };
    const auto e = text.find_first_of("eE");
    if (e == std::string::npos) return parse_plain(text);
    u64 v = parse_plain(std::string_view(text).substr(0, e));
    const u64 exp = parse_plain(std::string_view(text).substr(e + 1));
    for (u64 i = 0; i < exp; ++i) {
        if (v > UINT64_MAX / 10) throw DomainError(fmt::format("number too large: '{}'", text));
        v *= 10;
    }
    return v;
}

struct Range {
    u64 lo = 0;
    u64 hi = 0;
};

Range parse_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw DomainError(fmt::format("range must look like LO:HI, got '{}'", text));
    Range r{parse_count(text.substr(0, colon)), parse_count(text.substr(colon + 1))};
    if (r.lo > r.hi) throw EmptyRangeError(fmt::format("empty range {}:{}", r.lo, r.hi));
    return r;
}

ComputeSet parse_compute(const std::vector<std::string>& names) {
    ComputeSet c{false, false, false};
    for (const auto& n : names) {
        if (n == "w") c.w = true;
        else if (n == "W") c.W = true;
        else if (n == "delta") c.delta = true;
        else throw DomainError(fmt::format("unknown statistic '{}' (expected w, W, delta)", n));
    }
    if (!c.w && !c.W && !c.delta) throw DomainError("empty compute set");
    return c;
}

DeltaEngine parse_engine(const std::string& name) {
    if (name == "dilation") return DeltaEngine::Dilation;
    if (name == "bfs") return DeltaEngine::Bfs;
    throw DomainError(fmt::format("unknown engine '{}' (expected dilation, bfs)", name));
}

unsigned default_tasks() { return std::max(1u, std::thread::hardware_concurrency()); }

u64 pow10(unsigned j) {
    u64 v = 1;
    for (unsigned i = 0; i < j; ++i) v *= 10;
    return v;
}

// Options shared by the census commands: either a scan file or an in-memory scan.
struct Source {
    std::string input;
    std::string variant = "canonical";
    unsigned tasks = default_tasks();
    std::string engine = "dilation";

    void attach(CLI::App* sub) {
        sub->add_option("--input", input, "Read a scan file (CSV or JSONL) instead of scanning");
        sub->add_option("--variant", variant, "Δ variant for in-memory scans")
            ->check(CLI::IsMember({"canonical", "domain0", "interval", "reduced"}));
        sub->add_option("--tasks", tasks, "Worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--engine", engine, "Δ engine")->check(CLI::IsMember({"dilation", "bfs"}));
    }

    ScanData load(u64 hi, const ComputeSet& compute) const {
        if (!input.empty()) return read_scan_file(input);
        ScanConfig c;
        c.lo = 2;
        c.hi = hi;
        c.tasks = tasks;
        c.variant = parse_variant(variant);
        c.compute = compute;
        c.engine = parse_engine(engine);
        return scan_data_from(c, scan_profiles(c));
    }
};

std::string quoted(const std::string& s) { return fmt::format("\"{}\"", s); }

// ---------------------------------------------------------------------------

struct ScanArgs {
    std::string range;
    unsigned tasks = default_tasks();
    std::string variant = "canonical";
    std::string format = "csv";
    std::string checkpoint;
    std::string output;
    std::uint64_t seed = 0;
    std::vector<std::string> compute{"w", "W", "delta"};
    std::string engine = "dilation";
    std::size_t max_blocks = 0;
    std::size_t block_size = 4096;
};

int cmd_scan(const ScanArgs& a, std::ostream& out, std::ostream& err) {
    const Range r = parse_range(a.range);
    ScanConfig c;
    c.lo = r.lo;
    c.hi = r.hi;
    c.tasks = a.tasks;
    c.variant = parse_variant(a.variant);
    c.compute = parse_compute(a.compute);
    c.engine = parse_engine(a.engine);
    c.format = parse_format(a.format);
    c.seed = a.seed;
    c.block_size = a.block_size;
    if (a.max_blocks > 0) c.max_blocks = a.max_blocks;
    if (!a.checkpoint.empty()) {
        if (a.output.empty()) throw DomainError("--checkpoint requires --output");
        c.checkpoint = a.checkpoint;
    }
    validate(c);
    const ScanOutcome o = a.output.empty() ? run_scan(c, out) : run_scan_to_file(c, a.output);
    err << fmt::format("scan {}..{}: {} primes, blocks {}/{}", c.lo, c.hi, o.aggregates.primes, o.blocks_done,
                       o.blocks_total);
    if (o.resumed_from > 0) err << fmt::format(" (resumed at block {})", o.resumed_from);
    err << (o.complete() ? "\n" : ", incomplete: rerun the same command to resume\n");
    return kOk;
}

// ---------------------------------------------------------------------------

int cmd_table(const Source& src, const std::string& range, std::vector<unsigned> thresholds, bool reference_diff,
              std::ostream& out) {
    std::optional<u64> hi;
    if (!range.empty()) {
        const Range r = parse_range(range);
        if (r.lo > 3) throw DomainError("table needs a scan starting at 2 or 3");
        hi = r.hi;
    }
    if (thresholds.empty() && !hi && src.input.empty()) thresholds = {3, 4};
    u64 need = thresholds.empty() ? 0 : pow10(*std::max_element(thresholds.begin(), thresholds.end()));
    const ScanData scan = src.load(hi.value_or(need), ComputeSet{});
    if (thresholds.empty())
        for (unsigned j = 1; pow10(j) <= scan.header.hi; ++j) thresholds.push_back(j);
    if (thresholds.empty()) throw DomainError(fmt::format("scan up to {} covers no threshold 10^j", scan.header.hi));
    const CountTable table = build_count_table(scan, thresholds);
    out << render_count_table(table, reference_diff);
    if (!partition_identity_holds(table)) throw InvariantViolation("sum of w counts differs from pi - 1");
    return kOk;
}

// ---------------------------------------------------------------------------

int cmd_delta3(const Source& src, u64 limit, u64 max_limit, std::ostream& out) {
    if (limit > max_limit)
        throw CapabilityError(fmt::format("delta3 limit {} exceeds the configured maximum {}", limit, max_limit));
    const ScanData scan = src.load(limit, ComputeSet{false, false, true});
    const Delta3Census census = delta3_census(scan, std::min(limit, scan.header.hi));
    out << render_delta3(census);
    return kOk;
}

// ---------------------------------------------------------------------------

int cmd_frequencies(const Source& src, u64 limit, u64 artin_limit, std::ostream& out) {
    const ScanData scan = src.load(limit, ComputeSet{true, true, false});
    const FrequencyReport rep = frequencies(scan, limit);
    out << render_frequencies(rep, artin_constant(artin_limit));
    if (rep.W1 > rep.w1) throw InvariantViolation("more primes with W = 1 than with w = 1");
    return kOk;
}

// ---------------------------------------------------------------------------

struct CubeArgs {
    std::string range = "3:40";
    std::string mode = "exhaustive";
    unsigned tasks = default_tasks();
    std::uint64_t seed = CubeSearchOptions{}.seed;
    std::uint64_t node_budget = CubeSearchOptions{}.node_budget;
    unsigned restarts = CubeSearchOptions{}.restarts;
    u64 exhaustive_max_p = CubeSearchOptions{}.exhaustive_max_p;
    std::string zero_rule = "neutral";
};

int cmd_cubes(const CubeArgs& a, std::ostream& out, std::ostream& err) {
    const Range r = parse_range(a.range);
    const SearchMode mode = a.mode == "heuristic" ? SearchMode::Heuristic : SearchMode::Exhaustive;
    CubeSearchOptions opts;
    opts.seed = a.seed;
    opts.node_budget = a.node_budget;
    opts.restarts = a.restarts;
    opts.tasks = a.tasks;
    opts.exhaustive_max_p = a.exhaustive_max_p;
    if (mode == SearchMode::Exhaustive && r.hi > opts.exhaustive_max_p)
        throw CapabilityError(fmt::format("exhaustive cube search is limited to p <= {} (asked for {})",
                                          opts.exhaustive_max_p, r.hi));

    const ZeroRule zero = a.zero_rule == "excluded" ? ZeroRule::Excluded : ZeroRule::Neutral;
    out << fmt::format("# nonzero distinct generators; containment zero rule: {}\n", zero_rule_name(zero));
    out << "p,f,F,f_bar,F_bar,f_witness,F_witness,f_bar_witness,F_bar_witness,exact,chain,hs_bound\n";
    bool chain_violation = false;
    bool budget_hit = false;
    for (u64 p = std::max<u64>(r.lo, 3); p <= r.hi; ++p) {
        if (!is_prime(p)) continue;
        try {
            const CubeCensus c = cube_census(p, mode, opts, zero);
            const bool exact = mode == SearchMode::Exhaustive;
            std::string chain = c.chain_ok() ? "ok" : "VIOLATION";
            if (!exact) chain = c.chain_ok() ? "ok(lb)" : "n/a(lb)";
            if (exact && !c.chain_ok()) chain_violation = true;
            out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", p, c.f.dimension, c.F.dimension, c.f_bar.dimension,
                               c.F_bar.dimension, quoted(to_string(c.f.witness)), quoted(to_string(c.F.witness)),
                               quoted(to_string(c.f_bar.witness)), quoted(to_string(c.F_bar.witness)),
                               exact ? "yes" : "lower-bound", chain, c.hs_bound_ok() ? "ok" : "VIOLATION");
        } catch (const SearchBudgetExceeded& e) {
            budget_hit = true;
            const auto& part = e.partial();
            out << fmt::format("{},,,,,{},,,,partial(>={}),,\n", p, quoted(to_string(part.witness)), part.dimension);
            err << "warning: " << e.what() << "\n";
        }
    }
    if (budget_hit) return kCapability;
    if (chain_violation) return kInvariant;
    return kOk;
}

// ---------------------------------------------------------------------------

struct CharsumArgs {
    std::string mode;
    u64 p = 0;
    unsigned nu = 1;
    u64 n = 1;
    unsigned k = 1;
    unsigned l = 1;
    unsigned m = 1;
    u64 order = 2;
    unsigned which = 0;
    std::vector<std::int64_t> poly{0, 1};
    std::int64_t start = 0;
    u64 length = 0;
};

Character pick_character(PrimeContext& ctx, const CharsumArgs& a) {
    const auto chars = build_characters(ctx, a.order);
    if (a.which >= chars.size())
        throw DomainError(fmt::format("--which {} out of range: {} characters of order {}", a.which, chars.size(), a.order));
    return chars[a.which];
}

std::string describe(const BoundReport& rep) {
    if (!rep.applicable) return fmt::format("bound not applicable ({})", rep.note);
    return fmt::format("|sum| = {:.6f}, {} bound = {:.6f}, ratio = {:.6f}", rep.magnitude, formula_name(rep.formula, rep.nu),
                       rep.bound, rep.ratio);
}

int cmd_charsum(const CharsumArgs& a, std::ostream& out) {
    if (!is_prime(a.p) || a.p < 3) throw InvalidModulusError(fmt::format("charsum needs an odd prime, got {}", a.p));
    PrimeContextOptions po;
    po.build_index_table = true;
    PrimeContext ctx(a.p, po);

    if (a.mode == "indicator") {
        IndicatorEvaluator ev(ctx);
        u64 match = 0;
        std::vector<u64> bad;
        for (u64 x = 1; x < a.p; ++x) {
            const Rational want(is_primitive_root(x, ctx) ? 1 : 0);
            if (ev.indicator(static_cast<std::int64_t>(x)) == want) ++match;
            else bad.push_back(x);
        }
        out << fmt::format("p={} character-sum indicator vs order test: ", a.p);
        if (bad.empty()) {
            out << fmt::format("exact match {}/{} residues\n", match, a.p - 1);
            return kOk;
        }
        out << fmt::format("MISMATCH at {}; matched {}/{} residues\n", fmt::join(bad, ";"), match, a.p - 1);
        return kInvariant;
    }

    if (a.mode == "pv") {
        double best = 0;
        std::string best_at = "-";
        out << fmt::format("p={} interval sums over z = 1..Z, all non-principal characters, nu={}\n", a.p, a.nu);
        out << "order,characters,max_ratio,at\n";
        for (u64 d : divisors(a.p - 1)) {
            if (d == 1) continue;
            double layer = 0;
            std::string layer_at = "-";
            const auto chars = build_characters(ctx, d);
            for (const auto& chi : chars)
                for (u64 Z = 1; Z < a.p; ++Z) {
                    const BoundReport rep = interval_sum_report(chi, 0, Z, a.nu);
                    if (rep.applicable && rep.ratio > layer) {
                        layer = rep.ratio;
                        layer_at = fmt::format("j={} Z={}", chi.exponent(), Z);
                    }
                }
            out << fmt::format("{},{},{:.6f},{}\n", d, chars.size(), layer, layer_at);
            if (layer > best) {
                best = layer;
                best_at = fmt::format("order {} {}", d, layer_at);
            }
        }
        out << fmt::format("max ratio {:.6f} at {}\n", best, best_at);
        return kOk;
    }

    if (a.mode == "double") {
        const Character chi = pick_character(ctx, a);
        const auto s1 = double_sum_S(ctx, a.n, a.k, a.l, a.m, chi, LoopOrder::UOuter);
        const auto s2 = double_sum_S(ctx, a.n, a.k, a.l, a.m, chi, LoopOrder::VOuter);
        const auto v = s1.approx();
        out << fmt::format("p={} n={} k={} l={} m={} chi: order {} exponent {}\n", a.p, a.n, a.k, a.l, a.m, chi.order(),
                           chi.exponent());
        out << fmt::format("S = {:.6f}{:+.6f}i over {} terms", v.real(), v.imag(), s1.terms());
        if (auto z = s1.as_integer()) out << fmt::format(" (exact integer {})", *z);
        out << "\n";
        out << fmt::format("loop orders agree exactly: {}\n", s1.exactly_equals(s2) ? "yes" : "NO");
        out << describe(hoelder_bound_report(ctx, a.n, a.k, a.l, a.m, chi, a.nu)) << "\n";
        return s1.exactly_equals(s2) ? kOk : kInvariant;
    }

    if (a.mode == "legendre") {
        const u64 N = a.length == 0 ? a.p - 1 : a.length;
        const auto res = legendre_partial_sum_report(a.p, N);
        out << fmt::format("p={} N={} sum (n/p) = {}; {}\n", a.p, N, res.sum, describe(res.report));
        return kOk;
    }

    if (a.mode == "weil") {
        const Character chi = pick_character(ctx, a);
        const u64 K = a.length == 0 ? a.p - 1 : a.length;
        const auto res = poly_char_sum(chi, a.poly, a.start, K);
        out << fmt::format("p={} F coefficients (ascending) [{}], u = {}..{}, chi order {}\n", a.p, fmt::join(a.poly, ","),
                           a.start + 1, a.start + static_cast<std::int64_t>(K), chi.order());
        out << fmt::format("distinct roots {}; {}\n", res.roots.distinct_roots, describe(res.report));
        return kOk;
    }

    throw DomainError(fmt::format("unknown charsum mode '{}'", a.mode));
}

// ---------------------------------------------------------------------------

int cmd_constants(u64 artin_limit, std::optional<u64> p, std::ostream& out) {
    const double rho = solve_rho0();
    out << fmt::format("rho0   = {:.8f}  (computed {:.12f}, reference {:.8f}, H(rho0) - 1/2 = {:.3e})\n", rho, rho,
                       reference::rho0, entropy(rho) - 0.5);
    out << fmt::format("theta0 = {:.8f}  (1/(8 sqrt e), reference {:.8f})\n", theta0(), reference::theta0);
    out << fmt::format("1/(4 sqrt e) = {:.8f}\n", quarter_sqrt_e());
    out << fmt::format("A({})  = {:.7f}  (Artin product over primes up to the limit, reference {:.7f})\n", artin_limit,
                       artin_constant(artin_limit), reference::artin);
    if (p) {
        const BoundProfile b = bound_profile(*p);
        out << fmt::format("bound profile for p={} with r = {} binary digits:\n", *p, b.r);
        out << fmt::format("  rho0*r = {:.4f}\n  0.25*r = {:.4f}\n  theta0*r = {:.4f}\n  r/(4 sqrt e) = {:.4f}\n  0.2*r = {:.4f}\n",
                           b.rho0_bound, b.burgess_bound, b.theta0_bound, b.quarter_sqrt_e_bound, b.hilbert_delta_bound);
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hamming gaps to primitive roots, sparse residues, Hilbert cubes and character sums"};
    app.name(args.empty() ? "hamgap" : args[0]);
    app.require_subcommand(1);

    ScanArgs scan;
    auto* s = app.add_subcommand("scan", "Per-prime w, W and Δ rows over a range");
    s->add_option("--range", scan.range, "LO:HI (inclusive)")->required();
    s->add_option("--tasks", scan.tasks, "Worker threads")->check(CLI::PositiveNumber);
    s->add_option("--variant", scan.variant, "Δ variant")->check(CLI::IsMember({"canonical", "domain0", "interval", "reduced"}));
    s->add_option("--format", scan.format, "Output format")->check(CLI::IsMember({"csv", "jsonl"}));
    s->add_option("--checkpoint", scan.checkpoint, "Checkpoint file (requires --output)");
    s->add_option("--output,-o", scan.output, "Output file (default: stdout)");
    s->add_option("--seed", scan.seed, "Recorded in the checkpoint");
    s->add_option("--compute", scan.compute, "Statistics: w,W,delta")->delimiter(',');
    s->add_option("--engine", scan.engine, "Δ engine")->check(CLI::IsMember({"dilation", "bfs"}));
    s->add_option("--max-blocks", scan.max_blocks, "Stop after this many blocks (0 = no limit)");
    s->add_option("--block-size", scan.block_size, "Primes per block")->check(CLI::PositiveNumber);

    Source table_src;
    std::string table_range;
    std::vector<unsigned> thresholds;
    bool reference_diff = false;
    auto* t = app.add_subcommand("table", "Count of primes by w, W, Δ at thresholds 10^j");
    table_src.attach(t);
    t->add_option("--range", table_range, "Scan range for an in-memory scan");
    t->add_option("--thresholds", thresholds, "Exponents j (comma separated)")->delimiter(',');
    t->add_flag("--paper-diff", reference_diff, "Append a diff column against the published table");

    Source d3_src;
    std::string d3_limit = "10000";
    std::string d3_max = "3000000";
    auto* d3 = app.add_subcommand("delta3", "Primes with Δ_p = 3 and their classes");
    d3_src.attach(d3);
    d3->add_option("--limit", d3_limit, "Largest prime considered");
    d3->add_option("--max-limit", d3_max, "Refuse limits above this");

    Source fq_src;
    std::string fq_limit = "1000000";
    std::string artin_limit = "1000000";
    auto* fq = app.add_subcommand("frequencies", "Fractions of primes with w = 1 and W = 1");
    fq_src.attach(fq);
    fq->add_option("--limit", fq_limit, "Largest prime considered");
    fq->add_option("--artin-limit", artin_limit, "Prime bound for the Artin product");

    CubeArgs cubes;
    auto* cu = app.add_subcommand("cubes", "Hilbert cube dimensions f, F, f_bar, F_bar");
    cu->add_option("--range", cubes.range, "LO:HI over primes");
    cu->add_option("--mode", cubes.mode, "Search mode")->check(CLI::IsMember({"exhaustive", "heuristic"}));
    cu->add_option("--tasks", cubes.tasks, "Worker threads")->check(CLI::PositiveNumber);
    cu->add_option("--seed", cubes.seed, "Heuristic seed");
    cu->add_option("--node-budget", cubes.node_budget, "Exhaustive node budget per search");
    cu->add_option("--restarts", cubes.restarts, "Heuristic restarts");
    cu->add_option("--zero-rule", cubes.zero_rule, "Containment treatment of 0")
        ->check(CLI::IsMember({"neutral", "excluded"}));
    cu->add_option("--max-exhaustive-p", cubes.exhaustive_max_p, "Largest p for exhaustive search");

    CharsumArgs cs;
    auto* ch = app.add_subcommand("charsum", "Exact character sums against their bounds");
    ch->add_option("--mode", cs.mode, "indicator | pv | double | legendre | weil")
        ->required()
        ->check(CLI::IsMember({"indicator", "pv", "double", "legendre", "weil"}));
    ch->add_option("--p", cs.p, "Odd prime modulus")->required();
    ch->add_option("--nu", cs.nu, "Burgess / Hölder parameter")->check(CLI::PositiveNumber);
    ch->add_option("--n", cs.n, "double: centre n in [1, p]");
    ch->add_option("--k", cs.k, "double: split position k");
    ch->add_option("--l", cs.l, "double: flips in the high part");
    ch->add_option("--m", cs.m, "double: flips in the low part");
    ch->add_option("--order", cs.order, "Character order d | p-1");
    ch->add_option("--which", cs.which, "Index among characters of that order");
    ch->add_option("--poly", cs.poly, "weil: ascending coefficients of F")->delimiter(',');
    ch->add_option("--start", cs.start, "weil: sum over u = start+1 .. start+length");
    ch->add_option("--length", cs.length, "legendre/weil: number of terms (default p-1)");

    std::string const_artin = "1000000";
    std::string const_p;
    auto* co = app.add_subcommand("constants", "rho0, theta0 and the Artin constant");
    co->add_option("--artin-limit", const_artin, "Prime bound for the Artin product");
    co->add_option("--p", const_p, "Also print the bound profile for this prime");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*s) return cmd_scan(scan, out, err);
        if (*t) return cmd_table(table_src, table_range, thresholds, reference_diff, out);
        if (*d3) return cmd_delta3(d3_src, parse_count(d3_limit), parse_count(d3_max), out);
        if (*fq) return cmd_frequencies(fq_src, parse_count(fq_limit), parse_count(artin_limit), out);
        if (*cu) return cmd_cubes(cubes, out, err);
        if (*ch) return cmd_charsum(cs, out);
        if (*co) {
            std::optional<u64> p;
            if (!const_p.empty()) p = parse_count(const_p);
            return cmd_constants(parse_count(const_artin), p, out);
        }
    } catch (const SearchBudgetExceeded& e) {
        err << "capability: " << e.what() << "\n";
        return kCapability;
    } catch (const CapabilityError& e) {
        err << "capability: " << e.what() << "\n";
        return kCapability;
    } catch (const IoError& e) {
        err << "i/o: " << e.what() << "\n";
        return kIo;
    } catch (const FormatError& e) {
        err << "input format: " << e.what() << "\n";
        return kIo;
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << "\n";
        return kInvariant;
    } catch (const std::invalid_argument& e) {
        err << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const std::domain_error& e) {
        err << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kIo;
    }
    return kUsage;
}

}  // namespace hamgap::cli
