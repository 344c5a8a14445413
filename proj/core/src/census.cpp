#include "hamgap/census.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "hamgap/constants.hpp"
#include "hamgap/errors.hpp"

namespace hamgap {

namespace reference {

const std::vector<CountRow>& count_table() {
    static const std::vector<CountRow> rows = {
        {3, 168, {87, 80, 0}, {68, 100, 0}, {12, 153, 3}},
        {4, 1229, {625, 603, 0}, {471, 756, 2}, {75, 1147, 7}},
        {5, 9592, {4808, 4783, 0}, {3604, 5985, 3}, {508, 9075, 9}},
        {6, 78498, {39276, 39221, 0}, {29342, 49145, 11}, {3915, 74565, 18}},
    };
    return rows;
}

const std::vector<Delta3Row>& delta3_table() {
    static const std::vector<Delta3Row> rows = {
        {17, {0, 16}},          {67, {0, 1, 65}},   {257, {0, 256}},   {1753, {0}},
        {2089, {0}},            {8209, {0, 8196}},  {8233, {0, 8226}}, {65537, {0, 65536}},
        {77351, {0}},           {111439, {0}},      {114001, {0}},     {164449, {0}},
        {239713, {0}},          {262153, {0, 262144}}, {514711, {0}},  {924841, {0}},
        {929671, {0}},          {947911, {0}},      {1316041, {0}},    {1894369, {0}},
        {2097169, {0, 2097152}}, {2236879, {0}},    {2493721, {0}},    {2743711, {0}},
    };
    return rows;
}

}  // namespace reference

namespace {

u64 pow10(unsigned j) {
    u64 v = 1;
    for (unsigned i = 0; i < j; ++i) v *= 10;
    return v;
}

// Conventional p = 2 contributions when the scan started at 3.
struct PrimeTwo {
    bool W = false;
    bool delta = false;
};

PrimeTwo fold_prime_two(const ScanData& scan) {
    PrimeTwo two;
    const bool present = std::any_of(scan.rows.begin(), scan.rows.end(), [](const ScanRow& r) { return r.p == 2; });
    if (present || scan.header.lo > 3) return two;
    two.W = scan.header.compute.W;
    bool zero_domain = false;
    try {
        zero_domain = parse_variant(scan.header.variant).n_domain == NDomain::ZeroToPMinus1;
    } catch (const DomainError&) {
        zero_domain = false;
    }
    two.delta = scan.header.compute.delta && zero_domain;
    return two;
}

void require_coverage(const ScanData& scan, u64 limit) {
    if (scan.header.lo > 3)
        throw DomainError(fmt::format("scan starts at {}; census needs a scan from 2 or 3", scan.header.lo));
    if (scan.header.hi < limit)
        throw DomainError(fmt::format("scan reaches {} but the census needs {}", scan.header.hi, limit));
}

std::uint64_t at(const Histogram& h, unsigned v) {
    auto it = h.find(v);
    return it == h.end() ? 0 : it->second;
}

}  // namespace

std::uint64_t CountTableRow::w_total() const {
    std::uint64_t t = 0;
    for (const auto& [k, c] : w) t += c;
    return t;
}

CountTable build_count_table(const ScanData& scan, const std::vector<unsigned>& thresholds) {
    CountTable table;
    table.variant = scan.header.variant;
    const PrimeTwo two = fold_prime_two(scan);
    const bool folded = scan.header.lo == 3;
    for (unsigned j : thresholds) {
        const u64 limit = pow10(j);
        require_coverage(scan, limit);
        CountTableRow row;
        row.j = j;
        row.has_w = scan.header.compute.w;
        row.has_W = scan.header.compute.W;
        row.has_delta = scan.header.compute.delta;
        for (const auto& r : scan.rows) {
            if (r.p > limit) continue;
            ++row.pi;
            if (r.w) ++row.w[*r.w];
            if (r.W) ++row.W[*r.W];
            if (r.delta) ++row.delta[*r.delta];
        }
        if (folded) {
            ++row.pi;
            if (two.W) ++row.W[1];
            if (two.delta) ++row.delta[1];
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::vector<CountDiff> diff_against_reference(const CountTable& table) {
    std::vector<CountDiff> diffs;
    for (const auto& row : table.rows) {
        const auto& ref = reference::count_table();
        auto it = std::find_if(ref.begin(), ref.end(), [&](const reference::CountRow& r) { return r.j == row.j; });
        if (it == ref.end()) continue;
        auto cmp = [&](const std::string& col, std::uint64_t ours, std::uint64_t published) {
            if (ours != published)
                diffs.push_back({row.j, col, static_cast<std::int64_t>(ours), static_cast<std::int64_t>(published)});
        };
        cmp("pi", row.pi, it->pi);
        for (unsigned v = 1; v <= 3; ++v) {
            if (row.has_w) cmp(fmt::format("w={}", v), at(row.w, v), it->w[v - 1]);
            if (row.has_W) cmp(fmt::format("W={}", v), at(row.W, v), it->W[v - 1]);
            if (row.has_delta) cmp(fmt::format("Δ={}", v), at(row.delta, v), it->delta[v - 1]);
        }
    }
    return diffs;
}

bool partition_identity_holds(const CountTable& table) {
    return std::all_of(table.rows.begin(), table.rows.end(),
                       [](const CountTableRow& r) { return !r.has_w || r.w_total() + 1 == r.pi; });
}

std::string render_count_table(const CountTable& table, bool reference_diff) {
    std::string out = fmt::format("# Count of primes (variant={}, r = number of binary digits)\n", table.variant);
    out += fmt::format("{:>2} {:>8} | {:>6} {:>6} {:>6} | {:>6} {:>6} {:>6} | {:>6} {:>6} {:>6}", "j", "pi", "w=1",
                       "W=1", "Δ=1", "w=2", "W=2", "Δ=2", "w=3", "W=3", "Δ=3");
    if (reference_diff) out += " | diff";
    out += "\n";
    const auto diffs = diff_against_reference(table);
    for (const auto& row : table.rows) {
        auto cell = [](bool has, const Histogram& h, unsigned v) { return has ? std::to_string(at(h, v)) : std::string("-"); };
        out += fmt::format("{:>2} {:>8}", row.j, row.pi);
        for (unsigned v = 1; v <= 3; ++v)
            out += fmt::format(" | {:>6} {:>6} {:>6}", cell(row.has_w, row.w, v), cell(row.has_W, row.W, v),
                               cell(row.has_delta, row.delta, v));
        if (reference_diff) {
            std::vector<std::string> cells;
            for (const auto& d : diffs)
                if (d.j == row.j) cells.push_back(fmt::format("{}:{:+}", d.column, d.ours - d.published));
            out += fmt::format(" | {}", fmt::join(cells, " "));
        }
        out += "\n";
    }
    if (!partition_identity_holds(table)) out += "# WARNING: sum of w counts differs from pi - 1\n";
    return out;
}

// ---------------------------------------------------------------------------

std::size_t Delta3Census::count_delta3() const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [](const Delta3Entry& e) { return e.delta == 3; }));
}

bool Delta3Census::prime_lists_match() const {
    return std::all_of(entries.begin(), entries.end(), [](const Delta3Entry& e) { return e.in_reference == (e.delta == 3); });
}

Delta3Census delta3_census(const ScanData& scan, u64 limit) {
    if (!scan.header.compute.delta) throw DomainError("delta3 census needs a scan with delta");
    require_coverage(scan, limit);
    Delta3Census census;
    census.limit = limit;
    census.variant = scan.header.variant;
    const auto& published = reference::delta3_table();
    for (const auto& row : scan.rows) {
        if (row.p > limit || !row.delta) continue;
        if (*row.delta >= 4) census.delta_ge4.push_back(row.p);
        auto it = std::find_if(published.begin(), published.end(), [&](const reference::Delta3Row& r) { return r.p == row.p; });
        const bool in_reference = it != published.end();
        if (*row.delta != 3 && !in_reference) continue;
        Delta3Entry e;
        e.p = row.p;
        e.delta = *row.delta;
        e.witnesses = row.witnesses;
        e.in_reference = in_reference;
        std::set<u64> all(row.witnesses.begin(), row.witnesses.end());
        if (in_reference) all.insert(it->classes.begin(), it->classes.end());
        for (u64 c : all) {
            const bool here = *row.delta == 3 && std::binary_search(row.witnesses.begin(), row.witnesses.end(), c);
            const bool there = in_reference && std::find(it->classes.begin(), it->classes.end(), c) != it->classes.end();
            e.classes.emplace_back(c, here && there ? ClassStatus::Match : (there ? ClassStatus::MissingHere : ClassStatus::ExtraHere));
        }
        census.entries.push_back(std::move(e));
    }
    return census;
}

std::string render_delta3(const Delta3Census& census) {
    std::string out = fmt::format("# Primes with Δ_p = 3 up to {} (variant={})\n", census.limit, census.variant);
    out += "p,delta,in_reference,classes_here,classes_diff\n";
    for (const auto& e : census.entries) {
        std::vector<std::string> diff;
        for (const auto& [c, st] : e.classes) {
            if (st == ClassStatus::Match) diff.push_back(fmt::format("{}=match", c));
            else if (st == ClassStatus::MissingHere) diff.push_back(fmt::format("{}=reference-only", c));
            else diff.push_back(fmt::format("{}=here-only", c));
        }
        out += fmt::format("{},{},{},{},{}\n", e.p, e.delta, e.in_reference ? "yes" : "no", fmt::join(e.witnesses, ";"),
                           fmt::join(diff, ";"));
    }
    out += fmt::format("# {} primes with Δ_p = 3 here", census.count_delta3());
    const auto& published = reference::delta3_table();
    const auto listed = std::count_if(published.begin(), published.end(), [&](const reference::Delta3Row& r) { return r.p <= census.limit; });
    out += fmt::format("; {} listed in the published table up to this limit; prime lists {}\n", listed,
                       census.prime_lists_match() ? "match" : "DIFFER");
    if (!census.delta_ge4.empty())
        out += fmt::format("# DISCREPANCY: primes with Δ_p >= 4: {}\n", fmt::join(census.delta_ge4, ";"));
    else
        out += "# no prime with Δ_p >= 4\n";
    return out;
}

// ---------------------------------------------------------------------------

FrequencyReport frequencies(const ScanData& scan, u64 limit) {
    if (!scan.header.compute.w || !scan.header.compute.W) throw DomainError("frequencies need a scan with w and W");
    require_coverage(scan, limit);
    FrequencyReport rep;
    rep.limit = limit;
    for (const auto& row : scan.rows) {
        if (row.p > limit) continue;
        ++rep.pi;
        if (row.w && *row.w == 1) ++rep.w1;
        if (row.W && *row.W == 1) ++rep.W1;
    }
    if (fold_prime_two(scan).W) {
        ++rep.pi;
        ++rep.W1;
    }
    return rep;
}

std::string render_frequencies(const FrequencyReport& r, double artin) {
    std::string out = fmt::format("limit={} pi={}\n", r.limit, r.pi);
    out += fmt::format("w=1: {}/{} = {:.6f}  (constant 1/2; published {:.6f} at 10^6)\n", r.w1, r.pi, r.w1_fraction(),
                       reference::w1_fraction_1e6);
    out += fmt::format("W=1: {}/{} = {:.6f}  (Artin constant A = {:.7f}; published {:.6f} at 10^6)\n", r.W1, r.pi,
                       r.W1_fraction(), artin, reference::W1_fraction_1e6);
    return out;
}

ScanData scan_data_from(const ScanConfig& config, const std::vector<HammingProfile>& profiles) {
    ScanData data;
    data.header = header_for(config);
    data.format = config.format;
    data.rows.reserve(profiles.size());
    for (const auto& prof : profiles) data.rows.push_back(to_row(prof));
    return data;
}

}  // namespace hamgap
