#pragma once

// Aggregated census reports over scan results, with side-by-side comparison
// against the published reference tables.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hamgap/scan.hpp"

namespace hamgap {

namespace reference {

/// One row of the published "Count of primes" table (threshold 10^j).
/// Columns w, W, delta are indexed by value − 1 for values 1, 2, 3.
struct CountRow {
    unsigned j;
    std::uint64_t pi;
    std::array<std::uint64_t, 3> w, W, delta;
};
const std::vector<CountRow>& count_table();

/// Published primes with Δ_p = 3 (p ≤ 3·10^6) and their listed classes.
struct Delta3Row {
    u64 p;
    std::vector<u64> classes;
};
const std::vector<Delta3Row>& delta3_table();

inline constexpr u64 kDelta3SearchLimit = 3'000'000;

}  // namespace reference

struct CountTableRow {
    unsigned j = 0;
    std::uint64_t pi = 0;
    Histogram w, W, delta;
    bool has_w = false, has_W = false, has_delta = false;

    std::uint64_t w_total() const;
};

struct CountTable {
    std::string variant;
    std::vector<CountTableRow> rows;
};

/// Census at thresholds 10^j for each j. The scan must start at 2 or 3 and
/// reach 10^max(j); when p = 2 is absent its conventional values (W_2 = 1,
/// Δ_2 = 1 for the 0..p−1 domains) are folded in. Throws DomainError when the
/// scan does not cover a threshold.
CountTable build_count_table(const ScanData& scan, const std::vector<unsigned>& thresholds);

struct CountDiff {
    unsigned j;
    std::string column;  // e.g. "w=1", "Δ=3"
    std::int64_t ours;
    std::int64_t published;
};

/// Cells that differ from the published table (rows without a published
/// counterpart are skipped).
std::vector<CountDiff> diff_against_reference(const CountTable& table);

/// Σ_i #{w = i} = π(10^j) − 1 for every row that has w.
bool partition_identity_holds(const CountTable& table);

/// Text rendering in the published column layout; `reference_diff` appends a
/// per-row diff column.
std::string render_count_table(const CountTable& table, bool reference_diff);

// ---------------------------------------------------------------------------

enum class ClassStatus { Match, MissingHere, ExtraHere };

struct Delta3Entry {
    u64 p = 0;
    unsigned delta = 0;            // computed Δ_p
    std::vector<u64> witnesses;    // computed classes
    bool in_reference = false;
    std::vector<std::pair<u64, ClassStatus>> classes;  // union of both lists, ascending
};

struct Delta3Census {
    u64 limit = 0;
    std::string variant;
    std::vector<Delta3Entry> entries;  // Δ = 3 here or listed in the reference table (p ≤ limit)
    std::vector<u64> delta_ge4;        // headline discrepancy when nonempty

    std::size_t count_delta3() const;
    bool prime_lists_match() const;
};

Delta3Census delta3_census(const ScanData& scan, u64 limit);
std::string render_delta3(const Delta3Census& census);

// ---------------------------------------------------------------------------

struct FrequencyReport {
    u64 limit = 0;
    std::uint64_t pi = 0;
    std::uint64_t w1 = 0;
    std::uint64_t W1 = 0;
    double w1_fraction() const { return static_cast<double>(w1) / static_cast<double>(pi); }
    double W1_fraction() const { return static_cast<double>(W1) / static_cast<double>(pi); }
};

/// #{w = 1}/π(x) and #{W = 1}/π(x); π counts p = 2 (folded in as above).
FrequencyReport frequencies(const ScanData& scan, u64 limit);
std::string render_frequencies(const FrequencyReport& report, double artin);

/// ScanData assembled in memory from profiles (no file round-trip).
ScanData scan_data_from(const ScanConfig& config, const std::vector<HammingProfile>& profiles);

}  // namespace hamgap
