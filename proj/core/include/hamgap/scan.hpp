#pragma once

// Range scans over primes: parallel evaluation in prime blocks, ordered
// emission, versioned CSV/JSONL output and checkpoint/resume.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hamgap/hamming.hpp"

namespace hamgap {

enum class OutputFormat { Csv, Jsonl };

std::string format_name(OutputFormat f);
OutputFormat parse_format(std::string_view name);

inline constexpr const char* kScanSchema = "hamgap.scan.v1";
inline constexpr const char* kCheckpointSchema = "hamgap.checkpoint.v1";

struct ScanConfig {
    u64 lo = 2;
    u64 hi = 0;
    unsigned tasks = 1;
    DeltaVariant variant;
    ComputeSet compute;
    DeltaEngine engine = DeltaEngine::Dilation;
    OutputFormat format = OutputFormat::Csv;
    std::optional<std::filesystem::path> checkpoint;
    std::uint64_t seed = 0;  // recorded in checkpoints; the scan itself is deterministic
    std::size_t block_size = 4096;
    // Stop after this many blocks have been emitted in the current run.
    std::optional<std::size_t> max_blocks;
};

/// Throws DomainError for an empty or inverted range, lo < 2, tasks = 0.
void validate(const ScanConfig& config);

/// Distribution of a statistic: value -> number of primes.
using Histogram = std::map<unsigned, std::uint64_t>;

struct ScanAggregates {
    std::uint64_t primes = 0;
    Histogram w, W, delta;

    void add(const HammingProfile& prof);
    bool operator==(const ScanAggregates&) const = default;
};

/// One parsed output row.
struct ScanRow {
    u64 p = 0;
    unsigned r = 0;
    std::optional<unsigned> w, W, delta;
    std::vector<u64> witnesses;
    std::optional<std::uint64_t> checksum;

    bool operator==(const ScanRow&) const = default;
};

ScanRow to_row(const HammingProfile& prof);

struct ScanHeader {
    std::string schema = kScanSchema;
    std::string variant = "canonical";
    ComputeSet compute;
    u64 lo = 0;
    u64 hi = 0;
};

ScanHeader header_for(const ScanConfig& config);

std::string format_header(const ScanHeader& header, OutputFormat format);
std::string format_row(const ScanRow& row, OutputFormat format);

struct ScanData {
    ScanHeader header;
    OutputFormat format = OutputFormat::Csv;
    std::vector<ScanRow> rows;
};

/// Parses CSV or JSONL scan output (format detected from the first line).
/// Throws FormatError on unknown schema ids or malformed rows.
ScanData read_scan(std::istream& in);
ScanData read_scan_file(const std::filesystem::path& path);

/// Profiles for every prime in [lo, hi], ascending. Blocks are computed by
/// `tasks` workers; `sink` receives each block in order on the calling thread.
using BlockSink = std::function<void(std::size_t block, const std::vector<HammingProfile>& rows)>;
void scan_blocks(const ScanConfig& config, std::size_t first_block, const BlockSink& sink);

std::vector<HammingProfile> scan_profiles(const ScanConfig& config);

struct ScanOutcome {
    ScanAggregates aggregates;
    std::size_t blocks_total = 0;
    std::size_t blocks_done = 0;   // including blocks restored from a checkpoint
    std::size_t resumed_from = 0;  // first block computed in this run
    bool complete() const { return blocks_done == blocks_total; }
};

/// Streams header + rows to `out` (no checkpointing).
ScanOutcome run_scan(const ScanConfig& config, std::ostream& out);

/// Writes to `output`, appending a checkpoint record per block when
/// config.checkpoint is set and resuming from it if present. A resumed run
/// leaves byte-identical output to a cold run. I/O failures throw IoError.
ScanOutcome run_scan_to_file(const ScanConfig& config, const std::filesystem::path& output);

}  // namespace hamgap
