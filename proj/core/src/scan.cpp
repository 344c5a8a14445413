#include "hamgap/scan.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "hamgap/errors.hpp"

namespace hamgap {

using nlohmann::json;

void validate(const ScanConfig& config) {
    if (config.lo < 2) throw DomainError(fmt::format("scan range must start at 2 or above, got {}", config.lo));
    if (config.hi < config.lo) throw DomainError(fmt::format("empty scan range [{}, {}]", config.lo, config.hi));
    if (config.tasks == 0) throw DomainError("scan needs at least one task");
    if (config.block_size == 0) throw DomainError("scan block size must be positive");
}

void ScanAggregates::add(const HammingProfile& prof) {
    ++primes;
    if (prof.w) ++w[prof.w->weight];
    if (prof.W) ++W[prof.W->weight];
    if (prof.delta) ++delta[prof.delta->delta];
}

namespace {

std::vector<u64> primes_in_range(const ScanConfig& config) {
    auto primes = sieve_primes(config.hi);
    primes.erase(primes.begin(), std::lower_bound(primes.begin(), primes.end(), config.lo));
    return primes;
}

std::size_t block_count(std::size_t primes, std::size_t block_size) { return (primes + block_size - 1) / block_size; }

std::vector<HammingProfile> compute_block(const ScanConfig& config, const std::vector<u64>& primes, std::size_t block) {
    const std::size_t begin = block * config.block_size;
    const std::size_t end = std::min(primes.size(), begin + config.block_size);
    std::vector<HammingProfile> rows;
    rows.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i)
        rows.push_back(hamming_profile(primes[i], config.variant, config.compute, config.engine));
    return rows;
}

void scan_primes(const ScanConfig& config, const std::vector<u64>& primes, std::size_t first_block,
                 const BlockSink& sink) {
    const std::size_t total = block_count(primes.size(), config.block_size);
    std::size_t last = total;
    if (config.max_blocks) last = std::min(total, first_block + *config.max_blocks);
    if (first_block >= last) return;

    if (config.tasks == 1) {
        for (std::size_t b = first_block; b < last; ++b) sink(b, compute_block(config, primes, b));
        return;
    }

    // Workers claim blocks from a shared counter; this thread emits them in order.
    std::mutex mutex;
    std::condition_variable ready;
    std::map<std::size_t, std::vector<HammingProfile>> done;
    std::exception_ptr failure;
    std::atomic<std::size_t> next{first_block};
    std::atomic<bool> stop{false};

    auto worker = [&] {
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= last || stop.load()) return;
            try {
                auto rows = compute_block(config, primes, b);
                std::lock_guard lock(mutex);
                done.emplace(b, std::move(rows));
            } catch (...) {
                std::lock_guard lock(mutex);
                if (!failure) failure = std::current_exception();
                stop = true;
            }
            ready.notify_all();
        }
    };

    std::vector<std::jthread> threads;
    const std::size_t workers = std::min<std::size_t>(config.tasks, last - first_block);
    for (std::size_t t = 0; t < workers; ++t) threads.emplace_back(worker);

    try {
        for (std::size_t b = first_block; b < last; ++b) {
            std::vector<HammingProfile> rows;
            {
                std::unique_lock lock(mutex);
                ready.wait(lock, [&] { return failure || done.count(b) != 0; });
                if (failure) std::rethrow_exception(failure);
                rows = std::move(done.at(b));
                done.erase(b);
            }
            sink(b, rows);
        }
    } catch (...) {
        stop = true;
        throw;
    }
}

json histogram_json(const Histogram& h) {
    json j = json::object();
    for (const auto& [k, v] : h) j[std::to_string(k)] = v;
    return j;
}

Histogram histogram_from(const json& j) {
    Histogram h;
    for (const auto& [k, v] : j.items()) h[static_cast<unsigned>(std::stoul(k))] = v.get<std::uint64_t>();
    return h;
}

json aggregates_json(const ScanAggregates& a) {
    return {{"primes", a.primes}, {"w", histogram_json(a.w)}, {"W", histogram_json(a.W)}, {"delta", histogram_json(a.delta)}};
}

json checkpoint_header(const ScanConfig& config) {
    const ScanHeader h = header_for(config);
    json j;
    j["schema"] = kCheckpointSchema;
    j["scan_schema"] = h.schema;
    j["variant"] = h.variant;
    j["compute"] = {config.compute.w, config.compute.W, config.compute.delta};
    j["range"] = {config.lo, config.hi};
    j["format"] = format_name(config.format);
    j["block_size"] = config.block_size;
    j["engine"] = config.engine == DeltaEngine::Bfs ? "bfs" : "dilation";
    j["seed"] = config.seed;
    return j;
}

// Owns a C stream so every block can be flushed and fsync'd.
class SyncedFile {
public:
    SyncedFile(const std::filesystem::path& path, const char* mode) : path_(path), f_(std::fopen(path.c_str(), mode)) {
        if (!f_) throw IoError(fmt::format("cannot open '{}'", path.string()));
    }
    ~SyncedFile() {
        if (f_) std::fclose(f_);
    }
    SyncedFile(const SyncedFile&) = delete;
    SyncedFile& operator=(const SyncedFile&) = delete;

    void write(const std::string& s) {
        if (std::fwrite(s.data(), 1, s.size(), f_) != s.size())
            throw IoError(fmt::format("write to '{}' failed", path_.string()));
    }
    void sync() {
        if (std::fflush(f_) != 0 || ::fsync(fileno(f_)) != 0)
            throw IoError(fmt::format("flush of '{}' failed", path_.string()));
    }
    std::uint64_t position() const { return static_cast<std::uint64_t>(std::ftell(f_)); }

private:
    std::filesystem::path path_;
    std::FILE* f_;
};

struct ResumePoint {
    std::size_t next_block = 0;
    std::uint64_t bytes = 0;
    // End of the last intact checkpoint line; anything after it is torn.
    std::uint64_t checkpoint_bytes = 0;
    bool needs_newline = false;
    ScanAggregates aggregates;
};

std::optional<ResumePoint> load_checkpoint(const ScanConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string line;
    if (!std::getline(in, line) || in.eof()) return std::nullopt;
    ResumePoint rp;
    rp.checkpoint_bytes = static_cast<std::uint64_t>(in.tellg());
    try {
        const json head = json::parse(line);
        if (head.value("schema", "") != kCheckpointSchema)
            throw IoError(fmt::format("checkpoint '{}' has an unknown schema", path.string()));
        json expected = checkpoint_header(config);
        for (const char* key : {"scan_schema", "variant", "compute", "range", "format", "block_size", "engine"})
            if (head.at(key) != expected.at(key))
                throw IoError(fmt::format("checkpoint '{}' was written for a different configuration ({})", path.string(), key));
        rp.bytes = head.at("header_bytes").get<std::uint64_t>();
    } catch (const json::exception& e) {
        throw IoError(fmt::format("corrupt checkpoint header in '{}': {}", path.string(), e.what()));
    }
    while (std::getline(in, line)) {
        json rec;
        try {
            rec = json::parse(line);
        } catch (const json::exception&) {
            break;  // torn trailing record: resume from the previous one
        }
        rp.needs_newline = in.eof();
        rp.checkpoint_bytes = rp.needs_newline ? rp.checkpoint_bytes + line.size() : static_cast<std::uint64_t>(in.tellg());
        rp.next_block = rec.at("block").get<std::size_t>() + 1;
        rp.bytes = rec.at("bytes").get<std::uint64_t>();
        const json& a = rec.at("aggregates");
        rp.aggregates.primes = a.at("primes").get<std::uint64_t>();
        rp.aggregates.w = histogram_from(a.at("w"));
        rp.aggregates.W = histogram_from(a.at("W"));
        rp.aggregates.delta = histogram_from(a.at("delta"));
    }
    return rp;
}

}  // namespace

void scan_blocks(const ScanConfig& config, std::size_t first_block, const BlockSink& sink) {
    validate(config);
    scan_primes(config, primes_in_range(config), first_block, sink);
}

std::vector<HammingProfile> scan_profiles(const ScanConfig& config) {
    std::vector<HammingProfile> out;
    scan_blocks(config, 0, [&](std::size_t, const std::vector<HammingProfile>& rows) {
        out.insert(out.end(), rows.begin(), rows.end());
    });
    return out;
}

ScanOutcome run_scan(const ScanConfig& config, std::ostream& out) {
    validate(config);
    const auto primes = primes_in_range(config);
    ScanOutcome outcome;
    outcome.blocks_total = block_count(primes.size(), config.block_size);
    out << format_header(header_for(config), config.format);
    scan_primes(config, primes, 0, [&](std::size_t, const std::vector<HammingProfile>& rows) {
        for (const auto& prof : rows) {
            out << format_row(to_row(prof), config.format);
            outcome.aggregates.add(prof);
        }
        ++outcome.blocks_done;
    });
    out.flush();
    if (!out) throw IoError("writing scan output failed");
    return outcome;
}

ScanOutcome run_scan_to_file(const ScanConfig& config, const std::filesystem::path& output) {
    validate(config);
    const auto primes = primes_in_range(config);
    ScanOutcome outcome;
    outcome.blocks_total = block_count(primes.size(), config.block_size);

    std::optional<ResumePoint> resume;
    if (config.checkpoint) resume = load_checkpoint(config, *config.checkpoint);

    if (resume) {
        std::error_code ec;
        const auto size = std::filesystem::file_size(output, ec);
        if (ec || size < resume->bytes)
            throw IoError(fmt::format("output '{}' is shorter than its checkpoint records", output.string()));
        std::filesystem::resize_file(output, resume->bytes, ec);
        if (ec) throw IoError(fmt::format("cannot truncate '{}': {}", output.string(), ec.message()));
        std::filesystem::resize_file(*config.checkpoint, resume->checkpoint_bytes, ec);
        if (ec) throw IoError(fmt::format("cannot truncate '{}': {}", config.checkpoint->string(), ec.message()));
        if (resume->needs_newline) {
            SyncedFile ck(*config.checkpoint, "ab");
            ck.write("\n");
            ck.sync();
        }
        outcome.aggregates = resume->aggregates;
        outcome.blocks_done = resume->next_block;
        outcome.resumed_from = resume->next_block;
    } else {
        SyncedFile out(output, "wb");
        out.write(format_header(header_for(config), config.format));
        out.sync();
        if (config.checkpoint) {
            json head = checkpoint_header(config);
            head["header_bytes"] = out.position();
            SyncedFile ck(*config.checkpoint, "wb");
            ck.write(head.dump() + "\n");
            ck.sync();
        }
    }

    SyncedFile out(output, "ab");
    std::optional<SyncedFile> ck;
    if (config.checkpoint) ck.emplace(*config.checkpoint, "ab");

    scan_primes(config, primes, outcome.blocks_done, [&](std::size_t block, const std::vector<HammingProfile>& rows) {
        for (const auto& prof : rows) {
            out.write(format_row(to_row(prof), config.format));
            outcome.aggregates.add(prof);
        }
        out.sync();
        ++outcome.blocks_done;
        if (ck) {
            json rec{{"block", block}, {"rows", rows.size()}, {"bytes", out.position()},
                     {"aggregates", aggregates_json(outcome.aggregates)}};
            ck->write(rec.dump() + "\n");
            ck->sync();
        }
    });
    return outcome;
}

}  // namespace hamgap
