#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "hamgap/census.hpp"
#include "hamgap/errors.hpp"
#include "hamgap/scan.hpp"

using namespace hamgap;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("hamgap_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const fs::path p = dir / name;
    fs::remove(p);
    return p;
}

std::string scan_text(ScanConfig c) {
    std::ostringstream out;
    run_scan(c, out);
    return out.str();
}

ScanConfig range(u64 lo, u64 hi) {
    ScanConfig c;
    c.lo = lo;
    c.hi = hi;
    return c;
}

}  // namespace

TEST(Scan, SmallRangeRows) {
    std::istringstream in(scan_text(range(3, 7)));
    const ScanData d = read_scan(in);
    ASSERT_EQ(d.rows.size(), 3u);
    const unsigned want[3][4] = {{3, 1, 1, 2}, {5, 1, 1, 2}, {7, 2, 2, 2}};
    for (int i = 0; i < 3; ++i) {
        EXPECT_EQ(d.rows[i].p, want[i][0]);
        EXPECT_EQ(d.rows[i].w, want[i][1]);
        EXPECT_EQ(d.rows[i].W, want[i][2]);
        EXPECT_EQ(d.rows[i].delta, want[i][3]);
    }
    EXPECT_EQ(d.rows[2].witnesses, (std::vector<u64>{0, 6}));
    EXPECT_EQ(d.header.variant, "canonical");
    EXPECT_EQ(d.header.lo, 3u);
    EXPECT_EQ(d.header.hi, 7u);
}

TEST(Scan, CsvLayout) {
    const std::string text = scan_text(range(3, 7));
    std::istringstream in(text);
    std::string header, columns, first;
    std::getline(in, header);
    std::getline(in, columns);
    std::getline(in, first);
    EXPECT_EQ(header, "# schema=hamgap.scan.v1 variant=canonical compute=w,W,delta range=3..7");
    EXPECT_EQ(columns, "p,r,w,W,delta,witnesses,checksum");
    EXPECT_EQ(first.substr(0, 12), "3,1,1,1,2,1,");
    EXPECT_EQ(first.size(), 12u + 16u);
    EXPECT_EQ(text.find('\r'), std::string::npos);
}

TEST(Scan, FormatsRoundTrip) {
    ScanConfig c = range(2, 3000);
    const auto csv_text = scan_text(c);
    c.format = OutputFormat::Jsonl;
    const auto jsonl_text = scan_text(c);
    std::istringstream a(csv_text), b(jsonl_text);
    const ScanData x = read_scan(a), y = read_scan(b);
    EXPECT_EQ(x.format, OutputFormat::Csv);
    EXPECT_EQ(y.format, OutputFormat::Jsonl);
    EXPECT_EQ(x.rows, y.rows);
    EXPECT_EQ(x.rows.size(), 430u);
    const auto profiles = scan_profiles(c);
    ASSERT_EQ(profiles.size(), x.rows.size());
    for (std::size_t i = 0; i < profiles.size(); ++i) EXPECT_EQ(to_row(profiles[i]), x.rows[i]);
    // p = 2: w undefined, W = Δ = 1.
    EXPECT_FALSE(x.rows[0].w.has_value());
    EXPECT_EQ(x.rows[0].W, 1u);
    EXPECT_EQ(x.rows[0].delta, 1u);
}

TEST(Scan, RejectsUnknownSchema) {
    std::string csv = scan_text(range(3, 50));
    csv.replace(csv.find("hamgap.scan.v1"), 14, "hamgap.scan.v9");
    std::istringstream in(csv);
    EXPECT_THROW(read_scan(in), FormatError);

    ScanConfig c = range(3, 50);
    c.format = OutputFormat::Jsonl;
    std::string jl = scan_text(c);
    jl.replace(jl.find("hamgap.scan.v1"), 14, "other.schema");
    std::istringstream in2(jl);
    EXPECT_THROW(read_scan(in2), FormatError);

    std::istringstream garbage("p,r\n1,2\n");
    EXPECT_THROW(read_scan(garbage), FormatError);
}

TEST(Scan, PartialComputeColumns) {
    ScanConfig c = range(3, 100);
    c.compute = ComputeSet{true, true, false};
    std::istringstream in(scan_text(c));
    const ScanData d = read_scan(in);
    EXPECT_FALSE(d.header.compute.delta);
    for (const auto& r : d.rows) {
        EXPECT_TRUE(r.w.has_value());
        EXPECT_FALSE(r.delta.has_value());
        EXPECT_FALSE(r.checksum.has_value());
    }
}

TEST(Scan, DeterministicAcrossTaskCounts) {
    ScanConfig c = range(3, 20000);
    c.block_size = 97;
    c.tasks = 1;
    const auto one = scan_text(c);
    c.tasks = 8;
    EXPECT_EQ(scan_text(c), one);
    c.block_size = 4096;
    EXPECT_EQ(scan_text(c), one);
}

TEST(Scan, RejectsBadConfig) {
    EXPECT_THROW(validate(range(1, 10)), DomainError);
    EXPECT_THROW(validate(range(10, 5)), DomainError);
    ScanConfig c = range(3, 10);
    c.tasks = 0;
    EXPECT_THROW(validate(c), DomainError);
}

TEST(Checkpoint, ResumeIsByteIdentical) {
    for (auto fmt : {OutputFormat::Csv, OutputFormat::Jsonl}) {
        ScanConfig c = range(3, 8000);
        c.block_size = 100;
        c.format = fmt;
        c.tasks = 3;
        const fs::path cold = scratch("cold.out");
        const auto cold_outcome = run_scan_to_file(c, cold);
        EXPECT_TRUE(cold_outcome.complete());

        const fs::path warm = scratch("warm.out");
        c.checkpoint = scratch("warm.ckpt");
        c.max_blocks = 4;
        auto o = run_scan_to_file(c, warm);
        EXPECT_FALSE(o.complete());
        EXPECT_EQ(o.blocks_done, 4u);

        // Simulate a crash mid-block: garbage after the last checkpointed byte
        // and a torn checkpoint record.
        {
            std::ofstream junk(warm, std::ios::app);
            junk << "99991,13,1,1,2,5";
            std::ofstream torn(*c.checkpoint, std::ios::app);
            torn << "{\"block\":4,\"rows";
        }
        c.max_blocks = 5;
        o = run_scan_to_file(c, warm);
        EXPECT_EQ(o.resumed_from, 4u);
        c.max_blocks.reset();
        o = run_scan_to_file(c, warm);
        EXPECT_EQ(o.resumed_from, 9u);
        EXPECT_TRUE(o.complete());
        EXPECT_EQ(o.aggregates, cold_outcome.aggregates);
        EXPECT_EQ(slurp(warm), slurp(cold));

        // A finished checkpoint resumes to a no-op.
        o = run_scan_to_file(c, warm);
        EXPECT_EQ(o.resumed_from, o.blocks_total);
        EXPECT_EQ(slurp(warm), slurp(cold));
    }
}

TEST(Checkpoint, MismatchedConfigRefused) {
    ScanConfig c = range(3, 2000);
    c.block_size = 50;
    c.checkpoint = scratch("mismatch.ckpt");
    c.max_blocks = 2;
    const fs::path out = scratch("mismatch.out");
    run_scan_to_file(c, out);
    c.variant = DeltaVariant::interval();
    EXPECT_THROW(run_scan_to_file(c, out), IoError);
}

TEST(Checkpoint, IoFailureKeepsCheckpoint) {
    ScanConfig c = range(3, 2000);
    c.checkpoint = scratch("io.ckpt");
    EXPECT_THROW(run_scan_to_file(c, "/nonexistent-dir/out.csv"), IoError);
    EXPECT_THROW(run_scan_to_file(range(3, 100), "/nonexistent-dir/out.csv"), IoError);
}

TEST(Aggregates, MatchRows) {
    ScanConfig c = range(2, 5000);
    std::ostringstream out;
    const auto o = run_scan(c, out);
    EXPECT_EQ(o.aggregates.primes, 669u);
    std::uint64_t w = 0;
    for (auto [k, v] : o.aggregates.w) w += v;
    EXPECT_EQ(w, 668u);
}
