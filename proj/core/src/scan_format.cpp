#include <fstream>
#include <istream>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <json.hpp>

#include "hamgap/errors.hpp"
#include "hamgap/scan.hpp"

namespace hamgap {

using nlohmann::json;

namespace {

constexpr const char* kCsvColumns = "p,r,w,W,delta,witnesses,checksum";

std::string compute_string(const ComputeSet& c) {
    std::vector<std::string> parts;
    if (c.w) parts.emplace_back("w");
    if (c.W) parts.emplace_back("W");
    if (c.delta) parts.emplace_back("delta");
    return fmt::format("{}", fmt::join(parts, ","));
}

ComputeSet parse_compute(const std::vector<std::string>& names) {
    ComputeSet c{false, false, false};
    for (const auto& n : names) {
        if (n == "w") c.w = true;
        else if (n == "W") c.W = true;
        else if (n == "delta") c.delta = true;
        else if (!n.empty()) throw FormatError(fmt::format("unknown statistic '{}' in scan header", n));
    }
    return c;
}

std::string opt_string(const std::optional<unsigned>& v) { return v ? std::to_string(*v) : std::string(); }

u64 parse_u64(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        const u64 v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw FormatError(fmt::format("malformed {} field '{}'", what, s));
    }
}

std::optional<unsigned> parse_opt(const std::string& s, const char* what) {
    if (s.empty()) return std::nullopt;
    return static_cast<unsigned>(parse_u64(s, what));
}

void check_schema(const std::string& schema) {
    if (schema != kScanSchema) throw FormatError(fmt::format("unknown scan schema id '{}'", schema));
}

}  // namespace

std::string format_name(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "jsonl"; }

OutputFormat parse_format(std::string_view name) {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "jsonl") return OutputFormat::Jsonl;
    throw DomainError(fmt::format("unknown output format '{}'", name));
}

ScanRow to_row(const HammingProfile& prof) {
    ScanRow row;
    row.p = prof.p;
    row.r = prof.r;
    if (prof.w) row.w = prof.w->weight;
    if (prof.W) row.W = prof.W->weight;
    if (prof.delta) {
        row.delta = prof.delta->delta;
        row.witnesses = prof.delta->witnesses;
        row.checksum = prof.delta->checksum();
    }
    return row;
}

ScanHeader header_for(const ScanConfig& config) {
    ScanHeader h;
    h.variant = variant_id(config.variant);
    h.compute = config.compute;
    h.lo = config.lo;
    h.hi = config.hi;
    return h;
}

std::string format_header(const ScanHeader& header, OutputFormat format) {
    if (format == OutputFormat::Csv) {
        return fmt::format("# schema={} variant={} compute={} range={}..{}\n{}\n", header.schema, header.variant,
                           compute_string(header.compute), header.lo, header.hi, kCsvColumns);
    }
    json j;
    j["schema"] = header.schema;
    j["variant"] = header.variant;
    std::vector<std::string> comp;
    boost::split(comp, compute_string(header.compute), boost::is_any_of(","));
    if (comp.size() == 1 && comp[0].empty()) comp.clear();
    j["compute"] = comp;
    j["range"] = {header.lo, header.hi};
    return j.dump() + "\n";
}

std::string format_row(const ScanRow& row, OutputFormat format) {
    if (format == OutputFormat::Csv) {
        return fmt::format("{},{},{},{},{},{},{}\n", row.p, row.r, opt_string(row.w), opt_string(row.W),
                           opt_string(row.delta), fmt::join(row.witnesses, ";"),
                           row.checksum ? fmt::format("{:016x}", *row.checksum) : std::string());
    }
    json j;
    j["p"] = row.p;
    j["r"] = row.r;
    j["w"] = row.w ? json(*row.w) : json(nullptr);
    j["W"] = row.W ? json(*row.W) : json(nullptr);
    j["delta"] = row.delta ? json(*row.delta) : json(nullptr);
    j["witnesses"] = row.witnesses;
    j["checksum"] = row.checksum ? json(fmt::format("{:016x}", *row.checksum)) : json(nullptr);
    return j.dump() + "\n";
}

ScanData read_scan(std::istream& in) {
    ScanData data;
    std::string line;
    if (!std::getline(in, line)) throw FormatError("empty scan input");
    if (boost::starts_with(line, "#")) {
        data.format = OutputFormat::Csv;
        std::vector<std::string> tokens;
        const std::string body = boost::trim_copy(line.substr(1));
        boost::split(tokens, body, boost::is_any_of(" "), boost::token_compress_on);
        std::map<std::string, std::string> kv;
        for (const auto& t : tokens) {
            const auto eq = t.find('=');
            if (eq == std::string::npos) throw FormatError(fmt::format("malformed header token '{}'", t));
            kv[t.substr(0, eq)] = t.substr(eq + 1);
        }
        check_schema(kv["schema"]);
        data.header.schema = kv["schema"];
        data.header.variant = kv["variant"];
        std::vector<std::string> comp;
        boost::split(comp, kv["compute"], boost::is_any_of(","));
        data.header.compute = parse_compute(comp);
        const auto& range = kv["range"];
        const auto dots = range.find("..");
        if (dots == std::string::npos) throw FormatError(fmt::format("malformed range '{}'", range));
        data.header.lo = parse_u64(range.substr(0, dots), "range");
        data.header.hi = parse_u64(range.substr(dots + 2), "range");
        if (!std::getline(in, line) || line != kCsvColumns) throw FormatError("missing CSV column header");
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::vector<std::string> f;
            boost::split(f, line, boost::is_any_of(","));
            if (f.size() != 7) throw FormatError(fmt::format("expected 7 CSV fields, got {}: '{}'", f.size(), line));
            ScanRow row;
            row.p = parse_u64(f[0], "p");
            row.r = static_cast<unsigned>(parse_u64(f[1], "r"));
            row.w = parse_opt(f[2], "w");
            row.W = parse_opt(f[3], "W");
            row.delta = parse_opt(f[4], "delta");
            if (!f[5].empty()) {
                std::vector<std::string> ws;
                boost::split(ws, f[5], boost::is_any_of(";"));
                for (const auto& w : ws) row.witnesses.push_back(parse_u64(w, "witness"));
            }
            if (!f[6].empty()) {
                try {
                    row.checksum = std::stoull(f[6], nullptr, 16);
                } catch (const std::exception&) {
                    throw FormatError(fmt::format("malformed checksum '{}'", f[6]));
                }
            }
            data.rows.push_back(std::move(row));
        }
        return data;
    }

    data.format = OutputFormat::Jsonl;
    try {
        const json h = json::parse(line);
        check_schema(h.at("schema").get<std::string>());
        data.header.schema = h.at("schema").get<std::string>();
        data.header.variant = h.at("variant").get<std::string>();
        data.header.compute = parse_compute(h.at("compute").get<std::vector<std::string>>());
        data.header.lo = h.at("range").at(0).get<u64>();
        data.header.hi = h.at("range").at(1).get<u64>();
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const json j = json::parse(line);
            ScanRow row;
            row.p = j.at("p").get<u64>();
            row.r = j.at("r").get<unsigned>();
            auto opt = [&](const char* key) -> std::optional<unsigned> {
                if (j.at(key).is_null()) return std::nullopt;
                return j.at(key).get<unsigned>();
            };
            row.w = opt("w");
            row.W = opt("W");
            row.delta = opt("delta");
            row.witnesses = j.at("witnesses").get<std::vector<u64>>();
            if (!j.at("checksum").is_null()) row.checksum = std::stoull(j.at("checksum").get<std::string>(), nullptr, 16);
            data.rows.push_back(std::move(row));
        }
    } catch (const json::exception& e) {
        throw FormatError(fmt::format("malformed JSONL scan input: {}", e.what()));
    }
    return data;
}

ScanData read_scan_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(fmt::format("cannot open scan file '{}'", path.string()));
    return read_scan(in);
}

}  // namespace hamgap
