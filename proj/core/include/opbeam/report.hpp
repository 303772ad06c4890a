#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace opbeam::scenario {

// Outcome of one budget line. pass/fail lines carry a requirement; warn
// flags an out-of-family value that does not gate the mission; info lines
// are pure reporting.
enum class Verdict {
    pass,
    fail,
    warn,
    info,
};

const char* verdict_name(Verdict v);
Verdict verdict_from_name(std::string_view name);

struct BudgetLine {
    std::string domain;  // orbit | optics | rf | power
    std::string name;
    double value = 0.0;
    std::string unit;
    std::string requirement;  // human-readable bound, empty for info lines
    Verdict verdict = Verdict::info;
    std::string note;

    friend bool operator==(const BudgetLine&, const BudgetLine&) = default;
};

struct Provenance {
    std::string scenario_hash;  // hash of the fully resolved scenario
    std::uint64_t seed = 0;
    std::string tool_version;
    std::string rng_algorithm;  // sampler behind any Monte Carlo line

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct MissionReport {
    int schema_version = 0;
    std::string scenario_name;
    std::vector<BudgetLine> lines;
    Verdict overall_verdict = Verdict::pass;
    Provenance provenance;

    const BudgetLine* find(std::string_view domain, std::string_view name) const;

    friend bool operator==(const MissionReport&, const MissionReport&) = default;
};

enum class ReportFormat {
    text,     // aligned human-readable table
    machine,  // strict JSON with key-sorted objects, byte-deterministic
};

// Overall verdict implied by a set of lines: fail iff any line fails.
Verdict combined_verdict(const std::vector<BudgetLine>& lines);

// Copy of the report containing only one domain's lines, with the overall
// verdict recomputed over that subset.
MissionReport filter_domain(const MissionReport& report, std::string_view domain);

// Renders a report. Machine output parses back to an identical report via
// parse_report, and identical reports render to identical bytes.
std::string render_report(const MissionReport& report, ReportFormat format);

// Parses machine-format report bytes. Throws ValidationError on documents
// that do not match the report schema.
MissionReport parse_report(const std::string& machine_text);

}  // namespace opbeam::scenario
