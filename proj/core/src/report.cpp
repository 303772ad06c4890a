#include "opbeam/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "opbeam/errors.hpp"

namespace opbeam::scenario {

using nlohmann::json;

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::warn: return "warn";
        case Verdict::info: return "info";
    }
    throw std::logic_error("unhandled verdict");
}

Verdict verdict_from_name(std::string_view name) {
    if (name == "pass") return Verdict::pass;
    if (name == "fail") return Verdict::fail;
    if (name == "warn") return Verdict::warn;
    if (name == "info") return Verdict::info;
    throw ValidationError("unknown verdict '" + std::string(name) + "'");
}

const BudgetLine* MissionReport::find(std::string_view domain, std::string_view name) const {
    for (const BudgetLine& line : lines) {
        if (line.domain == domain && line.name == name) {
            return &line;
        }
    }
    return nullptr;
}

Verdict combined_verdict(const std::vector<BudgetLine>& lines) {
    for (const BudgetLine& line : lines) {
        if (line.verdict == Verdict::fail) {
            return Verdict::fail;
        }
    }
    return Verdict::pass;
}

MissionReport filter_domain(const MissionReport& report, std::string_view domain) {
    MissionReport filtered;
    filtered.schema_version = report.schema_version;
    filtered.scenario_name = report.scenario_name;
    filtered.provenance = report.provenance;
    for (const BudgetLine& line : report.lines) {
        if (line.domain == domain) {
            filtered.lines.push_back(line);
        }
    }
    filtered.overall_verdict = combined_verdict(filtered.lines);
    return filtered;
}

namespace {

std::string format_value(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.10g", v);
    return buffer;
}

std::string render_text(const MissionReport& report) {
    std::ostringstream out;
    out << "mission report: " << report.scenario_name << "\n";
    out << "overall: " << verdict_name(report.overall_verdict) << "\n";
    out << "schema_version: " << report.schema_version << "\n";
    out << "scenario_hash: " << report.provenance.scenario_hash << "\n";
    out << "seed: " << report.provenance.seed << "\n";
    out << "tool_version: " << report.provenance.tool_version << "\n";
    out << "rng_algorithm: " << report.provenance.rng_algorithm << "\n";

    std::string current_domain;
    for (const BudgetLine& line : report.lines) {
        if (line.domain != current_domain) {
            current_domain = line.domain;
            out << "\n[" << current_domain << "]\n";
        }
        std::string row = "  " + line.name;
        if (row.size() < 42) {
            row.append(42 - row.size(), ' ');
        } else {
            row += "  ";
        }
        std::string value = format_value(line.value);
        if (value.size() < 16) {
            row.append(16 - value.size(), ' ');
        }
        row += value;
        row += "  ";
        row += line.unit;
        if (line.unit.size() < 8) {
            row.append(8 - line.unit.size(), ' ');
        } else {
            row += "  ";
        }
        if (line.verdict != Verdict::info) {
            row += verdict_name(line.verdict);
        }
        if (!line.requirement.empty()) {
            row += "  requires ";
            row += line.requirement;
        }
        if (!line.note.empty()) {
            row += "  (";
            row += line.note;
            row += ")";
        }
        out << row << "\n";
    }
    return out.str();
}

json line_to_json(const BudgetLine& line) {
    if (!std::isfinite(line.value)) {
        throw std::logic_error("budget line '" + line.name + "' carries a non-finite value");
    }
    json j;
    j["domain"] = line.domain;
    j["name"] = line.name;
    j["value"] = line.value;
    j["unit"] = line.unit;
    j["requirement"] = line.requirement;
    j["verdict"] = verdict_name(line.verdict);
    j["note"] = line.note;
    return j;
}

std::string render_machine(const MissionReport& report) {
    json j;
    j["schema_version"] = report.schema_version;
    j["scenario_name"] = report.scenario_name;
    j["overall_verdict"] = verdict_name(report.overall_verdict);
    j["provenance"]["scenario_hash"] = report.provenance.scenario_hash;
    j["provenance"]["seed"] = report.provenance.seed;
    j["provenance"]["tool_version"] = report.provenance.tool_version;
    j["provenance"]["rng_algorithm"] = report.provenance.rng_algorithm;
    j["lines"] = json::array();
    for (const BudgetLine& line : report.lines) {
        j["lines"].push_back(line_to_json(line));
    }
    return j.dump(2) + "\n";
}

const json& expect(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) {
        throw ValidationError(std::string("report document is missing '") + key + "'");
    }
    return *it;
}

std::string expect_string(const json& j, const char* key) {
    const json& v = expect(j, key);
    if (!v.is_string()) {
        throw ValidationError(std::string("report field '") + key + "' must be a string");
    }
    return v.get<std::string>();
}

double expect_number(const json& j, const char* key) {
    const json& v = expect(j, key);
    if (!v.is_number()) {
        throw ValidationError(std::string("report field '") + key + "' must be a number");
    }
    return v.get<double>();
}

}  // namespace

std::string render_report(const MissionReport& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::text:
            return render_text(report);
        case ReportFormat::machine:
            return render_machine(report);
    }
    throw std::logic_error("unhandled report format");
}

MissionReport parse_report(const std::string& machine_text) {
    json j;
    try {
        j = json::parse(machine_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("report document is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw ValidationError("report document must be a JSON object");
    }

    MissionReport report;
    const json& version = expect(j, "schema_version");
    if (!version.is_number_integer()) {
        throw ValidationError("report field 'schema_version' must be an integer");
    }
    report.schema_version = version.get<int>();
    report.scenario_name = expect_string(j, "scenario_name");
    report.overall_verdict = verdict_from_name(expect_string(j, "overall_verdict"));

    const json& prov = expect(j, "provenance");
    if (!prov.is_object()) {
        throw ValidationError("report field 'provenance' must be an object");
    }
    report.provenance.scenario_hash = expect_string(prov, "scenario_hash");
    const json& seed = expect(prov, "seed");
    if (!seed.is_number_unsigned() && !seed.is_number_integer()) {
        throw ValidationError("report field 'provenance.seed' must be an integer");
    }
    report.provenance.seed = seed.get<std::uint64_t>();
    report.provenance.tool_version = expect_string(prov, "tool_version");
    report.provenance.rng_algorithm = expect_string(prov, "rng_algorithm");

    const json& lines = expect(j, "lines");
    if (!lines.is_array()) {
        throw ValidationError("report field 'lines' must be an array");
    }
    for (const json& entry : lines) {
        if (!entry.is_object()) {
            throw ValidationError("report lines must be objects");
        }
        BudgetLine line;
        line.domain = expect_string(entry, "domain");
        line.name = expect_string(entry, "name");
        line.value = expect_number(entry, "value");
        line.unit = expect_string(entry, "unit");
        line.requirement = expect_string(entry, "requirement");
        line.verdict = verdict_from_name(expect_string(entry, "verdict"));
        line.note = expect_string(entry, "note");
        report.lines.push_back(std::move(line));
    }
    return report;
}

}  // namespace opbeam::scenario
