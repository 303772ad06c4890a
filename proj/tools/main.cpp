#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "opbeam/errors.hpp"
#include "opbeam/report.hpp"
#include "opbeam/scenario.hpp"
#include "opbeam/version.hpp"

namespace {

namespace scenario = opbeam::scenario;

struct CommonOptions {
    std::string scenario_path;
    std::vector<std::string> sets;
    std::string format = "text";
    std::string output_path;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

void add_common_options(CLI::App* cmd, CommonOptions& options) {
    cmd->add_option("-s,--scenario", options.scenario_path,
                    "Scenario file (JSON, comments allowed); omit for the built-in baseline");
    cmd->add_option("--set", options.sets,
                    "Override a scenario field, e.g. --set rf.frequency_ghz=2.5 (repeatable)")
        ->type_name("PATH=VALUE");
    cmd->add_option("-f,--format", options.format, "Output format")
        ->check(CLI::IsMember({"text", "machine"}))
        ->capture_default_str();
    cmd->add_option("-o,--output", options.output_path,
                    "Write the report to a file instead of stdout");
    auto* seed_option = cmd->add_option("--seed", options.seed,
                                        "Override the scenario RNG seed");
    cmd->final_callback([&options, seed_option] {
        options.seed_given = seed_option->count() > 0;
    });
}

std::string read_file(const std::string& path) {
    std::ifstream input(path, std::ios::binary);
    if (!input) {
        throw opbeam::ValidationError("cannot read scenario file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << input.rdbuf();
    return buffer.str();
}

scenario::MissionScenario load_from_options(const CommonOptions& options) {
    std::string text = options.scenario_path.empty()
                           ? scenario::baseline_scenario_text()
                           : read_file(options.scenario_path);
    std::vector<std::string> assignments = options.sets;
    if (options.seed_given) {
        assignments.push_back("seed=" + std::to_string(options.seed));
    }
    if (!assignments.empty()) {
        text = scenario::apply_overrides(text, assignments);
    }
    return scenario::load_scenario(text);
}

void write_output(const CommonOptions& options, const std::string& content) {
    if (options.output_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream output(options.output_path, std::ios::binary);
    if (!output) {
        throw opbeam::ValidationError("cannot write output file '" + options.output_path +
                                      "'");
    }
    output << content;
}

scenario::ReportFormat parse_format(const std::string& format) {
    return format == "machine" ? scenario::ReportFormat::machine
                               : scenario::ReportFormat::text;
}

int run_report(const CommonOptions& options, const std::string& domain) {
    scenario::MissionScenario mission = load_from_options(options);
    scenario::MissionReport report = scenario::evaluate(mission);
    if (!domain.empty()) {
        report = scenario::filter_domain(report, domain);
    }
    write_output(options, scenario::render_report(report, parse_format(options.format)));
    return report.overall_verdict == scenario::Verdict::fail ? 1 : 0;
}

std::vector<double> parse_values_csv(const std::string& csv) {
    std::vector<double> values;
    std::stringstream stream(csv);
    std::string token;
    while (std::getline(stream, token, ',')) {
        try {
            std::size_t consumed = 0;
            const double v = std::stod(token, &consumed);
            if (consumed != token.size()) {
                throw std::invalid_argument(token);
            }
            values.push_back(v);
        } catch (const std::exception&) {
            throw opbeam::ValidationError("sweep value '" + token + "' is not a number");
        }
    }
    if (values.empty()) {
        throw opbeam::ValidationError("sweep requires at least one value");
    }
    return values;
}

std::vector<std::string> parse_columns_csv(const std::string& csv) {
    std::vector<std::string> columns;
    std::stringstream stream(csv);
    std::string token;
    while (std::getline(stream, token, ',')) {
        if (!token.empty()) {
            columns.push_back(token);
        }
    }
    return columns;
}

int run_sweep(const CommonOptions& options, const std::string& parameter,
              const std::string& values_csv, const std::string& columns_csv) {
    scenario::MissionScenario mission = load_from_options(options);
    const scenario::SweepResult result =
        scenario::sweep(mission, parameter, parse_values_csv(values_csv),
                        parse_columns_csv(columns_csv));
    write_output(options, scenario::render_sweep(result, parse_format(options.format)));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mission analysis for a laser power-beaming companion spacecraft"};
    app.set_version_flag("--version", opbeam::kToolVersion);
    app.require_subcommand(1);

    CommonOptions evaluate_options;
    CLI::App* evaluate_cmd =
        app.add_subcommand("evaluate", "Evaluate every budget domain against requirements");
    add_common_options(evaluate_cmd, evaluate_options);

    struct DomainCommand {
        const char* name;
        const char* help;
        CommonOptions options;
        CLI::App* cmd = nullptr;
    };
    DomainCommand domains[] = {
        {"orbit", "Orbit, formation drift, and station-keeping lines", {}, nullptr},
        {"optics", "Beam geometry, jitter, and capture lines", {}, nullptr},
        {"rf", "Telemetry link budget lines", {}, nullptr},
        {"power", "Power generation and delivery chain lines", {}, nullptr},
    };
    for (DomainCommand& domain : domains) {
        domain.cmd = app.add_subcommand(domain.name, domain.help);
        add_common_options(domain.cmd, domain.options);
    }

    CommonOptions sweep_options;
    std::string sweep_parameter;
    std::string sweep_values;
    std::string sweep_columns;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Re-evaluate while varying one scenario field");
    add_common_options(sweep_cmd, sweep_options);
    sweep_cmd->add_option("--param", sweep_parameter, "Dotted scenario path to vary")
        ->required();
    sweep_cmd->add_option("--values", sweep_values, "Comma-separated parameter values")
        ->required();
    sweep_cmd->add_option("--columns", sweep_columns,
                          "Comma-separated domain.line_name columns to tabulate");

    std::string schema_output;
    CLI::App* schema_cmd =
        app.add_subcommand("schema", "Print the scenario schema reference");
    schema_cmd->add_option("-o,--output", schema_output,
                           "Write the schema to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (evaluate_cmd->parsed()) {
            return run_report(evaluate_options, "");
        }
        for (const DomainCommand& domain : domains) {
            if (domain.cmd->parsed()) {
                return run_report(domain.options, domain.name);
            }
        }
        if (sweep_cmd->parsed()) {
            return run_sweep(sweep_options, sweep_parameter, sweep_values, sweep_columns);
        }
        if (schema_cmd->parsed()) {
            CommonOptions options;
            options.output_path = schema_output;
            write_output(options, scenario::schema_reference_text());
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
