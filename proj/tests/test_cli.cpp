#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "opbeam/report.hpp"
#include "opbeam/scenario.hpp"
#include "opbeam/version.hpp"

using namespace opbeam::scenario;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

// Runs the installed binary through the shell, capturing stdout; stderr goes
// to stderr_sink so diagnostics never pollute the captured stream.
CliResult run_cli(const std::string& args, const std::string& stderr_sink = "/dev/null") {
    const std::string command =
        std::string("'") + OPBEAM_CLI_PATH + "' " + args + " 2>" + stderr_sink;
    FILE* pipe = ::popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult result;
    char buffer[4096];
    std::size_t n = 0;
    while ((n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) {
        result.out.append(buffer, n);
    }
    const int status = ::pclose(pipe);
    if (WIFEXITED(status)) {
        result.exit_code = WEXITSTATUS(status);
    }
    return result;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream input(path, std::ios::binary);
    REQUIRE_MESSAGE(input.is_open(), "cannot open " << path.string());
    std::ostringstream buffer;
    buffer << input.rdbuf();
    return buffer.str();
}

std::filesystem::path scratch_path(const std::string& stem) {
    return std::filesystem::temp_directory_path() /
           (stem + "." + std::to_string(::getpid()) + ".tmp");
}

bool starts_with(const std::string& text, const std::string& prefix) {
    return text.rfind(prefix, 0) == 0;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("evaluate prints a text report and exits zero on a passing mission") {
    const CliResult result = run_cli("evaluate");
    CHECK_EQ(result.exit_code, 0);
    CHECK(starts_with(result.out, "mission report: baseline\noverall: pass\n"));
    CHECK(result.out.find("[orbit]") != std::string::npos);
    CHECK(result.out.find("[optics]") != std::string::npos);
    CHECK(result.out.find("[rf]") != std::string::npos);
    CHECK(result.out.find("[power]") != std::string::npos);
}

TEST_CASE("machine output parses back into the same report the library produces") {
    const CliResult result = run_cli("evaluate -f machine");
    CHECK_EQ(result.exit_code, 0);
    const MissionReport parsed = parse_report(result.out);
    CHECK_EQ(parsed.overall_verdict, Verdict::pass);
    CHECK(parsed == evaluate(load_scenario("{}")));
}

TEST_CASE("identical invocations produce byte-identical machine output") {
    const CliResult first = run_cli("evaluate -f machine");
    const CliResult second = run_cli("evaluate -f machine");
    CHECK_EQ(first.exit_code, 0);
    CHECK_EQ(first.out, second.out);
}

TEST_CASE("the machine baseline matches the checked-in reference bytes") {
    const CliResult result = run_cli("evaluate -f machine");
    CHECK_EQ(result.exit_code, 0);
    const std::string golden =
        slurp(std::filesystem::path(OPBEAM_REPO_DIR) / "tests/golden/baseline_report.json");
    CHECK_EQ(result.out, golden);
}

TEST_CASE("a failing requirement flips the exit code to one, still printing the report") {
    const CliResult result =
        run_cli("evaluate --set requirements.min_delivered_power=100 -f machine");
    CHECK_EQ(result.exit_code, 1);
    const MissionReport parsed = parse_report(result.out);
    CHECK_EQ(parsed.overall_verdict, Verdict::fail);
    CHECK_EQ(parsed.find("power", "delivered_power")->verdict, Verdict::fail);
}

TEST_CASE("usage and input errors exit two and keep stdout clean") {
    SUBCASE("missing scenario file") {
        const std::filesystem::path errors = scratch_path("opbeam_stderr");
        const CliResult result =
            run_cli("evaluate -s /nonexistent/mission.json -f machine", errors.string());
        CHECK_EQ(result.exit_code, 2);
        CHECK(result.out.empty());
        const std::string diagnostics = slurp(errors);
        CHECK(diagnostics.find("cannot read scenario file") != std::string::npos);
        std::filesystem::remove(errors);
    }
    SUBCASE("unknown flag") {
        const CliResult result = run_cli("evaluate --frobnicate");
        CHECK_EQ(result.exit_code, 2);
    }
    SUBCASE("no subcommand") {
        const CliResult result = run_cli("");
        CHECK_EQ(result.exit_code, 2);
    }
    SUBCASE("bad scenario field via --set") {
        const std::filesystem::path errors = scratch_path("opbeam_stderr_set");
        const CliResult result =
            run_cli("evaluate --set orbit.typo_km=1 -f machine", errors.string());
        CHECK_EQ(result.exit_code, 2);
        CHECK(result.out.empty());
        CHECK(slurp(errors).find("orbit.typo_km") != std::string::npos);
        std::filesystem::remove(errors);
    }
}

TEST_CASE("domain subcommands report only their own lines") {
    const char* domains[] = {"orbit", "optics", "rf", "power"};
    for (const char* domain : domains) {
        CAPTURE(domain);
        const CliResult result = run_cli(std::string(domain) + " -f machine");
        CHECK_EQ(result.exit_code, 0);
        const MissionReport parsed = parse_report(result.out);
        CHECK_FALSE(parsed.lines.empty());
        for (const BudgetLine& line : parsed.lines) {
            CHECK_EQ(line.domain, domain);
        }
    }
}

TEST_CASE("domain exit codes reflect only the lines that domain owns") {
    CHECK_EQ(run_cli("rf --set rf.link_margin_db=30").exit_code, 1);
    CHECK_EQ(run_cli("orbit --set rf.link_margin_db=30").exit_code, 0);
}

TEST_CASE("the seed flag overrides the scenario seed end to end") {
    const CliResult base = run_cli("evaluate -f machine");
    const CliResult reseeded = run_cli("evaluate --seed 7 -f machine");
    CHECK_EQ(reseeded.exit_code, 0);
    const MissionReport parsed = parse_report(reseeded.out);
    CHECK_EQ(parsed.provenance.seed, 7);
    CHECK(parsed.find("optics", "capture_fraction_jittered")->value !=
          parse_report(base.out).find("optics", "capture_fraction_jittered")->value);
}

TEST_CASE("output redirection writes the same bytes stdout would carry") {
    const std::filesystem::path report_path = scratch_path("opbeam_report");
    const CliResult redirected =
        run_cli("evaluate -f machine -o " + report_path.string());
    CHECK_EQ(redirected.exit_code, 0);
    CHECK(redirected.out.empty());
    const CliResult direct = run_cli("evaluate -f machine");
    CHECK_EQ(slurp(report_path), direct.out);
    std::filesystem::remove(report_path);
}

TEST_CASE("a scenario file naming the baseline reproduces the built-in run") {
    const std::filesystem::path baseline =
        std::filesystem::path(OPBEAM_REPO_DIR) / "scenarios/baseline.json";
    const CliResult from_file = run_cli("evaluate -s " + baseline.string() + " -f machine");
    const CliResult builtin = run_cli("evaluate -f machine");
    CHECK_EQ(from_file.exit_code, 0);
    CHECK_EQ(from_file.out, builtin.out);
}

TEST_CASE("the bundled variant scenario evaluates from the command line") {
    const std::filesystem::path variant =
        std::filesystem::path(OPBEAM_REPO_DIR) / "scenarios/gaussian_close_hold.json";
    const CliResult result = run_cli("evaluate -s " + variant.string() + " -f machine");
    CHECK_EQ(result.exit_code, 0);
    const MissionReport parsed = parse_report(result.out);
    CHECK_EQ(parsed.scenario_name, "gaussian_close_hold");
    CHECK_EQ(parsed.overall_verdict, Verdict::pass);
}

TEST_CASE("sweep tabulates values in both formats") {
    const std::string common =
        "sweep --param formation.sma_bias_m --values 1,10 "
        "--columns orbit.drift_per_day,orbit.annual_stationkeeping_dv "
        "--set monte_carlo_samples=1000";
    const CliResult text = run_cli(common);
    CHECK_EQ(text.exit_code, 0);
    CHECK(starts_with(text.out, "sweep: formation.sma_bias_m"));
    CHECK(text.out.find("orbit.drift_per_day") != std::string::npos);

    const CliResult machine = run_cli(common + " -f machine");
    CHECK_EQ(machine.exit_code, 0);
    const nlohmann::json parsed = nlohmann::json::parse(machine.out);
    CHECK_EQ(parsed["parameter"], "formation.sma_bias_m");
    REQUIRE_EQ(parsed["rows"].size(), std::size_t{2});
    CHECK(parsed["rows"][0]["cells"][0].get<double>() ==
          doctest::Approx(143.44342032237859).epsilon(1e-12));
}

TEST_CASE("sweep rejects malformed values with exit two") {
    const CliResult result =
        run_cli("sweep --param formation.sma_bias_m --values 1,ten --columns rf.fspl");
    CHECK_EQ(result.exit_code, 2);
}

TEST_CASE("schema prints the annotated reference document") {
    const CliResult result = run_cli("schema");
    CHECK_EQ(result.exit_code, 0);
    CHECK_EQ(result.out, schema_reference_text());
}

TEST_CASE("the version flag reports the library version") {
    const CliResult result = run_cli("--version");
    CHECK_EQ(result.exit_code, 0);
    CHECK(result.out.find(opbeam::kToolVersion) != std::string::npos);
}

}  // TEST_SUITE("cli")
