#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "opbeam/optics.hpp"
#include "opbeam/orbit.hpp"
#include "opbeam/power.hpp"
#include "opbeam/report.hpp"
#include "opbeam/rflink.hpp"
#include "opbeam/version.hpp"

namespace opbeam::scenario {

struct PropulsionScenario {
    orbit::PropulsionSpec primary;    // thruster the budget is flown on
    double alternative_isp = 1000.0;  // comparison option reported alongside, s
    double sizing_dv = 5.0;           // annual delta-v the tanks are sized for, m/s
    double retreat_dv = 1.0;          // one-off retreat maneuver, m/s
    double retreat_nominal_min = 0.5;  // nominal retreat dv family, m/s
    double retreat_nominal_max = 1.0;
};

struct OpticalScenario {
    optics::OpticalTxSpec tx;
    optics::JitterSpec jitter;
    // Achieved closed-loop pointing residual, rad. Distinct from the jitter
    // sigmas: this is the controlled-tracking regime the pointing
    // requirement applies to, while the sigmas describe uncontrolled
    // drift-and-stare statistics for the capture estimate.
    double pointing_residual = 20.0 * 1e-6;
    double receiver_radius = 0.05;           // customer aperture radius, m
    double doppler_relative_speed = 7500.0;  // representative LEO closing speed, m/s
};

// Pass/fail bounds applied by evaluate(). Defaults reproduce the baseline
// mission envelope; values use the same units the compared lines report.
struct RequirementSet {
    double max_pointing_residual = 20.0 * 1e-6;  // rad
    double separation_envelope_min = 100.0;      // m
    double separation_envelope_max = 500.0;      // m
    double min_delivered_power = 0.0;            // W
    double annual_dv_budget_min = 1.0;           // m/s, design band floor (context only)
    double annual_dv_budget_max = 10.0;          // m/s, hard ceiling
    bool rf_must_close = true;
};

/**
 * Fully resolved mission description. Field defaults ARE the baseline
 * mission, so an empty scenario document evaluates the baseline unchanged.
 * source_text preserves the original document (comments included) so path
 * overrides can be applied to what the user actually wrote.
 */
struct MissionScenario {
    std::string name = "baseline";
    std::string description;
    int schema_version = kSchemaVersion;
    std::uint64_t seed = 1;
    std::int64_t monte_carlo_samples = 100000;
    // When set, the delivered-power requirement applies after the jittered
    // capture fraction instead of to the ideal chain.
    bool apply_capture_fraction = false;

    orbit::CentralBody body;
    orbit::OrbitSpec chief_orbit;
    orbit::FormationSpec formation;
    PropulsionScenario propulsion;
    OpticalScenario optical;
    rflink::RfLinkSpec rf;
    // rf.separation_km was derived from formation.separation rather than
    // given explicitly; sweeps over the formation range keep tracking it.
    bool rf_separation_from_formation = true;
    power::SolarPanelSpec panel;
    power::BatterySpec battery;
    power::PteChain pte;
    double telemetry_power = 1.0;  // W
    double bus_load = 0.0;         // W
    RequirementSet requirements;

    std::string source_text = "{}";
};

// Parses and fully validates a scenario document. The document is JSON
// with // and /* */ comments permitted; unknown fields are rejected with
// the offending path named. An empty document yields the baseline.
MissionScenario load_scenario(const std::string& document_text);

MissionScenario load_scenario_file(const std::string& path);

// The built-in baseline scenario document (commented JSON, identical to
// the shipped scenarios/baseline.json).
const std::string& baseline_scenario_text();

// Canonical strict-JSON form of the resolved scenario: every field present
// with its schema key, object keys sorted. Identical missions canonicalize
// to identical bytes.
std::string canonical_scenario_text(const MissionScenario& s);

// FNV-1a 64-bit hash of the canonical form, formatted "fnv1a64:<16 hex>".
std::string scenario_hash(const MissionScenario& s);

/**
 * Applies dotted-path assignments like "rf.frequency_ghz=2.5" or
 * "requirements.min_delivered_power=15" to a scenario document and returns
 * the updated document text. Values parse as JSON when they can (numbers,
 * booleans, arrays) and fall back to strings, so the result still has to
 * survive load_scenario validation. Comments in the input are not
 * preserved in the output.
 */
std::string apply_overrides(const std::string& document_text,
                            const std::vector<std::string>& assignments);

// Runs every budget domain and assembles the mission report. Lines appear
// grouped by domain in a stable order; the overall verdict fails iff a
// required line fails. Identical scenarios produce identical reports.
MissionReport evaluate(const MissionScenario& s);

struct SweepRow {
    double parameter_value = 0.0;
    std::vector<double> cells;  // one per column; empty when error is set
    std::string error;
};

struct SweepResult {
    std::string parameter;             // dotted path that was varied
    std::vector<std::string> columns;  // "domain.name" budget-line keys
    std::vector<SweepRow> rows;
};

// Columns reported by sweep() when the caller does not pick their own.
const std::vector<std::string>& default_sweep_columns();

/**
 * Re-evaluates the scenario with the parameter set to each value in turn,
 * extracting the selected budget lines into a rectangular table. The
 * parameter path must name a numeric field of the resolved scenario;
 * per-value validation failures are recorded in that row's error slot
 * rather than aborting the sweep.
 */
SweepResult sweep(const MissionScenario& base, const std::string& parameter,
                  const std::vector<double>& values,
                  std::vector<std::string> columns = {});

std::string render_sweep(const SweepResult& result, ReportFormat format);

// Reference documentation for the scenario schema: every field, unit,
// default, and constraint, as commented JSON.
std::string schema_reference_text();

}  // namespace opbeam::scenario
