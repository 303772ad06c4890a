#include "opbeam/scenario.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "opbeam/errors.hpp"
#include "opbeam/units.hpp"

namespace opbeam::scenario {

using nlohmann::json;
using units::Quantity;
using units::Unit;

namespace {

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string format_compact(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.10g", v);
    return buffer;
}

json parse_document(const std::string& text) {
    try {
        // last argument enables // and /* */ comments in scenario files
        return json::parse(text, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("scenario document is not valid JSON: ") + e.what());
    }
}

/**
 * Typed, defaulted access to one JSON object with full path tracking.
 * Every key fetched is remembered; finish() rejects any leftover key so
 * typos surface instead of silently falling back to defaults.
 */
class ObjectReader {
public:
    ObjectReader(const json* node, std::string path) : node_(node), path_(std::move(path)) {
        if (node_ != nullptr && !node_->is_object()) {
            throw ValidationError("scenario field '" + path_ + "' must be an object (got " +
                                  node_->type_name() + ")");
        }
    }

    bool has(const char* key) const { return node_ != nullptr && node_->contains(key); }

    double number(const char* key, double fallback) {
        const json* v = fetch(key);
        if (v == nullptr) {
            return fallback;
        }
        if (!v->is_number()) {
            fail(key, "must be a number", *v);
        }
        return v->get<double>();
    }

    std::int64_t integer(const char* key, std::int64_t fallback) {
        const json* v = fetch(key);
        if (v == nullptr) {
            return fallback;
        }
        if (!v->is_number()) {
            fail(key, "must be an integer", *v);
        }
        const double raw = v->get<double>();
        if (raw != std::rint(raw) || std::abs(raw) > 9.007199254740992e15) {
            fail(key, "must be an integer", *v);
        }
        return static_cast<std::int64_t>(raw);
    }

    std::uint64_t unsigned_integer(const char* key, std::uint64_t fallback) {
        const json* v = fetch(key);
        if (v == nullptr) {
            return fallback;
        }
        if (v->is_number_unsigned()) {
            return v->get<std::uint64_t>();
        }
        if (v->is_number_integer() && v->get<std::int64_t>() >= 0) {
            return static_cast<std::uint64_t>(v->get<std::int64_t>());
        }
        fail(key, "must be a non-negative integer", *v);
    }

    bool boolean(const char* key, bool fallback) {
        const json* v = fetch(key);
        if (v == nullptr) {
            return fallback;
        }
        if (!v->is_boolean()) {
            fail(key, "must be a boolean", *v);
        }
        return v->get<bool>();
    }

    std::string text(const char* key, std::string fallback) {
        const json* v = fetch(key);
        if (v == nullptr) {
            return fallback;
        }
        if (!v->is_string()) {
            fail(key, "must be a string", *v);
        }
        return v->get<std::string>();
    }

    // Converts a file-provided value from its schema unit to the target
    // unit. The fallback is already in the target unit and is returned
    // untouched, so defaults never round-trip through a conversion.
    double quantity(const char* key, Unit source_unit, Unit target_unit, double fallback) {
        const json* v = fetch(key);
        if (v == nullptr) {
            return fallback;
        }
        if (!v->is_number()) {
            fail(key, "must be a number", *v);
        }
        return Quantity(v->get<double>(), source_unit).in(target_unit);
    }

    std::pair<double, double> range(const char* key, std::pair<double, double> fallback) {
        const json* v = fetch(key);
        if (v == nullptr) {
            return fallback;
        }
        if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number() || !(*v)[1].is_number()) {
            fail(key, "must be an array of two numbers [min, max]", *v);
        }
        return {(*v)[0].get<double>(), (*v)[1].get<double>()};
    }

    ObjectReader child(const char* key) { return ObjectReader(fetch(key), join(key)); }

    void finish() {
        if (node_ == nullptr) {
            return;
        }
        for (auto it = node_->begin(); it != node_->end(); ++it) {
            if (seen_.find(it.key()) == seen_.end()) {
                throw ValidationError("scenario field '" + join(it.key().c_str()) +
                                      "' is not recognized");
            }
        }
    }

    const std::string& path() const { return path_; }

private:
    const json* fetch(const char* key) {
        seen_.insert(key);
        if (node_ == nullptr) {
            return nullptr;
        }
        auto it = node_->find(key);
        return it == node_->end() ? nullptr : &*it;
    }

    std::string join(const char* key) const {
        return path_.empty() ? std::string(key) : path_ + "." + key;
    }

    [[noreturn]] void fail(const char* key, const char* what, const json& v) const {
        throw ValidationError("scenario field '" + join(key) + "' " + what + " (got " +
                              v.type_name() + ")");
    }

    const json* node_;
    std::string path_;
    std::set<std::string> seen_;
};

void check(bool ok, const std::string& field, const std::string& message) {
    if (!ok) {
        throw ValidationError("scenario field '" + field + "' " + message);
    }
}

template <typename Fn>
void validate_block(const char* block, Fn&& fn) {
    try {
        fn();
    } catch (const ValidationError&) {
        throw;
    } catch (const std::exception& e) {
        throw ValidationError(std::string("scenario block '") + block + "': " + e.what());
    }
}

MissionScenario scenario_from_json(const json& doc, std::string source_text) {
    if (!doc.is_object()) {
        throw ValidationError("scenario document must be a JSON object");
    }

    MissionScenario s;
    s.source_text = std::move(source_text);
    ObjectReader root(&doc, "");

    s.name = root.text("name", s.name);
    s.description = root.text("description", s.description);
    s.schema_version = static_cast<int>(root.integer("schema_version", s.schema_version));
    check(s.schema_version == kSchemaVersion, "schema_version",
          "is not supported (this tool understands version " +
              std::to_string(kSchemaVersion) + ")");
    s.seed = root.unsigned_integer("seed", s.seed);
    s.monte_carlo_samples = root.integer("monte_carlo_samples", s.monte_carlo_samples);
    check(s.monte_carlo_samples >= 1, "monte_carlo_samples", "must be at least 1");
    s.apply_capture_fraction =
        root.boolean("apply_capture_fraction", s.apply_capture_fraction);

    ObjectReader body = root.child("body");
    s.body.mu = body.number("mu_m3_s2", s.body.mu);
    s.body.equatorial_radius = body.number("equatorial_radius_m", s.body.equatorial_radius);
    body.finish();

    ObjectReader orbit_block = root.child("orbit");
    const bool has_sma = orbit_block.has("semimajor_axis_km");
    const bool has_alt = orbit_block.has("altitude_km");
    if (has_sma && has_alt) {
        throw ValidationError("scenario block 'orbit' must set either semimajor_axis_km or "
                              "altitude_km, not both");
    }
    if (has_sma) {
        s.chief_orbit.semimajor_axis =
            Quantity(orbit_block.number("semimajor_axis_km", 0.0), Unit::kilometer)
                .in(Unit::meter);
    } else if (has_alt) {
        s.chief_orbit.semimajor_axis =
            s.body.equatorial_radius +
            Quantity(orbit_block.number("altitude_km", 0.0), Unit::kilometer).in(Unit::meter);
    } else {
        orbit_block.number("semimajor_axis_km", 0.0);  // mark both keys as known
        orbit_block.number("altitude_km", 0.0);
    }
    s.chief_orbit.eccentricity =
        orbit_block.number("eccentricity", s.chief_orbit.eccentricity);
    orbit_block.finish();

    ObjectReader formation = root.child("formation");
    s.formation.separation = formation.number("separation_m", s.formation.separation);
    s.formation.sma_bias = formation.number("sma_bias_m", s.formation.sma_bias);
    s.formation.correction_cadence =
        formation.number("correction_cadence_s", s.formation.correction_cadence);
    formation.finish();

    ObjectReader propulsion = root.child("propulsion");
    s.propulsion.primary.wet_mass =
        propulsion.number("wet_mass_kg", s.propulsion.primary.wet_mass);
    s.propulsion.primary.isp = propulsion.number("isp_s", s.propulsion.primary.isp);
    s.propulsion.alternative_isp =
        propulsion.number("isp_alternative_s", s.propulsion.alternative_isp);
    s.propulsion.primary.g0 = propulsion.number("g0_m_s2", s.propulsion.primary.g0);
    s.propulsion.sizing_dv = propulsion.number("annual_dv_budget_m_s", s.propulsion.sizing_dv);
    s.propulsion.retreat_dv = propulsion.number("retreat_dv_m_s", s.propulsion.retreat_dv);
    const auto retreat_range =
        propulsion.range("retreat_dv_nominal_range_m_s",
                         {s.propulsion.retreat_nominal_min, s.propulsion.retreat_nominal_max});
    s.propulsion.retreat_nominal_min = retreat_range.first;
    s.propulsion.retreat_nominal_max = retreat_range.second;
    propulsion.finish();
    check(s.propulsion.alternative_isp > 0.0, "propulsion.isp_alternative_s",
          "must be positive");
    check(s.propulsion.sizing_dv >= 0.0, "propulsion.annual_dv_budget_m_s",
          "must be non-negative");
    check(s.propulsion.retreat_dv >= 0.0, "propulsion.retreat_dv_m_s",
          "must be non-negative");
    check(s.propulsion.retreat_nominal_min >= 0.0 &&
              s.propulsion.retreat_nominal_min <= s.propulsion.retreat_nominal_max,
          "propulsion.retreat_dv_nominal_range_m_s",
          "must be an ordered non-negative [min, max]");

    ObjectReader optical = root.child("optical");
    s.optical.tx.wavelength = optical.quantity("wavelength_nm", Unit::nanometer, Unit::meter,
                                               s.optical.tx.wavelength);
    s.optical.tx.aperture_diameter =
        optical.number("aperture_diameter_m", s.optical.tx.aperture_diameter);
    s.optical.tx.design_divergence =
        optical.quantity("design_divergence_urad", Unit::microradian, Unit::radian,
                         s.optical.tx.design_divergence);
    const std::string profile = optical.text("beam_profile", "flat_top");
    if (profile == "flat_top") {
        s.optical.tx.profile = optics::BeamProfile::flat_top;
    } else if (profile == "gaussian") {
        s.optical.tx.profile = optics::BeamProfile::gaussian;
    } else {
        throw ValidationError("scenario field 'optical.beam_profile' must be \"flat_top\" or "
                              "\"gaussian\" (got \"" + profile + "\")");
    }
    s.optical.jitter.sigma_tx = optical.quantity("jitter_tx_urad", Unit::microradian,
                                                 Unit::radian, s.optical.jitter.sigma_tx);
    s.optical.jitter.sigma_rx = optical.quantity("jitter_rx_urad", Unit::microradian,
                                                 Unit::radian, s.optical.jitter.sigma_rx);
    s.optical.pointing_residual =
        optical.quantity("pointing_residual_urad", Unit::microradian, Unit::radian,
                         s.optical.pointing_residual);
    s.optical.receiver_radius = optical.number("receiver_radius_m", s.optical.receiver_radius);
    s.optical.doppler_relative_speed =
        optical.number("doppler_relative_speed_m_s", s.optical.doppler_relative_speed);
    optical.finish();
    check(s.optical.pointing_residual >= 0.0, "optical.pointing_residual_urad",
          "must be non-negative");
    check(std::abs(s.optical.doppler_relative_speed) < 0.01 * optics::kSpeedOfLight,
          "optical.doppler_relative_speed_m_s", "must stay below 0.01 c in magnitude");

    ObjectReader rf = root.child("rf");
    s.rf.frequency_ghz = rf.number("frequency_ghz", s.rf.frequency_ghz);
    if (rf.has("separation_km")) {
        s.rf.separation_km = rf.number("separation_km", 0.0);
        s.rf_separation_from_formation = false;
    } else {
        rf.number("separation_km", 0.0);  // mark as known
        s.rf.separation_km =
            Quantity(s.formation.separation, Unit::meter).in(Unit::kilometer);
        s.rf_separation_from_formation = true;
    }
    s.rf.data_rate_bps = rf.number("data_rate_bps", s.rf.data_rate_bps);
    s.rf.noise_figure_db = rf.number("noise_figure_db", s.rf.noise_figure_db);
    s.rf.required_ebn0_db = rf.number("required_ebn0_db", s.rf.required_ebn0_db);
    s.rf.link_margin_db = rf.number("link_margin_db", s.rf.link_margin_db);
    s.rf.system_losses_db = rf.number("system_losses_db", s.rf.system_losses_db);
    s.rf.tx_power_dbm = rf.number("tx_power_dbm", s.rf.tx_power_dbm);
    s.rf.tx_gain_dbi = rf.number("tx_gain_dbi", s.rf.tx_gain_dbi);
    s.rf.rx_gain_dbi = rf.number("rx_gain_dbi", s.rf.rx_gain_dbi);
    s.rf.bandwidth_hz = rf.number("bandwidth_hz", s.rf.bandwidth_hz);
    rf.finish();

    ObjectReader panel = root.child("panel");
    s.panel.area = panel.number("area_m2", s.panel.area);
    s.panel.efficiency = panel.number("efficiency", s.panel.efficiency);
    s.panel.solar_irradiance = panel.number("solar_irradiance_w_m2", s.panel.solar_irradiance);
    s.panel.incidence_angle = panel.number("incidence_angle_rad", s.panel.incidence_angle);
    panel.finish();

    ObjectReader battery = root.child("battery");
    s.battery.energy_density = battery.number("energy_density_wh_kg", s.battery.energy_density);
    s.battery.potential_voltage =
        battery.number("potential_voltage_v", s.battery.potential_voltage);
    s.battery.spare_fraction = battery.number("spare_fraction", s.battery.spare_fraction);
    s.battery.round_trip_efficiency =
        battery.number("round_trip_efficiency", s.battery.round_trip_efficiency);
    battery.finish();

    ObjectReader pte = root.child("pte");
    s.pte.emitter = pte.number("emitter", s.pte.emitter);
    s.pte.transmission = pte.number("transmission", s.pte.transmission);
    s.pte.receiver = pte.number("receiver", s.pte.receiver);
    pte.finish();

    ObjectReader power_block = root.child("power");
    s.telemetry_power = power_block.number("telemetry_power_w", s.telemetry_power);
    s.bus_load = power_block.number("bus_load_w", s.bus_load);
    power_block.finish();
    check(s.telemetry_power >= 0.0, "power.telemetry_power_w", "must be non-negative");
    check(s.bus_load >= 0.0, "power.bus_load_w", "must be non-negative");

    ObjectReader requirements = root.child("requirements");
    s.requirements.max_pointing_residual =
        requirements.number("max_pointing_residual", s.requirements.max_pointing_residual);
    const auto envelope =
        requirements.range("separation_envelope", {s.requirements.separation_envelope_min,
                                                   s.requirements.separation_envelope_max});
    s.requirements.separation_envelope_min = envelope.first;
    s.requirements.separation_envelope_max = envelope.second;
    s.requirements.min_delivered_power =
        requirements.number("min_delivered_power", s.requirements.min_delivered_power);
    const auto dv_band =
        requirements.range("annual_dv_budget", {s.requirements.annual_dv_budget_min,
                                                s.requirements.annual_dv_budget_max});
    s.requirements.annual_dv_budget_min = dv_band.first;
    s.requirements.annual_dv_budget_max = dv_band.second;
    s.requirements.rf_must_close =
        requirements.boolean("rf_must_close", s.requirements.rf_must_close);
    requirements.finish();
    check(s.requirements.max_pointing_residual > 0.0, "requirements.max_pointing_residual",
          "must be positive");
    check(s.requirements.separation_envelope_min > 0.0 &&
              s.requirements.separation_envelope_min <= s.requirements.separation_envelope_max,
          "requirements.separation_envelope", "must be an ordered positive [min, max]");
    check(s.requirements.min_delivered_power >= 0.0, "requirements.min_delivered_power",
          "must be non-negative");
    check(s.requirements.annual_dv_budget_min >= 0.0 &&
              s.requirements.annual_dv_budget_min <= s.requirements.annual_dv_budget_max,
          "requirements.annual_dv_budget", "must be an ordered non-negative [min, max]");

    root.finish();

    validate_block("body", [&] { orbit::validate(s.body); });
    validate_block("orbit", [&] { orbit::validate(s.chief_orbit, s.body); });
    validate_block("formation", [&] { orbit::validate(s.formation); });
    validate_block("propulsion", [&] { orbit::validate(s.propulsion.primary); });
    validate_block("optical", [&] {
        optics::validate(s.optical.tx);
        optics::validate(s.optical.jitter);
        optics::validate(
            optics::ReceiverSpec{s.optical.receiver_radius, s.formation.separation});
    });
    validate_block("rf", [&] { rflink::validate(s.rf); });
    validate_block("panel", [&] { power::validate(s.panel); });
    validate_block("battery", [&] { power::validate(s.battery); });
    validate_block("pte", [&] { power::validate(s.pte); });

    return s;
}

json canonical_json(const MissionScenario& s) {
    json j;
    j["name"] = s.name;
    j["description"] = s.description;
    j["schema_version"] = s.schema_version;
    j["seed"] = s.seed;
    j["monte_carlo_samples"] = s.monte_carlo_samples;
    j["apply_capture_fraction"] = s.apply_capture_fraction;

    j["body"]["mu_m3_s2"] = s.body.mu;
    j["body"]["equatorial_radius_m"] = s.body.equatorial_radius;

    j["orbit"]["semimajor_axis_km"] =
        Quantity(s.chief_orbit.semimajor_axis, Unit::meter).in(Unit::kilometer);
    j["orbit"]["eccentricity"] = s.chief_orbit.eccentricity;

    j["formation"]["separation_m"] = s.formation.separation;
    j["formation"]["sma_bias_m"] = s.formation.sma_bias;
    j["formation"]["correction_cadence_s"] = s.formation.correction_cadence;

    j["propulsion"]["wet_mass_kg"] = s.propulsion.primary.wet_mass;
    j["propulsion"]["isp_s"] = s.propulsion.primary.isp;
    j["propulsion"]["isp_alternative_s"] = s.propulsion.alternative_isp;
    j["propulsion"]["g0_m_s2"] = s.propulsion.primary.g0;
    j["propulsion"]["annual_dv_budget_m_s"] = s.propulsion.sizing_dv;
    j["propulsion"]["retreat_dv_m_s"] = s.propulsion.retreat_dv;
    j["propulsion"]["retreat_dv_nominal_range_m_s"] = {s.propulsion.retreat_nominal_min,
                                                       s.propulsion.retreat_nominal_max};

    j["optical"]["wavelength_nm"] =
        Quantity(s.optical.tx.wavelength, Unit::meter).in(Unit::nanometer);
    j["optical"]["aperture_diameter_m"] = s.optical.tx.aperture_diameter;
    j["optical"]["design_divergence_urad"] =
        Quantity(s.optical.tx.design_divergence, Unit::radian).in(Unit::microradian);
    j["optical"]["beam_profile"] = optics::beam_profile_name(s.optical.tx.profile);
    j["optical"]["jitter_tx_urad"] =
        Quantity(s.optical.jitter.sigma_tx, Unit::radian).in(Unit::microradian);
    j["optical"]["jitter_rx_urad"] =
        Quantity(s.optical.jitter.sigma_rx, Unit::radian).in(Unit::microradian);
    j["optical"]["pointing_residual_urad"] =
        Quantity(s.optical.pointing_residual, Unit::radian).in(Unit::microradian);
    j["optical"]["receiver_radius_m"] = s.optical.receiver_radius;
    j["optical"]["doppler_relative_speed_m_s"] = s.optical.doppler_relative_speed;

    j["rf"]["frequency_ghz"] = s.rf.frequency_ghz;
    j["rf"]["separation_km"] = s.rf.separation_km;
    j["rf"]["data_rate_bps"] = s.rf.data_rate_bps;
    j["rf"]["noise_figure_db"] = s.rf.noise_figure_db;
    j["rf"]["required_ebn0_db"] = s.rf.required_ebn0_db;
    j["rf"]["link_margin_db"] = s.rf.link_margin_db;
    j["rf"]["system_losses_db"] = s.rf.system_losses_db;
    j["rf"]["tx_power_dbm"] = s.rf.tx_power_dbm;
    j["rf"]["tx_gain_dbi"] = s.rf.tx_gain_dbi;
    j["rf"]["rx_gain_dbi"] = s.rf.rx_gain_dbi;
    j["rf"]["bandwidth_hz"] = s.rf.bandwidth_hz;

    j["panel"]["area_m2"] = s.panel.area;
    j["panel"]["efficiency"] = s.panel.efficiency;
    j["panel"]["solar_irradiance_w_m2"] = s.panel.solar_irradiance;
    j["panel"]["incidence_angle_rad"] = s.panel.incidence_angle;

    j["battery"]["energy_density_wh_kg"] = s.battery.energy_density;
    j["battery"]["potential_voltage_v"] = s.battery.potential_voltage;
    j["battery"]["spare_fraction"] = s.battery.spare_fraction;
    j["battery"]["round_trip_efficiency"] = s.battery.round_trip_efficiency;

    j["pte"]["emitter"] = s.pte.emitter;
    j["pte"]["transmission"] = s.pte.transmission;
    j["pte"]["receiver"] = s.pte.receiver;

    j["power"]["telemetry_power_w"] = s.telemetry_power;
    j["power"]["bus_load_w"] = s.bus_load;

    j["requirements"]["max_pointing_residual"] = s.requirements.max_pointing_residual;
    j["requirements"]["separation_envelope"] = {s.requirements.separation_envelope_min,
                                                s.requirements.separation_envelope_max};
    j["requirements"]["min_delivered_power"] = s.requirements.min_delivered_power;
    j["requirements"]["annual_dv_budget"] = {s.requirements.annual_dv_budget_min,
                                             s.requirements.annual_dv_budget_max};
    j["requirements"]["rf_must_close"] = s.requirements.rf_must_close;

    return j;
}

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> segments;
    std::string current;
    for (char c : path) {
        if (c == '.') {
            segments.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    segments.push_back(current);
    for (const std::string& segment : segments) {
        if (segment.empty()) {
            throw ValidationError("override path '" + path + "' contains an empty segment");
        }
    }
    return segments;
}

}  // namespace

MissionScenario load_scenario(const std::string& document_text) {
    return scenario_from_json(parse_document(document_text), document_text);
}

MissionScenario load_scenario_file(const std::string& path) {
    std::ifstream input(path, std::ios::binary);
    if (!input) {
        throw ValidationError("cannot read scenario file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << input.rdbuf();
    return load_scenario(buffer.str());
}

std::string canonical_scenario_text(const MissionScenario& s) {
    return canonical_json(s).dump(2) + "\n";
}

std::string scenario_hash(const MissionScenario& s) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64(canonical_json(s).dump())));
    return buffer;
}

std::string apply_overrides(const std::string& document_text,
                            const std::vector<std::string>& assignments) {
    json doc = parse_document(document_text);
    if (!doc.is_object()) {
        throw ValidationError("scenario document must be a JSON object");
    }
    for (const std::string& assignment : assignments) {
        const std::size_t eq = assignment.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ValidationError("override '" + assignment +
                                  "' must have the form path=value");
        }
        const std::string path = assignment.substr(0, eq);
        const std::string value_text = assignment.substr(eq + 1);
        json value;
        try {
            value = json::parse(value_text);
        } catch (const json::parse_error&) {
            value = value_text;  // bare words become strings
        }
        const std::vector<std::string> segments = split_path(path);
        json* node = &doc;
        for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
            json& next = (*node)[segments[i]];
            if (!next.is_object() && !next.is_null()) {
                throw ValidationError("override path '" + path + "' crosses non-object field '" +
                                      segments[i] + "'");
            }
            if (next.is_null()) {
                next = json::object();
            }
            node = &next;
        }
        (*node)[segments.back()] = value;
    }
    return doc.dump(2) + "\n";
}

namespace {

struct LineBuilder {
    std::vector<BudgetLine>& lines;
    std::string domain;

    void add(std::string name, double value, std::string unit, std::string note = "",
             Verdict verdict = Verdict::info, std::string requirement = "") {
        BudgetLine line;
        line.domain = domain;
        line.name = std::move(name);
        line.value = value;
        line.unit = std::move(unit);
        line.requirement = std::move(requirement);
        line.verdict = verdict;
        line.note = std::move(note);
        lines.push_back(std::move(line));
    }
};

}  // namespace

MissionReport evaluate(const MissionScenario& s) {
    MissionReport report;
    report.schema_version = s.schema_version;
    report.scenario_name = s.name;
    report.provenance.scenario_hash = scenario_hash(s);
    report.provenance.seed = s.seed;
    report.provenance.tool_version = kToolVersion;
    report.provenance.rng_algorithm = optics::kCaptureSamplerId;

    const RequirementSet& req = s.requirements;

    // orbit and formation geometry
    {
        LineBuilder orbit_lines{report.lines, "orbit"};
        const double n = orbit::mean_motion(s.body, s.chief_orbit);
        const double period = orbit::orbital_period(s.body, s.chief_orbit);
        const double eclipse = orbit::eclipse_duration(s.body, s.chief_orbit);
        const orbit::DriftRate drift = orbit::drift_rate(n, s.formation.sma_bias);
        const orbit::StationKeepingBudget stationkeeping =
            orbit::annual_stationkeeping_dv(n, s.formation.sma_bias,
                                            s.formation.correction_cadence);

        orbit_lines.add("mean_motion", n, "rad/s");
        orbit_lines.add("orbital_period", period, "s");
        orbit_lines.add("eclipse_duration", eclipse, "s", "cylindrical shadow, worst case");
        orbit_lines.add("separation", s.formation.separation, "m", "",
                        s.formation.separation >= req.separation_envelope_min &&
                                s.formation.separation <= req.separation_envelope_max
                            ? Verdict::pass
                            : Verdict::warn,
                        "within [" + format_compact(req.separation_envelope_min) + ", " +
                            format_compact(req.separation_envelope_max) + "] m");
        orbit_lines.add("sma_bias", s.formation.sma_bias, "m");
        orbit_lines.add("correction_cadence", s.formation.correction_cadence, "s");
        orbit_lines.add("drift_speed", drift.speed, "m/s",
                        "along-track, sma bias " + format_compact(s.formation.sma_bias) + " m");
        orbit_lines.add("drift_per_day", drift.per_day, "m/day");
        orbit_lines.add("stationkeeping_dv_per_correction", stationkeeping.per_correction_dv,
                        "m/s",
                        "cadence " + format_compact(s.formation.correction_cadence) + " s");
        orbit_lines.add("annual_stationkeeping_dv", stationkeeping.annual_dv, "m/s/yr",
                        "cadence-independent total",
                        stationkeeping.annual_dv <= req.annual_dv_budget_max ? Verdict::pass
                                                                             : Verdict::fail,
                        "<= " + format_compact(req.annual_dv_budget_max) + " m/s/yr (design band [" +
                            format_compact(req.annual_dv_budget_min) + ", " +
                            format_compact(req.annual_dv_budget_max) + "])");
        orbit_lines.add(
            "stationkeeping_propellant", orbit::propellant_mass(s.propulsion.primary, s.propulsion.sizing_dv),
            "kg/yr",
            "isp " + format_compact(s.propulsion.primary.isp) + " s, dv " +
                format_compact(s.propulsion.sizing_dv) + " m/s");
        orbit::PropulsionSpec alternative = s.propulsion.primary;
        alternative.isp = s.propulsion.alternative_isp;
        orbit_lines.add("stationkeeping_propellant_alternative",
                        orbit::propellant_mass(alternative, s.propulsion.sizing_dv), "kg/yr",
                        "isp " + format_compact(s.propulsion.alternative_isp) + " s, dv " +
                            format_compact(s.propulsion.sizing_dv) + " m/s");
        const orbit::RetreatBudget retreat = orbit::retreat_propellant(
            s.propulsion.primary, s.propulsion.retreat_dv, s.propulsion.retreat_nominal_min,
            s.propulsion.retreat_nominal_max);
        orbit_lines.add("retreat_propellant", retreat.propellant_mass, "kg",
                        retreat.within_nominal_range
                            ? "dv " + format_compact(s.propulsion.retreat_dv) + " m/s"
                            : "dv " + format_compact(s.propulsion.retreat_dv) +
                                  " m/s outside nominal range [" +
                                  format_compact(s.propulsion.retreat_nominal_min) + ", " +
                                  format_compact(s.propulsion.retreat_nominal_max) + "]",
                        retreat.within_nominal_range ? Verdict::info : Verdict::warn);
        orbit_lines.add("pointing_residual", s.optical.pointing_residual, "rad",
                        "achieved closed-loop residual",
                        s.optical.pointing_residual <= req.max_pointing_residual
                            ? Verdict::pass
                            : Verdict::fail,
                        "<= " + format_compact(req.max_pointing_residual) + " rad");
        orbit_lines.add("pointing_displacement_min_separation",
                        orbit::pointing_displacement(s.optical.pointing_residual,
                                                     req.separation_envelope_min),
                        "m", "at " + format_compact(req.separation_envelope_min) + " m");
        orbit_lines.add("pointing_displacement_max_separation",
                        orbit::pointing_displacement(s.optical.pointing_residual,
                                                     req.separation_envelope_max),
                        "m", "at " + format_compact(req.separation_envelope_max) + " m");
    }

    // optical beam geometry and capture statistics
    {
        LineBuilder optics_lines{report.lines, "optics"};
        const double diffraction = optics::diffraction_divergence(
            s.optical.tx.wavelength, s.optical.tx.aperture_diameter);
        optics_lines.add("diffraction_divergence", diffraction, "rad", "full angle");
        optics_lines.add("design_divergence", s.optical.tx.design_divergence, "rad",
                         "full angle");
        optics_lines.add("spot_diameter_min_separation",
                         optics::spot_diameter(s.optical.tx.design_divergence,
                                               req.separation_envelope_min),
                         "m", "at " + format_compact(req.separation_envelope_min) + " m");
        optics_lines.add("spot_diameter_max_separation",
                         optics::spot_diameter(s.optical.tx.design_divergence,
                                               req.separation_envelope_max),
                         "m", "at " + format_compact(req.separation_envelope_max) + " m");
        optics_lines.add("spot_diameter_diffraction_limited",
                         optics::spot_diameter(diffraction, req.separation_envelope_max), "m",
                         "at " + format_compact(req.separation_envelope_max) + " m");
        optics_lines.add("combined_jitter", optics::combined_jitter(s.optical.jitter), "rad",
                         "rss of terminal jitters");
        optics_lines.add("jitter_lateral_error",
                         optics::jitter_lateral_error(s.optical.jitter, s.formation.separation),
                         "m", "1-sigma at " + format_compact(s.formation.separation) + " m");

        const optics::ReceiverSpec receiver{s.optical.receiver_radius, s.formation.separation};
        optics_lines.add("capture_fraction_boresight",
                         optics::capture_fraction_static(s.optical.tx, receiver, 0.0), "-",
                         std::string(optics::beam_profile_name(s.optical.tx.profile)) +
                             " profile, zero offset");
        const optics::CaptureEstimate capture = optics::capture_fraction_jittered(
            s.optical.tx, receiver, s.optical.jitter, s.monte_carlo_samples, s.seed);
        optics_lines.add("capture_fraction_jittered", capture.mean, "-",
                         capture.method + ", " +
                             std::to_string(capture.sample_count) + " samples");
        optics_lines.add("capture_fraction_jittered_stderr", capture.std_error, "-",
                         "1-sigma on the mean");
        optics_lines.add("doppler_wavelength_shift",
                         optics::doppler_wavelength_shift(s.optical.tx.wavelength,
                                                          s.optical.doppler_relative_speed),
                         "m",
                         "relative speed " +
                             format_compact(s.optical.doppler_relative_speed) + " m/s");
    }

    // telemetry link budget
    {
        LineBuilder rf_lines{report.lines, "rf"};
        const rflink::RfBudgetResult budget = rflink::evaluate_rf_link(s.rf);
        rf_lines.add("fspl", budget.fspl_db, "dB",
                     format_compact(s.rf.frequency_ghz) + " GHz at " +
                         format_compact(s.rf.separation_km) + " km");
        rf_lines.add("noise_density", budget.noise_density_dbm_per_hz, "dBm/Hz");
        rf_lines.add("required_carrier_power", budget.required_carrier_dbm, "dBm");
        rf_lines.add("required_eirp", budget.required_eirp_dbm, "dBm");
        rf_lines.add("required_eirp_watts", budget.required_eirp_watts, "W");
        rf_lines.add("received_power", budget.received_power_dbm, "dBm");
        rf_lines.add("noise_power", budget.noise_power_dbm, "dBm",
                     "bandwidth " + format_compact(s.rf.bandwidth_hz) + " Hz");
        rf_lines.add("carrier_to_noise", budget.carrier_to_noise_db, "dB");
        rf_lines.add("ebn0_achieved", budget.ebn0_achieved_db, "dB");
        rf_lines.add("ebn0_raw_excess", budget.raw_excess_db, "dB", "before link margin");
        rf_lines.add("ebn0_excess_margin", budget.excess_margin_db, "dB", "after link margin",
                     req.rf_must_close ? (budget.closes ? Verdict::pass : Verdict::fail)
                                       : Verdict::info,
                     req.rf_must_close ? ">= 0 dB" : "");
        rf_lines.add("link_closes", budget.closes ? 1.0 : 0.0, "-", "1 = link closes");
        if (s.rf.bandwidth_hz < s.rf.data_rate_bps) {
            rf_lines.add("bandwidth_below_data_rate", s.rf.bandwidth_hz, "Hz",
                         "bandwidth is below the data rate " +
                             format_compact(s.rf.data_rate_bps) + " bps",
                         Verdict::warn);
        }
    }

    // power generation and the delivery chain
    {
        LineBuilder power_lines{report.lines, "power"};
        const double period = orbit::orbital_period(s.body, s.chief_orbit);
        const double eclipse = orbit::eclipse_duration(s.body, s.chief_orbit);
        const power::PowerBudgetResult budget =
            power::power_budget(s.panel, period, eclipse, s.battery, s.pte, s.telemetry_power,
                                s.bus_load);
        power_lines.add("panel_power", budget.panel_power, "W", "full sun");
        power_lines.add("expendable_power", budget.expendable_power, "W",
                        "orbit average over the sunlit fraction");
        power_lines.add("orbit_energy", budget.orbit_energy, "Wh", "banked per orbit");
        power_lines.add("derated_power", budget.derated_power, "W",
                        "spare fraction " + format_compact(s.battery.spare_fraction) +
                            " held back");
        power_lines.add("derated_energy", budget.derated_energy, "Wh");
        power_lines.add("battery_mass", budget.battery_mass, "kg",
                        format_compact(s.battery.energy_density) + " Wh/kg");
        power_lines.add("battery_capacity", budget.battery_capacity_ah, "Ah",
                        "at " + format_compact(s.battery.potential_voltage) + " V");
        power_lines.add("pte_total", budget.pte_total, "-",
                        format_compact(s.pte.emitter) + " x " +
                            format_compact(s.pte.transmission) + " x " +
                            format_compact(s.pte.receiver));
        power_lines.add("telemetry_power", s.telemetry_power, "W");
        power_lines.add("bus_load", s.bus_load, "W");
        power_lines.add("optical_input_power", budget.optical_input_power, "W",
                        "fed to the emitter");

        const bool gate_on_capture = s.apply_capture_fraction;
        power_lines.add("delivered_power", budget.delivered_power, "W",
                        "at the customer PV output",
                        gate_on_capture
                            ? Verdict::info
                            : (budget.delivered_power >= req.min_delivered_power
                                   ? Verdict::pass
                                   : Verdict::fail),
                        gate_on_capture
                            ? ""
                            : ">= " + format_compact(req.min_delivered_power) + " W");
        const double rounded_pte = std::rint(budget.pte_total * 1000.0) / 1000.0;
        power_lines.add("delivered_power_rounded_pte",
                        budget.optical_input_power * rounded_pte, "W",
                        "chain efficiency rounded to " + format_compact(rounded_pte));
        if (gate_on_capture) {
            const BudgetLine* capture = report.find("optics", "capture_fraction_jittered");
            const double after_capture = budget.delivered_power * capture->value;
            power_lines.add("delivered_power_after_capture", after_capture, "W",
                            "jittered capture fraction applied",
                            after_capture >= req.min_delivered_power ? Verdict::pass
                                                                     : Verdict::fail,
                            ">= " + format_compact(req.min_delivered_power) + " W");
        }
    }

    report.overall_verdict = combined_verdict(report.lines);
    return report;
}

const std::vector<std::string>& default_sweep_columns() {
    static const std::vector<std::string> columns = {
        "orbit.drift_per_day",
        "orbit.annual_stationkeeping_dv",
        "optics.spot_diameter_max_separation",
        "optics.capture_fraction_jittered",
        "rf.fspl",
        "rf.ebn0_excess_margin",
        "power.delivered_power",
    };
    return columns;
}

namespace {

std::pair<std::string, std::string> split_column(const std::string& column) {
    const std::size_t dot = column.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == column.size()) {
        throw ValidationError("sweep column '" + column +
                              "' must have the form domain.line_name");
    }
    return {column.substr(0, dot), column.substr(dot + 1)};
}

}  // namespace

SweepResult sweep(const MissionScenario& base, const std::string& parameter,
                  const std::vector<double>& values, std::vector<std::string> columns) {
    if (values.empty()) {
        throw ValidationError("sweep requires at least one parameter value");
    }
    if (columns.empty()) {
        columns = default_sweep_columns();
    }

    // the swept path must name a numeric field of the resolved scenario
    const json canon = canonical_json(base);
    const json* node = &canon;
    for (const std::string& segment : split_path(parameter)) {
        if (!node->is_object() || !node->contains(segment)) {
            throw ValidationError("sweep parameter '" + parameter +
                                  "' does not name a scenario field");
        }
        node = &(*node)[segment];
    }
    if (!node->is_number()) {
        throw ValidationError("sweep parameter '" + parameter + "' is not numeric");
    }

    const MissionReport base_report = evaluate(base);
    for (const std::string& column : columns) {
        const auto [domain, name] = split_column(column);
        if (base_report.find(domain, name) == nullptr) {
            throw ValidationError("sweep column '" + column +
                                  "' does not name a budget line");
        }
    }

    SweepResult result;
    result.parameter = parameter;
    result.columns = std::move(columns);
    for (double value : values) {
        SweepRow row;
        row.parameter_value = value;
        try {
            const std::string document = apply_overrides(
                base.source_text, {parameter + "=" + json(value).dump()});
            const MissionScenario varied = load_scenario(document);
            const MissionReport varied_report = evaluate(varied);
            for (const std::string& column : result.columns) {
                const auto [domain, name] = split_column(column);
                const BudgetLine* line = varied_report.find(domain, name);
                if (line == nullptr) {
                    throw ValidationError("budget line '" + column +
                                          "' is not present at this parameter value");
                }
                row.cells.push_back(line->value);
            }
        } catch (const std::exception& e) {
            row.cells.clear();
            row.error = e.what();
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

std::string render_sweep(const SweepResult& result, ReportFormat format) {
    if (format == ReportFormat::machine) {
        json j;
        j["parameter"] = result.parameter;
        j["columns"] = result.columns;
        j["rows"] = json::array();
        for (const SweepRow& row : result.rows) {
            json entry;
            entry["parameter_value"] = row.parameter_value;
            if (row.error.empty()) {
                entry["cells"] = row.cells;
            } else {
                entry["error"] = row.error;
            }
            j["rows"].push_back(std::move(entry));
        }
        return j.dump(2) + "\n";
    }

    std::vector<std::string> headers;
    headers.push_back(result.parameter);
    for (const std::string& column : result.columns) {
        headers.push_back(column);
    }
    std::vector<std::size_t> widths;
    for (const std::string& header : headers) {
        widths.push_back(header.size());
    }
    std::vector<std::vector<std::string>> table;
    for (const SweepRow& row : result.rows) {
        std::vector<std::string> cells;
        cells.push_back(format_compact(row.parameter_value));
        if (row.error.empty()) {
            for (double cell : row.cells) {
                cells.push_back(format_compact(cell));
            }
        }
        for (std::size_t i = 0; i < cells.size(); ++i) {
            widths[i] = std::max(widths[i], cells[i].size());
        }
        table.push_back(std::move(cells));
    }

    std::ostringstream out;
    out << "sweep: " << result.parameter << "\n";
    for (std::size_t i = 0; i < headers.size(); ++i) {
        out << (i == 0 ? "" : "  ") << headers[i]
            << std::string(widths[i] - headers[i].size(), ' ');
    }
    out << "\n";
    for (std::size_t r = 0; r < table.size(); ++r) {
        const std::vector<std::string>& cells = table[r];
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out << (i == 0 ? "" : "  ") << std::string(widths[i] - cells[i].size(), ' ')
                << cells[i];
        }
        if (!result.rows[r].error.empty()) {
            out << "  error: " << result.rows[r].error;
        }
        out << "\n";
    }
    return out.str();
}

std::string schema_reference_text() {
    return R"SCHEMA({
  // Mission scenario schema, version 1. Every field is optional; an empty
  // document {} evaluates the built-in baseline mission. Unknown fields are
  // rejected. Comments (// and /* */) are allowed in scenario files.
  "name": "baseline",            // report title
  "description": "",             // free text, carried through provenance
  "schema_version": 1,           // must be 1
  "seed": 1,                     // RNG seed for the jittered-capture estimate
  "monte_carlo_samples": 100000, // >= 1
  // When true, the delivered-power requirement gates on the chain output
  // multiplied by the jittered capture fraction.
  "apply_capture_fraction": false,

  "body": {
    "mu_m3_s2": 3.986004418e14,      // gravitational parameter, > 0
    "equatorial_radius_m": 6378137.0 // > 0
  },

  "orbit": {
    // Set either semimajor_axis_km or altitude_km (a = radius + altitude),
    // not both. The orbit must clear the body's equatorial radius.
    "semimajor_axis_km": 6878.0,
    "eccentricity": 0.0              // only circular orbits are modeled
  },

  "formation": {
    "separation_m": 500.0,           // chief-deputy along-track distance, > 0
    "sma_bias_m": 10.0,              // deputy semimajor-axis offset
    "correction_cadence_s": 86400.0  // time between drift corrections, > 0
  },

  "propulsion": {
    "wet_mass_kg": 11.0,             // > 0
    "isp_s": 60.0,                   // primary thruster, > 0
    "isp_alternative_s": 1000.0,     // comparison option, > 0
    "g0_m_s2": 9.80665,
    "annual_dv_budget_m_s": 5.0,     // dv the propellant lines are sized for, >= 0
    "retreat_dv_m_s": 1.0,           // one-off retreat maneuver, >= 0
    "retreat_dv_nominal_range_m_s": [0.5, 1.0] // out-of-range retreats warn
  },

  "optical": {
    "wavelength_nm": 980.0,          // > 0
    "aperture_diameter_m": 0.15,     // > 0
    // Full-angle design divergence; must not beat the diffraction limit
    // 2.44 * wavelength / aperture for the configured aperture.
    "design_divergence_urad": 200.0,
    "beam_profile": "flat_top",      // "flat_top" or "gaussian"
    "jitter_tx_urad": 250.0,         // 1-sigma per axis, >= 0
    "jitter_rx_urad": 1000.0,        // 1-sigma per axis, >= 0
    // Achieved closed-loop pointing residual; compared against
    // requirements.max_pointing_residual. Distinct from the jitter sigmas.
    "pointing_residual_urad": 20.0,
    "receiver_radius_m": 0.05,       // customer aperture radius, > 0
    "doppler_relative_speed_m_s": 7500.0 // |v| < 0.01 c
  },

  "rf": {
    "frequency_ghz": 2.3,            // > 0
    // Optional; when omitted it follows formation.separation_m, so
    // formation sweeps move the path loss.
    "separation_km": 0.5,
    "data_rate_bps": 19200.0,        // > 0
    "noise_figure_db": 3.0,          // >= 0
    "required_ebn0_db": 9.6,         // demodulator threshold
    "link_margin_db": 10.0,          // >= 0
    "system_losses_db": 3.0,         // >= 0
    "tx_power_dbm": 0.0,
    "tx_gain_dbi": 3.0,
    "rx_gain_dbi": 0.0,
    "bandwidth_hz": 1.0e5            // > 0; below the data rate draws a warning
  },

  "panel": {
    "area_m2": 1.0,                  // > 0
    "efficiency": 0.25,              // (0, 1]
    "solar_irradiance_w_m2": 1362.0, // > 0
    "incidence_angle_rad": 0.0       // [0, pi/2)
  },

  "battery": {
    "energy_density_wh_kg": 200.0,   // > 0
    "potential_voltage_v": 4.0,      // > 0
    "spare_fraction": 0.20,          // [0, 1); budget derates by 1/(1+spare)
    "round_trip_efficiency": 1.0     // (0, 1]
  },

  // Stored-electrical to delivered-optical chain, each in (0, 1].
  "pte": {
    "emitter": 0.30,
    "transmission": 0.999,
    "receiver": 0.35
  },

  "power": {
    "telemetry_power_w": 1.0,        // >= 0, subtracted before the emitter
    "bus_load_w": 0.0                // >= 0, subtracted before the emitter
  },

  // Pass/fail bounds. Values use the same units as the lines they gate.
  "requirements": {
    "max_pointing_residual": 2.0e-5,    // rad
    "separation_envelope": [100.0, 500.0], // m; outside draws a warning
    "min_delivered_power": 0.0,         // W
    "annual_dv_budget": [1.0, 10.0],    // m/s; exceeding the max fails
    "rf_must_close": true
  }
}
)SCHEMA";
}

}  // namespace opbeam::scenario
