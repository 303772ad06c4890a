#include "opbeam/orbit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace opbeam::orbit {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw std::domain_error(std::string(what) + " must be finite");
    }
}

void require_positive(double v, const char* what) {
    require_finite(v, what);
    if (!(v > 0.0)) {
        throw std::domain_error(std::string(what) + " must be positive");
    }
}

}  // namespace

void validate(const CentralBody& body) {
    require_positive(body.mu, "gravitational parameter");
    require_positive(body.equatorial_radius, "equatorial radius");
}

void validate(const OrbitSpec& orbit, const CentralBody& body) {
    validate(body);
    require_positive(orbit.semimajor_axis, "semimajor axis");
    require_finite(orbit.eccentricity, "eccentricity");
    if (orbit.eccentricity < 0.0 || orbit.eccentricity >= 1.0) {
        throw std::domain_error("eccentricity must lie in [0, 1)");
    }
    if (orbit.eccentricity != 0.0) {
        throw std::domain_error(
            "only circular orbits are modeled; eccentricity must be exactly 0");
    }
    if (!(orbit.semimajor_axis > body.equatorial_radius)) {
        throw std::domain_error("semimajor axis must exceed the body's equatorial radius");
    }
}

void validate(const FormationSpec& formation) {
    require_positive(formation.separation, "formation separation");
    require_finite(formation.sma_bias, "semimajor-axis bias");
    require_positive(formation.correction_cadence, "correction cadence");
}

void validate(const PropulsionSpec& propulsion) {
    require_positive(propulsion.wet_mass, "wet mass");
    require_positive(propulsion.isp, "specific impulse");
    require_positive(propulsion.g0, "standard gravity");
}

double mean_motion(const CentralBody& body, const OrbitSpec& orbit) {
    validate(orbit, body);
    return std::sqrt(body.mu / (orbit.semimajor_axis * orbit.semimajor_axis *
                                orbit.semimajor_axis));
}

double orbital_period(const CentralBody& body, const OrbitSpec& orbit) {
    validate(orbit, body);
    const double a = orbit.semimajor_axis;
    return std::sqrt(4.0 * std::numbers::pi * std::numbers::pi * a * a * a / body.mu);
}

double eclipse_duration(const CentralBody& body, const OrbitSpec& orbit) {
    validate(orbit, body);
    const double t = orbital_period(body, orbit);
    const double ratio = body.equatorial_radius / orbit.semimajor_axis;
    return t / 2.0 - t * std::acos(ratio) / std::numbers::pi;
}

DriftRate drift_rate(double mean_motion, double sma_bias) {
    require_positive(mean_motion, "mean motion");
    require_finite(sma_bias, "semimajor-axis bias");
    DriftRate rate;
    rate.speed = 1.5 * mean_motion * std::abs(sma_bias);
    rate.per_day = rate.speed * 86400.0;
    return rate;
}

double mean_motion_offset(double mean_motion, double sma_bias, double semimajor_axis) {
    require_positive(mean_motion, "mean motion");
    require_finite(sma_bias, "semimajor-axis bias");
    require_positive(semimajor_axis, "semimajor axis");
    return -1.5 * mean_motion * sma_bias / semimajor_axis;
}

StationKeepingBudget annual_stationkeeping_dv(double mean_motion, double sma_bias,
                                              double correction_cadence) {
    require_positive(correction_cadence, "correction cadence");
    const DriftRate rate = drift_rate(mean_motion, sma_bias);
    StationKeepingBudget budget;
    budget.per_correction_dv = rate.speed * correction_cadence / 86400.0;
    budget.annual_dv = rate.speed * 365.0;
    return budget;
}

double propellant_mass(const PropulsionSpec& propulsion, double dv) {
    validate(propulsion);
    require_finite(dv, "delta-v");
    if (dv < 0.0) {
        throw std::domain_error("delta-v must be non-negative");
    }
    return propulsion.wet_mass * (1.0 - std::exp(-dv / (propulsion.g0 * propulsion.isp)));
}

RetreatBudget retreat_propellant(const PropulsionSpec& propulsion, double retreat_dv,
                                 double nominal_min, double nominal_max) {
    require_finite(nominal_min, "nominal range minimum");
    require_finite(nominal_max, "nominal range maximum");
    if (nominal_min > nominal_max) {
        throw std::domain_error("nominal dv range is inverted");
    }
    RetreatBudget budget;
    budget.propellant_mass = propellant_mass(propulsion, retreat_dv);
    budget.within_nominal_range = retreat_dv >= nominal_min && retreat_dv <= nominal_max;
    return budget;
}

double pointing_displacement(double residual_angle, double separation) {
    require_finite(residual_angle, "pointing residual");
    require_positive(separation, "separation");
    return residual_angle * separation;
}

HcwState hcw_propagate(const HcwState& state, double mean_motion, double dt) {
    require_positive(mean_motion, "mean motion");
    require_finite(dt, "propagation interval");

    const double n = mean_motion;
    const double s = std::sin(n * dt);
    const double c = std::cos(n * dt);

    HcwState out;
    out.x = (4.0 - 3.0 * c) * state.x + (s / n) * state.vx + (2.0 / n) * (1.0 - c) * state.vy;
    out.y = 6.0 * (s - n * dt) * state.x + state.y + (2.0 / n) * (c - 1.0) * state.vx +
            ((4.0 * s - 3.0 * n * dt) / n) * state.vy;
    out.vx = 3.0 * n * s * state.x + c * state.vx + 2.0 * s * state.vy;
    out.vy = 6.0 * n * (c - 1.0) * state.x - 2.0 * s * state.vx + (4.0 * c - 3.0) * state.vy;
    out.z = c * state.z + (s / n) * state.vz;
    out.vz = -n * s * state.z + c * state.vz;
    return out;
}

}  // namespace opbeam::orbit
