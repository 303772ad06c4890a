#pragma once

namespace opbeam::orbit {

struct CentralBody {
    double mu = 3.986004418e14;            // gravitational parameter, m^3/s^2
    double equatorial_radius = 6378137.0;  // m
};

struct OrbitSpec {
    double semimajor_axis = 6.878e6;  // m
    double eccentricity = 0.0;        // only circular orbits are modeled
};

struct FormationSpec {
    double separation = 500.0;            // along-track chief-deputy distance, m
    double sma_bias = 10.0;               // deputy semimajor-axis offset, m
    double correction_cadence = 86400.0;  // time between drift corrections, s
};

struct PropulsionSpec {
    double wet_mass = 11.0;     // spacecraft mass before the burn, kg
    double isp = 60.0;          // specific impulse, s
    double g0 = 9.80665;        // standard gravity, m/s^2
};

// Relative state in the rotating chief-centered frame:
// x radial (outward), y along-track (velocity direction), z cross-track.
struct HcwState {
    double x = 0.0;   // m
    double y = 0.0;   // m
    double z = 0.0;   // m
    double vx = 0.0;  // m/s
    double vy = 0.0;  // m/s
    double vz = 0.0;  // m/s
};

void validate(const CentralBody& body);
void validate(const OrbitSpec& orbit, const CentralBody& body);
void validate(const FormationSpec& formation);
void validate(const PropulsionSpec& propulsion);

// n = sqrt(mu / a^3), rad/s.
double mean_motion(const CentralBody& body, const OrbitSpec& orbit);

// T = sqrt(4 pi^2 a^3 / mu), s.
double orbital_period(const CentralBody& body, const OrbitSpec& orbit);

/**
 * Time per orbit spent inside the body's cylindrical shadow for a circular
 * orbit in the worst-case (shadow-plane) geometry:
 *
 *   T_e = T/2 - T * acos(R/a) / pi
 *
 * Requires a > R (the orbit clears the surface).
 */
double eclipse_duration(const CentralBody& body, const OrbitSpec& orbit);

struct DriftRate {
    double speed = 0.0;    // along-track drift, m/s
    double per_day = 0.0;  // speed * 86400, m/day
};

// Along-track drift of a deputy biased in semimajor axis by sma_bias:
// speed = (3/2) * n * |sma_bias|.
DriftRate drift_rate(double mean_motion, double sma_bias);

// First-order mean-motion offset for the biased deputy:
// dn = -(3/2) * n * sma_bias / a. Sign: a raised orbit runs slower.
double mean_motion_offset(double mean_motion, double sma_bias, double semimajor_axis);

struct StationKeepingBudget {
    double per_correction_dv = 0.0;  // m/s per correction burn
    double annual_dv = 0.0;          // m/s per year
};

/**
 * Delta-v spent cancelling the drift that accumulates between corrections.
 * Each correction removes the built-up drift speed scaled to its cadence:
 *
 *   per-correction dv = drift speed * cadence / 86400
 *   annual dv         = drift speed * 365
 *
 * The annual total is cadence-independent: more frequent corrections are
 * each proportionally cheaper.
 */
StationKeepingBudget annual_stationkeeping_dv(double mean_motion, double sma_bias,
                                              double correction_cadence);

// Rocket-equation propellant for an impulsive dv from wet_mass:
// m_p = m0 * (1 - exp(-dv / (g0 * isp))).
double propellant_mass(const PropulsionSpec& propulsion, double dv);

struct RetreatBudget {
    double propellant_mass = 0.0;  // kg
    bool within_nominal_range = false;
};

// Propellant for a one-off retreat burn, flagged against the configured
// nominal dv range so out-of-family maneuvers surface as warnings.
RetreatBudget retreat_propellant(const PropulsionSpec& propulsion, double retreat_dv,
                                 double nominal_min, double nominal_max);

// Small-angle lateral displacement of the beam at the receiver:
// residual_angle * separation, m.
double pointing_displacement(double residual_angle, double separation);

/**
 * Closed-form Clohessy-Wiltshire propagation of a relative state by dt
 * around a circular chief orbit with mean motion n. In-plane and
 * cross-track motion decouple; the map is exact for the linearized
 * dynamics, so steps compose: propagate(s, n, t1 + t2) equals
 * propagate(propagate(s, n, t1), n, t2) up to roundoff.
 */
HcwState hcw_propagate(const HcwState& state, double mean_motion, double dt);

}  // namespace opbeam::orbit
