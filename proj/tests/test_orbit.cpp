#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "opbeam/orbit.hpp"

using namespace opbeam::orbit;

namespace {

// Independent oracle for the relative-motion propagator: classic RK4 on the
// linearized rotating-frame equations
//   ax = 3 n^2 x + 2 n vy,  ay = -2 n vx,  az = -n^2 z
// with a step small enough that the integrator error (~(n h)^4 per step) is
// far below the tolerances asserted here.
using StateVec = std::array<double, 6>;

StateVec rhs(double n, const StateVec& s) {
    return {s[3],
            s[4],
            s[5],
            3.0 * n * n * s[0] + 2.0 * n * s[4],
            -2.0 * n * s[3],
            -n * n * s[2]};
}

StateVec rk4_step(double n, const StateVec& s, double h) {
    const StateVec k1 = rhs(n, s);
    StateVec t;
    for (int i = 0; i < 6; ++i) t[i] = s[i] + 0.5 * h * k1[i];
    const StateVec k2 = rhs(n, t);
    for (int i = 0; i < 6; ++i) t[i] = s[i] + 0.5 * h * k2[i];
    const StateVec k3 = rhs(n, t);
    for (int i = 0; i < 6; ++i) t[i] = s[i] + h * k3[i];
    const StateVec k4 = rhs(n, t);
    StateVec out;
    for (int i = 0; i < 6; ++i) {
        out[i] = s[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
}

StateVec integrate(double n, StateVec s, double duration, int steps) {
    const double h = duration / steps;
    for (int i = 0; i < steps; ++i) s = rk4_step(n, s, h);
    return s;
}

StateVec to_vec(const HcwState& s) { return {s.x, s.y, s.z, s.vx, s.vy, s.vz}; }

CentralBody body_default() { return {}; }
OrbitSpec orbit_default() { return {}; }

}  // namespace

TEST_SUITE("orbit") {

TEST_CASE("mean motion, period, and eclipse match frozen references") {
    const CentralBody body = body_default();
    const OrbitSpec orbit = orbit_default();
    const double n = mean_motion(body, orbit);
    const double T = orbital_period(body, orbit);
    const double Te = eclipse_duration(body, orbit);

    CHECK(n == doctest::Approx(1.1068165148331681e-3).epsilon(1e-14));
    CHECK(T == doctest::Approx(5676.8084167289999).epsilon(1e-14));
    CHECK(Te == doctest::Approx(2145.2501738545607).epsilon(1e-12));
    // period and mean motion are the same fact two ways
    CHECK(T == doctest::Approx(2.0 * std::numbers::pi / n).epsilon(1e-12));
}

TEST_CASE("geosynchronous cross-check against an independent evaluation") {
    const OrbitSpec geo{4.2164e7, 0.0};
    CHECK(mean_motion(body_default(), geo) ==
          doctest::Approx(7.2921598617960447e-5).epsilon(1e-12));
}

TEST_CASE("eclipse stays inside (0, T/2) across the whole altitude range") {
    const CentralBody body = body_default();
    std::mt19937_64 rng(321);
    std::uniform_real_distribution<double> draw(body.equatorial_radius + 1e3,
                                                10.0 * body.equatorial_radius);
    for (int i = 0; i < 500; ++i) {
        const OrbitSpec orbit{draw(rng), 0.0};
        const double T = orbital_period(body, orbit);
        const double Te = eclipse_duration(body, orbit);
        CHECK(Te > 0.0);
        CHECK(Te < 0.5 * T);
    }
}

TEST_CASE("drift rate matches frozen references and converts to m/day") {
    const double n = mean_motion(body_default(), orbit_default());
    const DriftRate one = drift_rate(n, 1.0);
    const DriftRate ten = drift_rate(n, 10.0);
    CHECK(one.speed == doctest::Approx(1.6602247722497521e-3).epsilon(1e-14));
    CHECK(one.per_day == doctest::Approx(143.44342032237859).epsilon(1e-14));
    CHECK(ten.per_day == doctest::Approx(1434.4342032237857).epsilon(1e-14));
    CHECK_EQ(one.per_day, one.speed * 86400.0);
    // sign-insensitive: a low deputy drifts as fast as a high one
    CHECK_EQ(drift_rate(n, -10.0).speed, ten.speed);
}

TEST_CASE("drift rate and annual dv are exactly linear in the bias") {
    const double n = mean_motion(body_default(), orbit_default());
    for (const double bias : {0.5, 1.0, 2.5, 10.0, 17.0}) {
        CHECK_EQ(drift_rate(n, 2.0 * bias).speed, 2.0 * drift_rate(n, bias).speed);
        CHECK_EQ(annual_stationkeeping_dv(n, 2.0 * bias, 86400.0).annual_dv,
                 2.0 * annual_stationkeeping_dv(n, bias, 86400.0).annual_dv);
    }
}

TEST_CASE("annual station-keeping dv is cadence-independent, per-correction is not") {
    const double n = mean_motion(body_default(), orbit_default());
    const StationKeepingBudget daily = annual_stationkeeping_dv(n, 10.0, 86400.0);
    CHECK(daily.annual_dv == doctest::Approx(6.0598204187115954).epsilon(1e-14));
    CHECK(daily.per_correction_dv == doctest::Approx(1.6602247722497521e-2).epsilon(1e-14));

    for (const double cadence : {3600.0, 43200.0, 172800.0, 604800.0}) {
        const StationKeepingBudget alt = annual_stationkeeping_dv(n, 10.0, cadence);
        CHECK_EQ(alt.annual_dv, daily.annual_dv);
        CHECK(alt.per_correction_dv ==
              doctest::Approx(daily.per_correction_dv * cadence / 86400.0).epsilon(1e-12));
    }
}

TEST_CASE("mean-motion offset is the drift speed over the orbit radius, sign flipped") {
    const double n = mean_motion(body_default(), orbit_default());
    const double a = orbit_default().semimajor_axis;
    const double dn = mean_motion_offset(n, 10.0, a);
    CHECK(dn == doctest::Approx(-2.4138190931226404e-9).epsilon(1e-14));
    // raised orbit runs slower; lowered orbit runs faster
    CHECK(dn < 0.0);
    CHECK(mean_motion_offset(n, -10.0, a) > 0.0);
    CHECK(std::fabs(dn) == doctest::Approx(drift_rate(n, 10.0).speed / a).epsilon(1e-15));
}

TEST_CASE("propellant mass matches frozen rocket-equation references") {
    const PropulsionSpec cold{11.0, 60.0, 9.80665};
    const PropulsionSpec electric{11.0, 1000.0, 9.80665};
    CHECK(propellant_mass(cold, 5.0) == doctest::Approx(0.093077954846806157).epsilon(1e-14));
    CHECK(propellant_mass(electric, 5.0) ==
          doctest::Approx(0.0056070096602500678).epsilon(1e-14));
    CHECK(propellant_mass(cold, 1.0) == doctest::Approx(0.018678920077222088).epsilon(1e-14));
    CHECK(propellant_mass(cold, 0.5) == doctest::Approx(0.0093434282045480235).epsilon(1e-14));
    CHECK_EQ(propellant_mass(cold, 0.0), 0.0);
}

TEST_CASE("propellant mass is monotone in dv and isp, and bounded by the wet mass") {
    const PropulsionSpec prop{11.0, 60.0, 9.80665};
    double previous = 0.0;
    for (const double dv : {0.1, 0.5, 1.0, 5.0, 50.0, 500.0}) {
        const double mass = propellant_mass(prop, dv);
        CHECK(mass > previous);
        CHECK(mass < prop.wet_mass);
        previous = mass;
    }
    double prior = propellant_mass({11.0, 20.0, 9.80665}, 5.0);
    for (const double isp : {60.0, 220.0, 1000.0, 3000.0}) {
        const double mass = propellant_mass({11.0, isp, 9.80665}, 5.0);
        CHECK(mass < prior);
        prior = mass;
    }
    CHECK_THROWS_AS(propellant_mass(prop, -0.1), std::domain_error);
}

TEST_CASE("propellant mass linearizes to m0 dv / (g0 isp) for small burns") {
    // relative error of the linearization is about x/2 at x = dv/(g0 isp),
    // so it stays under 1% for x < 0.02
    const PropulsionSpec prop{11.0, 60.0, 9.80665};
    const double exhaust = prop.g0 * prop.isp;
    for (const double x : {0.001, 0.005, 0.01, 0.019}) {
        const double dv = x * exhaust;
        const double exact = propellant_mass(prop, dv);
        const double linear = prop.wet_mass * dv / exhaust;
        CHECK(std::fabs(exact - linear) / exact < 0.01);
    }
}

TEST_CASE("sequential burns spend the same propellant as one combined burn") {
    const PropulsionSpec prop{11.0, 60.0, 9.80665};
    const double first = 2.0;
    const double second = 3.5;
    const double combined = propellant_mass(prop, first + second);
    const double burn1 = propellant_mass(prop, first);
    const PropulsionSpec after{prop.wet_mass - burn1, prop.isp, prop.g0};
    const double sequential = burn1 + propellant_mass(after, second);
    CHECK(sequential == doctest::Approx(combined).epsilon(1e-12));
}

TEST_CASE("retreat budget flags out-of-family maneuvers") {
    const PropulsionSpec prop{11.0, 60.0, 9.80665};
    const RetreatBudget nominal = retreat_propellant(prop, 1.0, 0.5, 1.0);
    CHECK(nominal.within_nominal_range);
    CHECK(nominal.propellant_mass == doctest::Approx(0.018678920077222088).epsilon(1e-14));
    CHECK_FALSE(retreat_propellant(prop, 2.0, 0.5, 1.0).within_nominal_range);
    CHECK_FALSE(retreat_propellant(prop, 0.1, 0.5, 1.0).within_nominal_range);
    CHECK_THROWS_AS(retreat_propellant(prop, 1.0, 1.5, 0.5), std::domain_error);
}

TEST_CASE("pointing displacement is angle times range") {
    CHECK_EQ(pointing_displacement(20.0 * 1e-6, 100.0), 0.002);
    CHECK(pointing_displacement(20.0 * 1e-6, 500.0) == doctest::Approx(0.01).epsilon(1e-15));
    CHECK_EQ(pointing_displacement(0.0, 500.0), 0.0);
}

TEST_CASE("closed-form propagation agrees with RK4 integration to far below 1e-6 m") {
    const double n = mean_motion(body_default(), orbit_default());
    const std::array<HcwState, 4> starts{{
        {10.0, 0.0, 0.0, 0.0, -2.0 * n * 10.0, 0.0},    // bounded ellipse
        {10.0, 100.0, 0.0, 0.0, -1.5 * n * 10.0, 0.0},  // biased-orbit drift
        {0.0, 0.0, 5.0, 0.0, 0.0, 0.01},                // cross-track oscillation
        {3.0, -7.0, 2.0, 0.004, -0.002, 0.001},         // generic state
    }};
    for (const HcwState& start : starts) {
        for (const double t : {100.0, 1000.0, 5676.8084167289999}) {
            const HcwState closed = hcw_propagate(start, n, t);
            const StateVec numeric = integrate(n, to_vec(start), t, 20000);
            CHECK(std::fabs(closed.x - numeric[0]) < 1e-8);
            CHECK(std::fabs(closed.y - numeric[1]) < 1e-8);
            CHECK(std::fabs(closed.z - numeric[2]) < 1e-8);
            CHECK(std::fabs(closed.vx - numeric[3]) < 1e-11);
            CHECK(std::fabs(closed.vy - numeric[4]) < 1e-11);
            CHECK(std::fabs(closed.vz - numeric[5]) < 1e-11);
        }
    }
}

TEST_CASE("propagation steps compose: P(t1 + t2) = P(t2) after P(t1)") {
    const double n = mean_motion(body_default(), orbit_default());
    const HcwState start{25.0, -180.0, 4.0, 0.01, -0.03, 0.002};
    for (const auto& [t1, t2] : std::array<std::array<double, 2>, 4>{
             {{137.5, 2000.25}, {1.0, 5000.0}, {2838.4, 2838.4}, {0.0, 977.0}}}) {
        const HcwState direct = hcw_propagate(start, n, t1 + t2);
        const HcwState stepped = hcw_propagate(hcw_propagate(start, n, t1), n, t2);
        const auto close = [](double a, double b) {
            return std::fabs(a - b) <= 1e-9 * (1.0 + std::max(std::fabs(a), std::fabs(b)));
        };
        CHECK(close(direct.x, stepped.x));
        CHECK(close(direct.y, stepped.y));
        CHECK(close(direct.z, stepped.z));
        CHECK(close(direct.vx, stepped.vx));
        CHECK(close(direct.vy, stepped.vy));
        CHECK(close(direct.vz, stepped.vz));
    }
}

TEST_CASE("zero-secular states stay bounded over 100 orbits") {
    const double n = mean_motion(body_default(), orbit_default());
    const double T = 2.0 * std::numbers::pi / n;
    // vy = -2 n x cancels the along-track secular term
    const HcwState start{10.0, 3.0, 2.0, 0.0, -2.0 * n * 10.0, 0.001};

    double first_orbit_max = 0.0;
    for (int i = 0; i <= 64; ++i) {
        const HcwState s = hcw_propagate(start, n, T * i / 64.0);
        first_orbit_max =
            std::max(first_orbit_max, std::sqrt(s.x * s.x + s.y * s.y + s.z * s.z));
    }
    double later_max = 0.0;
    for (int orbit = 1; orbit <= 100; ++orbit) {
        for (int i = 0; i < 16; ++i) {
            const HcwState s = hcw_propagate(start, n, T * orbit + T * i / 16.0);
            later_max = std::max(later_max, std::sqrt(s.x * s.x + s.y * s.y + s.z * s.z));
        }
    }
    CHECK(later_max <= first_orbit_max * (1.0 + 1e-6));
}

TEST_CASE("a biased deputy drifts along-track at exactly the drift rate") {
    const double n = mean_motion(body_default(), orbit_default());
    const double bias = 10.0;
    // x = bias with vy = -1.5 n bias is the pure drift solution
    const HcwState start{bias, 0.0, 0.0, 0.0, -1.5 * n * bias, 0.0};
    const double speed = drift_rate(n, bias).speed;
    for (const double t : {3600.0, 86400.0, 7.0 * 86400.0}) {
        const HcwState s = hcw_propagate(start, n, t);
        CHECK(s.x == doctest::Approx(bias).epsilon(1e-9));
        CHECK(-s.y == doctest::Approx(speed * t).epsilon(1e-9));
        CHECK(s.vy == doctest::Approx(-1.5 * n * bias).epsilon(1e-9));
    }
}

TEST_CASE("zero state and zero time are fixed points of the propagator") {
    const double n = mean_motion(body_default(), orbit_default());
    const HcwState zero{};
    const HcwState moved = hcw_propagate(zero, n, 1234.5);
    CHECK_EQ(moved.x, 0.0);
    CHECK_EQ(moved.y, 0.0);
    CHECK_EQ(moved.z, 0.0);
    const HcwState start{1.0, 2.0, 3.0, 0.1, 0.2, 0.3};
    const HcwState still = hcw_propagate(start, n, 0.0);
    CHECK_EQ(still.x, start.x);
    CHECK_EQ(still.y, start.y);
    CHECK_EQ(still.vz, start.vz);
}

TEST_CASE("validation rejects non-physical specs") {
    const CentralBody body = body_default();
    CHECK_THROWS_AS(validate(CentralBody{0.0, 6378137.0}), std::domain_error);
    CHECK_THROWS_AS(validate(CentralBody{3.986e14, -1.0}), std::domain_error);
    CHECK_THROWS_AS(validate(OrbitSpec{6.878e6, 0.001}, body), std::domain_error);
    CHECK_THROWS_AS(validate(OrbitSpec{6.878e6, -0.2}, body), std::domain_error);
    CHECK_THROWS_AS(validate(OrbitSpec{6.878e6, 1.2}, body), std::domain_error);
    CHECK_THROWS_AS(validate(OrbitSpec{6.0e6, 0.0}, body), std::domain_error);
    CHECK_THROWS_AS(validate(FormationSpec{-1.0, 10.0, 86400.0}), std::domain_error);
    // a deputy below the chief is a valid formation; only the bias magnitude
    // matters to the drift
    CHECK_NOTHROW(validate(FormationSpec{500.0, -1.0, 86400.0}));
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(validate(FormationSpec{500.0, nan, 86400.0}), std::domain_error);
    CHECK_THROWS_AS(validate(FormationSpec{500.0, 10.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(validate(PropulsionSpec{0.0, 60.0, 9.80665}), std::domain_error);
    CHECK_THROWS_AS(validate(PropulsionSpec{11.0, 0.0, 9.80665}), std::domain_error);
    CHECK_NOTHROW(validate(orbit_default(), body));
    CHECK_NOTHROW(validate(FormationSpec{}));
}

}  // TEST_SUITE("orbit")
