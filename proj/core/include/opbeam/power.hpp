#pragma once

namespace opbeam::power {

struct SolarPanelSpec {
    double area = 1.0;                 // m^2
    double efficiency = 0.25;          // conversion efficiency, 0..1
    double solar_irradiance = 1362.0;  // W/m^2
    double incidence_angle = 0.0;      // off-normal sun angle, rad, within [0, pi/2)
};

struct BatterySpec {
    double energy_density = 200.0;        // Wh/kg
    double potential_voltage = 4.0;       // pack voltage for capacity sizing, V
    double spare_fraction = 0.20;         // reserve held back from the orbit budget
    double round_trip_efficiency = 1.0;   // store-then-deliver efficiency, 0..1
};

// Efficiency chain from stored electrical power to power delivered at the
// customer's photovoltaic output.
struct PteChain {
    double emitter = 0.30;        // electrical-to-optical at the laser
    double transmission = 0.999;  // path transmission
    double receiver = 0.35;       // photovoltaic conversion at the customer
};

void validate(const SolarPanelSpec& panel);
void validate(const BatterySpec& battery);
void validate(const PteChain& chain);

// Electrical power while in sun: area * irradiance * efficiency * cos(angle), W.
double panel_power(const SolarPanelSpec& panel);

// Product of the chain efficiencies, 0..1.
double pte_total(const PteChain& chain);

// Power available for the payload when generation is averaged over the
// orbit's sunlit fraction: panel power * (T - T_eclipse) / T, W.
double expendable_power(double panel_power, double orbital_period, double eclipse_duration);

// Energy banked over one orbit's sunlit arc: panel power * (T - T_eclipse),
// expressed in Wh.
double orbit_energy(double panel_power, double orbital_period, double eclipse_duration);

// Scales a power or energy figure down so a spare fraction stays in
// reserve: amount / (1 + spare_fraction).
double derate_for_spare(double amount, double spare_fraction);

// Battery mass sized to hold the given energy: energy / energy_density, kg.
double battery_mass(double energy_wh, const BatterySpec& battery);

// Battery capacity at the pack voltage: energy / voltage, Ah.
double battery_capacity_ah(double energy_wh, const BatterySpec& battery);

// Optical power delivered to the customer from the electrical input fed to
// the emitter: input * emitter * transmission * receiver, W.
double delivered_power(double optical_input, const PteChain& chain);

struct PowerBudgetResult {
    double panel_power = 0.0;            // W
    double expendable_power = 0.0;       // W
    double orbit_energy = 0.0;           // Wh
    double derated_power = 0.0;          // W
    double derated_energy = 0.0;         // Wh
    double battery_mass = 0.0;           // kg
    double battery_capacity_ah = 0.0;    // Ah
    double pte_total = 0.0;
    double optical_input_power = 0.0;    // W fed to the emitter after overheads
    double delivered_power = 0.0;        // W at the customer PV output
};

/**
 * End-to-end orbit-average power chain: generation, sunlit-fraction
 * averaging, spare derating, battery sizing, and the power-transfer chain
 * after telemetry and bus overheads. Round-trip battery efficiency scales
 * the optical input. Requires the overheads to leave positive power for
 * the emitter.
 */
PowerBudgetResult power_budget(const SolarPanelSpec& panel, double orbital_period,
                               double eclipse_duration, const BatterySpec& battery,
                               const PteChain& chain, double telemetry_power,
                               double bus_load);

}  // namespace opbeam::power
