#include "opbeam/power.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "opbeam/errors.hpp"

namespace opbeam::power {

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

void require_unit_interval(double v, const char* what) {
    require_finite(v, what);
    if (!(v > 0.0) || v > 1.0) {
        throw std::domain_error(std::string(what) + " must lie in (0, 1]");
    }
}

}  // namespace

void validate(const SolarPanelSpec& panel) {
    require_positive(panel.area, "panel area");
    require_unit_interval(panel.efficiency, "panel efficiency");
    require_positive(panel.solar_irradiance, "solar irradiance");
    require_finite(panel.incidence_angle, "incidence angle");
    if (panel.incidence_angle < 0.0 || panel.incidence_angle >= std::numbers::pi / 2.0) {
        throw std::domain_error("incidence angle must lie in [0, pi/2)");
    }
}

void validate(const BatterySpec& battery) {
    require_positive(battery.energy_density, "battery energy density");
    require_positive(battery.potential_voltage, "battery voltage");
    require_finite(battery.spare_fraction, "spare fraction");
    if (battery.spare_fraction < 0.0 || battery.spare_fraction >= 1.0) {
        throw std::domain_error("spare fraction must lie in [0, 1)");
    }
    require_unit_interval(battery.round_trip_efficiency, "round-trip efficiency");
}

void validate(const PteChain& chain) {
    require_unit_interval(chain.emitter, "emitter efficiency");
    require_unit_interval(chain.transmission, "transmission efficiency");
    require_unit_interval(chain.receiver, "receiver efficiency");
}

double panel_power(const SolarPanelSpec& panel) {
    validate(panel);
    return panel.area * panel.solar_irradiance * panel.efficiency *
           std::cos(panel.incidence_angle);
}

double pte_total(const PteChain& chain) {
    validate(chain);
    return chain.emitter * chain.transmission * chain.receiver;
}

double expendable_power(double panel_power, double orbital_period, double eclipse_duration) {
    require_finite(panel_power, "panel power");
    if (panel_power < 0.0) {
        throw std::domain_error("panel power must be non-negative");
    }
    require_positive(orbital_period, "orbital period");
    require_finite(eclipse_duration, "eclipse duration");
    if (eclipse_duration < 0.0 || eclipse_duration >= orbital_period) {
        throw std::domain_error("eclipse duration must lie in [0, orbital period)");
    }
    return panel_power * (orbital_period - eclipse_duration) / orbital_period;
}

double orbit_energy(double panel_power, double orbital_period, double eclipse_duration) {
    require_finite(panel_power, "panel power");
    if (panel_power < 0.0) {
        throw std::domain_error("panel power must be non-negative");
    }
    require_positive(orbital_period, "orbital period");
    require_finite(eclipse_duration, "eclipse duration");
    if (eclipse_duration < 0.0 || eclipse_duration >= orbital_period) {
        throw std::domain_error("eclipse duration must lie in [0, orbital period)");
    }
    return panel_power * (orbital_period - eclipse_duration) / 3600.0;
}

double derate_for_spare(double amount, double spare_fraction) {
    require_finite(amount, "amount");
    if (amount < 0.0) {
        throw std::domain_error("amount must be non-negative");
    }
    require_finite(spare_fraction, "spare fraction");
    if (spare_fraction < 0.0) {
        throw std::domain_error("spare fraction must be non-negative");
    }
    return amount / (1.0 + spare_fraction);
}

double battery_mass(double energy_wh, const BatterySpec& battery) {
    validate(battery);
    require_finite(energy_wh, "energy");
    if (energy_wh < 0.0) {
        throw std::domain_error("energy must be non-negative");
    }
    return energy_wh / battery.energy_density;
}

double battery_capacity_ah(double energy_wh, const BatterySpec& battery) {
    validate(battery);
    require_finite(energy_wh, "energy");
    if (energy_wh < 0.0) {
        throw std::domain_error("energy must be non-negative");
    }
    return energy_wh / battery.potential_voltage;
}

double delivered_power(double optical_input, const PteChain& chain) {
    require_finite(optical_input, "optical input power");
    if (optical_input < 0.0) {
        throw std::domain_error("optical input power must be non-negative");
    }
    return optical_input * pte_total(chain);
}

PowerBudgetResult power_budget(const SolarPanelSpec& panel, double orbital_period,
                               double eclipse_duration, const BatterySpec& battery,
                               const PteChain& chain, double telemetry_power,
                               double bus_load) {
    validate(battery);
    validate(chain);
    require_finite(telemetry_power, "telemetry power");
    require_finite(bus_load, "bus load");
    if (telemetry_power < 0.0 || bus_load < 0.0) {
        throw std::domain_error("power overheads must be non-negative");
    }

    PowerBudgetResult result;
    result.panel_power = power::panel_power(panel);
    result.expendable_power = expendable_power(result.panel_power, orbital_period,
                                               eclipse_duration);
    result.orbit_energy = orbit_energy(result.panel_power, orbital_period, eclipse_duration);
    result.derated_power = derate_for_spare(result.expendable_power, battery.spare_fraction);
    result.derated_energy = derate_for_spare(result.orbit_energy, battery.spare_fraction);
    result.battery_mass = battery_mass(result.derated_energy, battery);
    result.battery_capacity_ah = battery_capacity_ah(result.derated_energy, battery);
    result.pte_total = pte_total(chain);
    result.optical_input_power =
        result.derated_power * battery.round_trip_efficiency - telemetry_power - bus_load;
    if (result.optical_input_power < 0.0) {
        throw ValidationError("telemetry and bus overheads exceed the derated power "
                              "available to the emitter");
    }
    result.delivered_power = delivered_power(result.optical_input_power, chain);
    return result;
}

}  // namespace opbeam::power
