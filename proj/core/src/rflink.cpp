#include "opbeam/rflink.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "opbeam/units.hpp"

namespace opbeam::rflink {

using units::DbReference;
using units::Decibel;

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

Decibel ratio(double db) { return Decibel(db, DbReference::ratio); }

}  // namespace

void validate(const RfLinkSpec& link) {
    require_positive(link.frequency_ghz, "frequency");
    require_positive(link.separation_km, "separation");
    require_positive(link.data_rate_bps, "data rate");
    require_positive(link.bandwidth_hz, "bandwidth");
    require_finite(link.noise_figure_db, "noise figure");
    if (link.noise_figure_db < 0.0) {
        throw std::domain_error("noise figure must be non-negative");
    }
    require_finite(link.required_ebn0_db, "required Eb/N0");
    require_finite(link.link_margin_db, "link margin");
    if (link.link_margin_db < 0.0) {
        throw std::domain_error("link margin must be non-negative");
    }
    require_finite(link.system_losses_db, "system losses");
    if (link.system_losses_db < 0.0) {
        throw std::domain_error("system losses must be non-negative");
    }
    require_finite(link.tx_power_dbm, "transmit power");
    require_finite(link.tx_gain_dbi, "transmit gain");
    require_finite(link.rx_gain_dbi, "receive gain");
}

double fspl_db(double frequency_ghz, double separation_km) {
    require_positive(frequency_ghz, "frequency");
    require_positive(separation_km, "separation");
    return 92.45 + 20.0 * std::log10(frequency_ghz) + 20.0 * std::log10(separation_km);
}

double noise_density_dbm_per_hz(double noise_figure_db) {
    require_finite(noise_figure_db, "noise figure");
    if (noise_figure_db < 0.0) {
        throw std::domain_error("noise figure must be non-negative");
    }
    return -174.0 + noise_figure_db;
}

double required_carrier_dbm(const RfLinkSpec& link) {
    validate(link);
    const Decibel n0(noise_density_dbm_per_hz(link.noise_figure_db), DbReference::dbm);
    const Decibel carrier = n0 + ratio(link.required_ebn0_db) + ratio(link.link_margin_db) +
                            ratio(10.0 * std::log10(link.data_rate_bps));
    return carrier.db();
}

EirpRequirement required_eirp(const RfLinkSpec& link) {
    const Decibel carrier(required_carrier_dbm(link), DbReference::dbm);
    const Decibel eirp = carrier + ratio(fspl_db(link.frequency_ghz, link.separation_km)) +
                         ratio(link.system_losses_db) - ratio(link.rx_gain_dbi);
    EirpRequirement req;
    req.dbm = eirp.db();
    req.watts = units::watts_from_dbm(req.dbm);
    return req;
}

double received_power_dbm(const RfLinkSpec& link) {
    validate(link);
    const Decibel tx(link.tx_power_dbm, DbReference::dbm);
    const Decibel received = tx + ratio(link.tx_gain_dbi) + ratio(link.rx_gain_dbi) -
                             ratio(fspl_db(link.frequency_ghz, link.separation_km)) -
                             ratio(link.system_losses_db);
    return received.db();
}

double noise_power_dbm(const RfLinkSpec& link) {
    validate(link);
    const Decibel n0(noise_density_dbm_per_hz(link.noise_figure_db), DbReference::dbm);
    const Decibel noise = n0 + ratio(10.0 * std::log10(link.bandwidth_hz));
    return noise.db();
}

double carrier_to_noise_db(const RfLinkSpec& link) {
    const Decibel received(received_power_dbm(link), DbReference::dbm);
    const Decibel noise(noise_power_dbm(link), DbReference::dbm);
    return (received - noise).db();
}

double ebn0_achieved_db(const RfLinkSpec& link) {
    return carrier_to_noise_db(link) +
           10.0 * std::log10(link.bandwidth_hz / link.data_rate_bps);
}

RfBudgetResult evaluate_rf_link(const RfLinkSpec& link) {
    validate(link);
    RfBudgetResult result;
    result.fspl_db = fspl_db(link.frequency_ghz, link.separation_km);
    result.noise_density_dbm_per_hz = noise_density_dbm_per_hz(link.noise_figure_db);
    result.required_carrier_dbm = required_carrier_dbm(link);
    const EirpRequirement eirp = required_eirp(link);
    result.required_eirp_dbm = eirp.dbm;
    result.required_eirp_watts = eirp.watts;
    result.received_power_dbm = received_power_dbm(link);
    result.noise_power_dbm = noise_power_dbm(link);
    result.carrier_to_noise_db = carrier_to_noise_db(link);
    result.ebn0_achieved_db = ebn0_achieved_db(link);
    result.raw_excess_db = result.ebn0_achieved_db - link.required_ebn0_db;
    result.excess_margin_db = result.raw_excess_db - link.link_margin_db;
    result.closes = result.excess_margin_db >= 0.0;
    return result;
}

}  // namespace opbeam::rflink
