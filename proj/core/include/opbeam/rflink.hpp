#pragma once

namespace opbeam::rflink {

struct RfLinkSpec {
    double frequency_ghz = 2.3;
    double separation_km = 0.5;
    double data_rate_bps = 19200.0;
    double noise_figure_db = 3.0;
    double required_ebn0_db = 9.6;   // demodulator threshold for the chosen modulation
    double link_margin_db = 10.0;    // design margin held on top of the threshold
    double system_losses_db = 3.0;
    double tx_power_dbm = 0.0;
    double tx_gain_dbi = 3.0;
    double rx_gain_dbi = 0.0;
    double bandwidth_hz = 1.0e5;
};

void validate(const RfLinkSpec& link);

// Free-space path loss in dB for f in GHz and range in km:
// 92.45 + 20 log10(f) + 20 log10(R).
double fspl_db(double frequency_ghz, double separation_km);

// Receiver noise density kT0 + NF referenced to 1 Hz: -174 + NF, dBm/Hz.
double noise_density_dbm_per_hz(double noise_figure_db);

// Carrier power needed at the demodulator input to hold the required
// Eb/N0 plus margin at the configured data rate, dBm.
double required_carrier_dbm(const RfLinkSpec& link);

struct EirpRequirement {
    double dbm = 0.0;
    double watts = 0.0;
};

// Transmit EIRP that delivers the required carrier through path loss and
// system losses after receive gain.
EirpRequirement required_eirp(const RfLinkSpec& link);

// Carrier power at the demodulator for the configured transmitter, dBm.
double received_power_dbm(const RfLinkSpec& link);

// Noise power integrated over the receiver bandwidth, dBm.
double noise_power_dbm(const RfLinkSpec& link);

double carrier_to_noise_db(const RfLinkSpec& link);

// Achieved Eb/N0 = C/N + 10 log10(B / Rb), dB.
double ebn0_achieved_db(const RfLinkSpec& link);

struct RfBudgetResult {
    double fspl_db = 0.0;
    double noise_density_dbm_per_hz = 0.0;
    double required_carrier_dbm = 0.0;
    double required_eirp_dbm = 0.0;
    double required_eirp_watts = 0.0;
    double received_power_dbm = 0.0;
    double noise_power_dbm = 0.0;
    double carrier_to_noise_db = 0.0;
    double ebn0_achieved_db = 0.0;
    double excess_margin_db = 0.0;  // achieved - (required + margin)
    double raw_excess_db = 0.0;     // achieved - required, before margin
    bool closes = false;            // excess_margin_db >= 0
};

// Full telemetry link budget. The link closes when the achieved Eb/N0
// covers the demodulator threshold plus the design margin.
RfBudgetResult evaluate_rf_link(const RfLinkSpec& link);

}  // namespace opbeam::rflink
