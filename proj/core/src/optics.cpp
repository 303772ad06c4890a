#include "opbeam/optics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace opbeam::optics {

namespace {

constexpr double kPi = std::numbers::pi;

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

// ln I0(x) for x >= 0 without overflow. Below the crossover the library
// Bessel value fits comfortably in a double; above it the standard
// asymptotic expansion is accurate to better than 1e-14.
double ln_bessel_i0(double x) {
    if (x < 600.0) {
        return std::log(std::cyl_bessel_i(0.0, x));
    }
    const double inv = 1.0 / x;
    const double series = inv * (1.0 / 8.0 +
                          inv * (9.0 / 128.0 +
                          inv * (225.0 / 3072.0 +
                          inv * (11025.0 / 98304.0))));
    return x - 0.5 * std::log(2.0 * kPi * x) + std::log1p(series);
}

// Overlap area of two disks with radii r1, r2 and center distance d.
double disk_overlap_area(double r1, double r2, double d) {
    if (d >= r1 + r2) {
        return 0.0;
    }
    const double r_min = std::min(r1, r2);
    if (d <= std::abs(r1 - r2)) {
        return kPi * r_min * r_min;
    }
    // lens formula, guarded against roundoff pushing acos/sqrt out of domain
    const double a1 = std::clamp((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1), -1.0, 1.0);
    const double a2 = std::clamp((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2), -1.0, 1.0);
    const double k = std::max(0.0, (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) *
                                       (d + r1 + r2));
    return r1 * r1 * std::acos(a1) + r2 * r2 * std::acos(a2) - 0.5 * std::sqrt(k);
}

// 20-point Gauss-Legendre rule on [-1, 1], positive half; nodes are strictly
// interior so the integrand is never sampled at r = 0.
constexpr int kQuadHalf = 10;
constexpr double kQuadNode[kQuadHalf] = {
    0.076526521133497338, 0.2277858511416451,  0.37370608871541955,
    0.51086700195082713,  0.63605368072651502, 0.7463319064601508,
    0.83911697182221878,  0.91223442825132584, 0.96397192727791381,
    0.99312859918509488};
constexpr double kQuadWeight[kQuadHalf] = {
    0.15275338713072578,  0.14917298647260366, 0.14209610931838187,
    0.13168863844917653,  0.11819453196151825, 0.10193011981724026,
    0.083276741576704671, 0.062672048334109443, 0.040601429800386217,
    0.017614007139153273};

// Power fraction of an offset circular Gaussian (1/e^2 radius w, centroid
// displaced d) collected by a disk of radius rx, via composite Gauss-Legendre
// on the radial integral. The integrand is analytic, so the rule converges to
// rounding error; quadrature wobble therefore cannot break the monotonicity
// the capture fraction promises. Log-space evaluation keeps large Bessel
// arguments from overflowing.
double gaussian_capture(double w, double rx, double d) {
    if (d == 0.0) {
        return -std::expm1(-2.0 * rx * rx / (w * w));
    }
    if (rx >= d + 8.0 * w) {
        return 1.0;  // the rim clears the whole beam; the tail beyond 8 w
                     // carries exp(-128) of the power
    }
    const double lo = std::max(0.0, d - 8.0 * w);
    if (lo >= rx) {
        return 0.0;
    }
    const double inv_w2 = 1.0 / (w * w);
    const auto integrand = [&](double r) {
        const double g = -2.0 * (r * r + d * d) * inv_w2 + ln_bessel_i0(4.0 * r * d * inv_w2);
        return 4.0 * r * inv_w2 * std::exp(g);
    };
    constexpr int kPanelCount = 8;
    const double panel = (rx - lo) / kPanelCount;
    double sum = 0.0;
    for (int p = 0; p < kPanelCount; ++p) {
        const double center = lo + (p + 0.5) * panel;
        const double half = 0.5 * panel;
        for (int i = 0; i < kQuadHalf; ++i) {
            sum += kQuadWeight[i] * half *
                   (integrand(center - half * kQuadNode[i]) +
                    integrand(center + half * kQuadNode[i]));
        }
    }
    return sum;
}

// splitmix64 finalizer over (seed, block); each sampling block gets an
// independent, platform-stable engine seed.
std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (block + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

const char* beam_profile_name(BeamProfile p) {
    switch (p) {
        case BeamProfile::flat_top: return "flat_top";
        case BeamProfile::gaussian: return "gaussian";
    }
    throw std::logic_error("unhandled beam profile");
}

void validate(const OpticalTxSpec& tx) {
    require_positive(tx.wavelength, "wavelength");
    require_positive(tx.aperture_diameter, "aperture diameter");
    require_positive(tx.design_divergence, "design divergence");
    const double limit = diffraction_divergence(tx.wavelength, tx.aperture_diameter);
    if (tx.design_divergence < limit) {
        throw std::domain_error("design divergence is below the diffraction limit for this "
                                "wavelength and aperture");
    }
}

void validate(const ReceiverSpec& rx) {
    require_positive(rx.radius, "receiver radius");
    require_positive(rx.separation, "separation");
}

void validate(const JitterSpec& jitter) {
    require_finite(jitter.sigma_tx, "transmitter jitter");
    require_finite(jitter.sigma_rx, "receiver jitter");
    if (jitter.sigma_tx < 0.0 || jitter.sigma_rx < 0.0) {
        throw std::domain_error("jitter sigmas must be non-negative");
    }
}

double diffraction_divergence(double wavelength, double aperture_diameter) {
    require_positive(wavelength, "wavelength");
    require_positive(aperture_diameter, "aperture diameter");
    return 2.44 * wavelength / aperture_diameter;
}

double spot_diameter(double divergence, double range) {
    require_positive(divergence, "divergence");
    require_positive(range, "range");
    return divergence * range;
}

double combined_jitter(const JitterSpec& jitter) {
    validate(jitter);
    return std::sqrt(jitter.sigma_tx * jitter.sigma_tx + jitter.sigma_rx * jitter.sigma_rx);
}

double jitter_lateral_error(const JitterSpec& jitter, double range) {
    require_positive(range, "range");
    return combined_jitter(jitter) * range;
}

double doppler_wavelength_shift(double wavelength, double relative_speed) {
    require_positive(wavelength, "wavelength");
    require_finite(relative_speed, "relative speed");
    if (!(std::abs(relative_speed) < 0.01 * kSpeedOfLight)) {
        throw std::domain_error("relative speed outside the first-order Doppler regime "
                                "(|v| must stay below 0.01 c)");
    }
    return wavelength * relative_speed / kSpeedOfLight;
}

double capture_fraction_static(const OpticalTxSpec& tx, const ReceiverSpec& rx,
                               double offset) {
    validate(tx);
    validate(rx);
    require_finite(offset, "offset");
    if (offset < 0.0) {
        throw std::domain_error("offset must be non-negative");
    }
    const double beam_radius = spot_diameter(tx.design_divergence, rx.separation) / 2.0;
    double fraction = 0.0;
    switch (tx.profile) {
        case BeamProfile::flat_top:
            fraction = disk_overlap_area(beam_radius, rx.radius, offset) /
                       (kPi * beam_radius * beam_radius);
            break;
        case BeamProfile::gaussian:
            fraction = gaussian_capture(beam_radius, rx.radius, offset);
            break;
    }
    return std::clamp(fraction, 0.0, 1.0);
}

CaptureEstimate capture_fraction_jittered(const OpticalTxSpec& tx, const ReceiverSpec& rx,
                                          const JitterSpec& jitter, std::int64_t samples,
                                          std::uint64_t seed) {
    validate(tx);
    validate(rx);
    if (samples < 1) {
        throw std::domain_error("sample count must be at least 1");
    }
    const double sigma_r = jitter_lateral_error(jitter, rx.separation);

    CaptureEstimate estimate;
    if (sigma_r == 0.0) {
        estimate.mean = capture_fraction_static(tx, rx, 0.0);
        estimate.std_error = 0.0;
        estimate.sample_count = 0;
        estimate.method = "analytic";
        return estimate;
    }

    constexpr std::int64_t kBlockSize = 8192;
    double sum = 0.0;
    double sum_sq = 0.0;
    std::int64_t produced = 0;
    for (std::uint64_t block = 0; produced < samples; ++block) {
        std::mt19937_64 engine(block_seed(seed, block));
        const std::int64_t take = std::min(kBlockSize, samples - produced);
        for (std::int64_t i = 0; i < take; ++i) {
            // top 53 bits shifted into (0, 1]; log never sees zero
            const double u = static_cast<double>((engine() >> 11) + 1) * 0x1p-53;
            const double r = sigma_r * std::sqrt(-2.0 * std::log(u));
            const double f = capture_fraction_static(tx, rx, r);
            sum += f;
            sum_sq += f * f;
        }
        produced += take;
    }

    const double n = static_cast<double>(samples);
    estimate.mean = sum / n;
    double variance = 0.0;
    if (samples > 1) {
        variance = std::max(0.0, (sum_sq - n * estimate.mean * estimate.mean) / (n - 1.0));
    }
    estimate.std_error = std::sqrt(variance / n);
    estimate.sample_count = samples;
    estimate.method = "monte_carlo";
    return estimate;
}

}  // namespace opbeam::optics
