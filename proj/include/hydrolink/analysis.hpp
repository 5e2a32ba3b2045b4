#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hydrolink/beamform.hpp"
#include "hydrolink/modem.hpp"
#include "hydrolink/physics.hpp"
#include "hydrolink/sensor_array.hpp"
#include "hydrolink/types.hpp"

namespace hydrolink {

/// Second-order low-pass emulating finite actuator bandwidth, applied to the
/// polarity drive timeline before it excites the source.
struct ActuatorSettings {
    double natural_frequency = 40.0;  // Hz
    double damping = 0.7;

    void validate(double sample_rate) const;
};

/// Full transmit-to-decision scenario. The single `seed` drives both the
/// random payload bits and the noise substreams; `noise.sigma` is replaced
/// by a calibrated value when `target_snr_db` is set.
struct LinkConfig {
    FluidMedium medium;
    DipoleSource source;
    SensorArray array;
    BpskConfig bpsk;
    NoiseModel noise;
    std::optional<double> target_snr_db;  // mean per-sensor SNR, dB
    long bits = 10000;
    std::uint64_t seed = 0;
    std::optional<BitSequence> explicit_bits;
    std::optional<ActuatorSettings> actuator;
    Vec3 steering_offset = Vec3::Zero();  // beamformer position mismatch probe
    double sign_correction = -1.0;        // channel-sign factor applied before demod

    void validate() const;
};

struct LinkReport {
    BitSequence transmitted;
    BitSequence decoded;
    std::vector<double> decision_metrics;
    long bit_count = 0;
    long bit_errors = 0;
    double ber = 0.0;
    double p0 = 0.0;                // Pa m^2 (source strength prefactor)
    double sigma_used = 0.0;        // Pa
    double mean_input_snr_db = 0.0;
    double output_snr_db = 0.0;
    double empirical_gain_db = 0.0;  // NaN when sigma == 0
    double gamma = 0.0;
    CsrClass csr_class = CsrClass::Infeasible;
    double sample_rate = 0.0;
    long samples_per_symbol = 0;
    long total_samples = 0;
    double duration_s = 0.0;
};

struct LinkResult {
    LinkReport report;
    Waveform beamformed;  // raw combiner output (before sign correction)
};

BitSequence random_bits(long count, std::uint64_t seed);

LinkReport run_link(const LinkConfig& config);
LinkResult run_link_full(const LinkConfig& config, bool keep_waveform);

enum class SweepVariable { MeanSnrDb, Distance, BitRate };

struct SweepPoint {
    double value = 0.0;
    double ber = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    int trials = 0;
    long errors = 0;
    long bits = 0;
};

/// Monte-Carlo BER at each value of the swept variable; each trial gets an
/// independent derived seed, and the 95% CI is a Wilson score interval over
/// the pooled bits.
std::vector<SweepPoint> ber_sweep(const LinkConfig& base, SweepVariable variable,
                                  const std::vector<double>& values, int trials);

/// On-ray peak pressure amplitude P0 |G| at log-spaced radii, with the
/// fitted log-log slope. A ray in the nodal plane has all-zero amplitude
/// and an undefined slope, reported via `nodal`.
struct AttenuationProfile {
    std::vector<double> radii;       // m
    std::vector<double> amplitudes;  // Pa
    double slope = 0.0;              // d log10(amplitude) / d log10(r)
    bool nodal = false;
};

AttenuationProfile attenuation_profile(const FluidMedium& medium, const DipoleSource& source,
                                       const Vec3& direction, double r_min, double r_max,
                                       int samples);

/// Fingerprint magnitude S = ||h(p)|| over a grid of candidate source
/// positions. Grid points with any sensor inside the probe radius are
/// masked. Squared terms are summed in sorted order so mirror-symmetric
/// points produce bitwise-identical sums.
struct SensitivityGrid {
    GridSpec grid;
    std::vector<double> values;  // 1/m^2; NaN where masked
    std::vector<char> valid;
    double max_value = 0.0;
    double threshold_60 = 0.0;
    double threshold_30 = 0.0;

    long count_valid() const;
};

SensitivityGrid sensitivity_field(const SensorArray& array, const GridSpec& grid,
                                  const Vec3& probe_axis, double probe_radius);

/// Folded baseband eye traces. The baseband is the sign-corrected product
/// with the local carrier, low-passed by a one-carrier-period moving
/// average and scaled by 2 so ideal plateaus sit at +-config.amplitude.
/// Each trace spans two symbols starting at a symbol boundary; the eye
/// height is measured at the first symbol's centre, classes split by the
/// known transmitted bits.
struct EyeDiagramData {
    std::vector<std::vector<double>> traces;
    std::vector<std::uint8_t> trace_bits;  // transmitted bit of each trace's first symbol
    long center_index = 0;
    double eye_height = 0.0;
    double normalized_eye_height = 0.0;  // eye_height / (2 * config.amplitude)
};

EyeDiagramData eye_diagram(const Waveform& beamformed, const BitSequence& bits,
                           const BpskConfig& config, int trace_count,
                           double sign_correction = -1.0);

/// Gaussian tail probability Q(x).
double q_function(double x);

struct WilsonInterval {
    double low = 0.0;
    double high = 1.0;
};

/// 95% (default z) Wilson score interval for a binomial proportion.
WilsonInterval wilson_interval(long successes, long total, double z = 1.959963984540054);

/// Sum of sin^2 over one symbol window of the local carrier (the first
/// window; identical for every window when gamma is an integer).
double carrier_window_sin_sq_sum(const BpskConfig& config);

/// Exact discrete-time statistics of the decision metric for the matched
/// pipeline under white noise: D_k ~ N(+-mu, sigma_d^2) with
/// mu = P0 S2 / f_s and sigma_d = sigma / ||h|| * sqrt(S2) / f_s.
struct DecisionOracle {
    double mean_metric = 0.0;
    double metric_sigma = 0.0;
    double ebn0_linear = 0.0;
    double predicted_ber = 0.0;
};

DecisionOracle decision_oracle(double p0, double sigma, double fingerprint_norm_sq,
                               const BpskConfig& config);

/// Mean per-sensor SNR (dB) that produces the requested post-integration
/// Eb/N0 for an N-sensor matched pipeline.
double mean_snr_db_for_ebn0(double ebn0_linear, long n_sensors, const BpskConfig& config);

}  // namespace hydrolink
