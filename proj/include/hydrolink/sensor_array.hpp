#pragma once

#include <cstdint>
#include <vector>

#include "hydrolink/physics.hpp"
#include "hydrolink/types.hpp"

namespace hydrolink {

/// Ordered pressure-sensor positions.
struct SensorArray {
    std::vector<Vec3> positions;

    long count() const { return static_cast<long>(positions.size()); }
    void validate() const;
};

/// Per-sensor geometric response h_i = G(sensor_i) for a given source.
struct SpatialFingerprint {
    Eigen::VectorXd h;  // 1/m^2
    DipoleSource source;

    double norm_sq() const { return h.squaredNorm(); }
};

enum class NoiseKind { White, Kolmogorov };

/// Zero-mean Gaussian sensor noise, independent across channels.
/// Kolmogorov noise is spectrally shaped to PSD ~ f^(-5/3) above f_low and
/// flat below, then scaled so the per-channel variance is sigma^2.
struct NoiseModel {
    NoiseKind kind = NoiseKind::White;
    double sigma = 0.0;             // Pa, per-sample standard deviation
    double f_low = 1.0;             // Hz, low-frequency flattening cutoff
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;        // substream selector for Monte-Carlo runs

    void validate() const;
};

/// Two rows of n_per_row sensors at y = +-row_offset, z = 0, x evenly spaced
/// over [-span/2, +span/2]. The second half of each row mirrors the first
/// half bitwise, so the layout is exactly symmetric in x.
SensorArray build_dual_line_array(double span = 0.2, double row_offset = 0.02,
                                  int n_per_row = 12);

/// h = [G(m_1), ..., G(m_N)]^T. Throws PointInsideSource (tagged with the
/// offending sensor index) or DegenerateFingerprint when ||h|| = 0.
SpatialFingerprint steering_vector(const SensorArray& array, const DipoleSource& source);

/// Fills one channel's noise record; `out` must be presized to the record
/// length. Deterministic in (model.seed, channel, model.trial).
void synthesize_noise_channel(const NoiseModel& model, int channel, double sample_rate,
                              std::vector<double>& out);

/// N independent channels of T samples each.
MultiChannelSignal synthesize_noise(const NoiseModel& model, int channels, long length,
                                    double sample_rate);

/// Sensor records y_i[m] = h_i * s_phys[m] + n_i[m], with the physical source
/// waveform s_phys[m] = -P0 * polarity[m] * sin(omega * m / f_s).
MultiChannelSignal receive(const FluidMedium& medium, const DipoleSource& source,
                           const std::vector<double>& polarity_timeline, double sample_rate,
                           const SensorArray& array, const NoiseModel& noise);

/// Sinusoid-power SNR per sensor: SNR_i = (h_i^2 P0^2 / 2) / sigma^2;
/// the mean uses the mean signal power over sensors.
struct SnrReport {
    Eigen::VectorXd per_sensor_linear;
    Eigen::VectorXd per_sensor_db;
    double mean_linear = 0.0;
    double mean_db = 0.0;
};

SnrReport per_sensor_snr(const SpatialFingerprint& h, double p0, double sigma);

/// sigma such that the mean per-sensor SNR equals target_mean_snr_db.
double calibrate_noise_for_snr(const SpatialFingerprint& h, double p0, double target_mean_snr_db);

}  // namespace hydrolink
