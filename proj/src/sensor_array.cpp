#include "hydrolink/sensor_array.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "hydrolink/errors.hpp"
#include "hydrolink/modem.hpp"
#include "hydrolink/rng.hpp"

namespace hydrolink {

void SensorArray::validate() const {
    if (positions.empty()) throw ConfigInvalid("array must contain at least one sensor");
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (!positions[i].allFinite())
            throw ConfigInvalid("array position " + std::to_string(i) + " must be finite");
        for (std::size_t j = i + 1; j < positions.size(); ++j)
            if ((positions[i] - positions[j]).norm() <= 1e-9)
                throw ConfigInvalid("array positions " + std::to_string(i) + " and " +
                                    std::to_string(j) + " coincide (min separation 1e-9 m)");
    }
}

void NoiseModel::validate() const {
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        throw ConfigInvalid("noise.sigma must be a non-negative finite number");
    if (!(f_low > 0.0) || !std::isfinite(f_low))
        throw ConfigInvalid("noise.f_low must be a positive finite number");
}

SensorArray build_dual_line_array(double span, double row_offset, int n_per_row) {
    if (!(span > 0.0) || !std::isfinite(span))
        throw ConfigInvalid("array.span must be a positive finite number");
    if (n_per_row < 2) throw ConfigInvalid("array.n_per_row must be at least 2");
    if (!(row_offset > 0.0) || !std::isfinite(row_offset))
        throw ConfigInvalid("array.row_offset must be a positive finite number");

    // Mirror the second half of the x positions off the first half so the
    // layout is symmetric to the last bit.
    std::vector<double> xs(static_cast<std::size_t>(n_per_row));
    const double step = span / (n_per_row - 1);
    for (int j = 0; j < n_per_row / 2; ++j) {
        xs[static_cast<std::size_t>(j)] = -0.5 * span + j * step;
        xs[static_cast<std::size_t>(n_per_row - 1 - j)] = -xs[static_cast<std::size_t>(j)];
    }
    if (n_per_row % 2 == 1) xs[static_cast<std::size_t>(n_per_row / 2)] = 0.0;

    SensorArray array;
    array.positions.reserve(static_cast<std::size_t>(2 * n_per_row));
    for (double x : xs) array.positions.push_back({x, row_offset, 0.0});
    for (double x : xs) array.positions.push_back({x, -row_offset, 0.0});
    array.validate();
    return array;
}

SpatialFingerprint steering_vector(const SensorArray& array, const DipoleSource& source) {
    array.validate();
    SpatialFingerprint fp;
    fp.source = source;
    fp.h.resize(array.count());
    for (long i = 0; i < array.count(); ++i) {
        try {
            fp.h[i] = dipole_geometric_factor(source, array.positions[static_cast<std::size_t>(i)]);
        } catch (const PointInsideSource& e) {
            throw PointInsideSource(e.distance, e.limit, static_cast<int>(i));
        }
    }
    if (!(fp.h.norm() > 0.0))
        throw DegenerateFingerprint(
            "spatial fingerprint has zero norm: every sensor lies on the source nodal plane");
    return fp;
}

namespace {

void fill_white(GaussianStream& stream, double sigma, std::vector<double>& out) {
    for (double& v : out) v = sigma * stream.next();
}

void fill_kolmogorov(GaussianStream& stream, const NoiseModel& model, double sample_rate,
                     std::vector<double>& out) {
    const long n = static_cast<long>(out.size());
    if (n == 0) return;
    if (n == 1) {
        out[0] = model.sigma * stream.next();
        return;
    }

    std::vector<double> white(static_cast<std::size_t>(n));
    for (double& v : white) v = stream.next();

    // Shape the white spectrum by f^(-5/6) in amplitude (f^(-5/3) in power),
    // flat below f_low, then rescale to the exact target variance using
    // Parseval: var = (1/n) * sum over bins of gain^2.
    const long n_bins = n / 2 + 1;
    std::vector<double> gain(static_cast<std::size_t>(n_bins));
    double sum_g2 = 0.0;
    for (long k = 0; k < n_bins; ++k) {
        const double f = std::max(static_cast<double>(k) * sample_rate / static_cast<double>(n),
                                  model.f_low);
        const double g = std::pow(f, -5.0 / 6.0);
        gain[static_cast<std::size_t>(k)] = g;
        const bool shared = (k == 0) || (n % 2 == 0 && k == n / 2);
        sum_g2 += (shared ? 1.0 : 2.0) * g * g;
    }

    std::vector<fftw_complex> spectrum(static_cast<std::size_t>(n_bins));
    fftw_plan fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), white.data(), spectrum.data(),
                                         FFTW_ESTIMATE);
    fftw_execute(fwd);
    fftw_destroy_plan(fwd);

    for (long k = 0; k < n_bins; ++k) {
        spectrum[static_cast<std::size_t>(k)][0] *= gain[static_cast<std::size_t>(k)];
        spectrum[static_cast<std::size_t>(k)][1] *= gain[static_cast<std::size_t>(k)];
    }

    fftw_plan inv = fftw_plan_dft_c2r_1d(static_cast<int>(n), spectrum.data(), out.data(),
                                         FFTW_ESTIMATE);
    fftw_execute(inv);
    fftw_destroy_plan(inv);

    const double scale = model.sigma / (static_cast<double>(n) *
                                        std::sqrt(sum_g2 / static_cast<double>(n)));
    for (double& v : out) v *= scale;
}

}  // namespace

void synthesize_noise_channel(const NoiseModel& model, int channel, double sample_rate,
                              std::vector<double>& out) {
    model.validate();
    if (model.sigma == 0.0) {
        std::fill(out.begin(), out.end(), 0.0);
        return;
    }
    GaussianStream stream(derive_seed(model.seed, {static_cast<std::uint64_t>(channel),
                                                   model.trial}));
    if (model.kind == NoiseKind::White) {
        fill_white(stream, model.sigma, out);
    } else {
        fill_kolmogorov(stream, model, sample_rate, out);
    }
}

MultiChannelSignal synthesize_noise(const NoiseModel& model, int channels, long length,
                                    double sample_rate) {
    model.validate();
    if (channels < 1) throw ConfigInvalid("noise synthesis requires at least one channel");
    if (length < 1) throw ConfigInvalid("noise synthesis requires a positive sample count");
    MultiChannelSignal signal;
    signal.sample_rate = sample_rate;
    signal.samples.resize(channels, length);
    std::vector<double> channel_buf(static_cast<std::size_t>(length));
    for (int i = 0; i < channels; ++i) {
        synthesize_noise_channel(model, i, sample_rate, channel_buf);
        for (long m = 0; m < length; ++m)
            signal.samples(i, m) = channel_buf[static_cast<std::size_t>(m)];
    }
    return signal;
}

MultiChannelSignal receive(const FluidMedium& medium, const DipoleSource& source,
                           const std::vector<double>& polarity_timeline, double sample_rate,
                           const SensorArray& array, const NoiseModel& noise) {
    medium.validate();
    source.validate();
    if (!(sample_rate > 0.0)) throw ConfigInvalid("receive requires a positive sample_rate");

    const SpatialFingerprint fp = steering_vector(array, source);
    const double p0 = source_strength_amplitude(medium, source);
    const long length = static_cast<long>(polarity_timeline.size());
    const long n = array.count();

    MultiChannelSignal signal;
    signal.sample_rate = sample_rate;
    signal.samples.resize(n, length);
    if (length == 0) return signal;

    const CarrierRef carrier(source.carrier_frequency, sample_rate);
    std::vector<double> s_phys(static_cast<std::size_t>(length));
    for (long m = 0; m < length; ++m)
        s_phys[static_cast<std::size_t>(m)] =
            -p0 * polarity_timeline[static_cast<std::size_t>(m)] * carrier(m);

    std::vector<double> channel_buf(static_cast<std::size_t>(length));
    for (long i = 0; i < n; ++i) {
        synthesize_noise_channel(noise, static_cast<int>(i), sample_rate, channel_buf);
        for (long m = 0; m < length; ++m)
            signal.samples(i, m) =
                fp.h[i] * s_phys[static_cast<std::size_t>(m)] + channel_buf[static_cast<std::size_t>(m)];
    }
    return signal;
}

SnrReport per_sensor_snr(const SpatialFingerprint& h, double p0, double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw ConfigInvalid("per-sensor SNR requires noise.sigma > 0");
    const long n = h.h.size();
    SnrReport report;
    report.per_sensor_linear.resize(n);
    report.per_sensor_db.resize(n);
    const double sigma_sq = sigma * sigma;
    for (long i = 0; i < n; ++i) {
        const double snr = 0.5 * h.h[i] * h.h[i] * p0 * p0 / sigma_sq;
        report.per_sensor_linear[i] = snr;
        report.per_sensor_db[i] = 10.0 * std::log10(snr);
    }
    report.mean_linear = 0.5 * p0 * p0 * h.norm_sq() / static_cast<double>(n) / sigma_sq;
    report.mean_db = 10.0 * std::log10(report.mean_linear);
    return report;
}

double calibrate_noise_for_snr(const SpatialFingerprint& h, double p0,
                               double target_mean_snr_db) {
    if (!std::isfinite(target_mean_snr_db))
        throw ConfigInvalid("target mean SNR must be finite");
    const double norm_sq = h.norm_sq();
    if (!(norm_sq > 0.0))
        throw DegenerateFingerprint("cannot calibrate noise against a zero-norm fingerprint");
    const double target_linear = std::pow(10.0, target_mean_snr_db / 10.0);
    const double mean_signal_power = 0.5 * p0 * p0 * norm_sq / static_cast<double>(h.h.size());
    return std::sqrt(mean_signal_power / target_linear);
}

}  // namespace hydrolink
