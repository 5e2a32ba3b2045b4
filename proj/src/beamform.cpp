#include "hydrolink/beamform.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hydrolink/errors.hpp"

namespace hydrolink {

Waveform beamform(const MultiChannelSignal& y, const SpatialFingerprint& h) {
    if (y.channels() != h.h.size())
        throw ChannelCountMismatch("signal has " + std::to_string(y.channels()) +
                                   " channels but the fingerprint has " +
                                   std::to_string(h.h.size()) + " entries");
    const double norm_sq = h.norm_sq();
    if (!(norm_sq > 0.0))
        throw DegenerateFingerprint("cannot beamform with a zero-norm fingerprint");

    Waveform out;
    out.sample_rate = y.sample_rate;
    out.start_time = y.start_time;
    out.samples.resize(static_cast<std::size_t>(y.length()));
    Eigen::Map<Eigen::VectorXd> mapped(out.samples.data(), y.length());
    mapped = (h.h.transpose() * y.samples).transpose() / norm_sq;
    return out;
}

ArrayGainReport array_gain_report(const SpatialFingerprint& h, double sigma, double p0) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw ConfigInvalid("array gain report requires noise.sigma > 0");
    const double norm_sq = h.norm_sq();
    if (!(norm_sq > 0.0))
        throw DegenerateFingerprint("array gain is undefined for a zero-norm fingerprint");

    ArrayGainReport report;
    report.gain_db = 10.0 * std::log10(static_cast<double>(h.h.size()));
    report.output_snr_db = 10.0 * std::log10(0.5 * p0 * p0 * norm_sq / (sigma * sigma));
    report.mean_input_snr_db = report.output_snr_db - report.gain_db;
    return report;
}

double empirical_array_gain_db(const SpatialFingerprint& h, double sigma, double p0, int trials,
                               long samples_per_trial, std::uint64_t seed) {
    if (trials < 1) throw ConfigInvalid("empirical gain requires trials >= 1");
    if (samples_per_trial < 2) throw ConfigInvalid("empirical gain requires >= 2 samples per trial");
    if (!(sigma > 0.0)) throw ConfigInvalid("empirical gain requires noise.sigma > 0");
    const long n = h.h.size();
    const double norm_sq = h.norm_sq();
    if (!(norm_sq > 0.0))
        throw DegenerateFingerprint("empirical gain is undefined for a zero-norm fingerprint");

    // Accumulate per-channel and beamformed noise variance over all trials.
    double sum_in = 0.0, sum_sq_in = 0.0;    // pooled over channels and samples
    double sum_out = 0.0, sum_sq_out = 0.0;  // beamformed samples
    NoiseModel model;
    model.kind = NoiseKind::White;
    model.sigma = sigma;
    model.seed = seed;
    std::vector<double> channel(static_cast<std::size_t>(samples_per_trial));
    std::vector<double> combined(static_cast<std::size_t>(samples_per_trial));
    for (int t = 0; t < trials; ++t) {
        model.trial = static_cast<std::uint64_t>(t);
        std::fill(combined.begin(), combined.end(), 0.0);
        for (long i = 0; i < n; ++i) {
            synthesize_noise_channel(model, static_cast<int>(i), 0.0, channel);
            for (long m = 0; m < samples_per_trial; ++m) {
                const double v = channel[static_cast<std::size_t>(m)];
                sum_in += v;
                sum_sq_in += v * v;
                combined[static_cast<std::size_t>(m)] += h.h[i] * v;
            }
        }
        for (long m = 0; m < samples_per_trial; ++m) {
            const double v = combined[static_cast<std::size_t>(m)] / norm_sq;
            sum_out += v;
            sum_sq_out += v * v;
        }
    }

    const double count_in = static_cast<double>(trials) * static_cast<double>(n) *
                            static_cast<double>(samples_per_trial);
    const double count_out = static_cast<double>(trials) * static_cast<double>(samples_per_trial);
    const double var_in = sum_sq_in / count_in - (sum_in / count_in) * (sum_in / count_in);
    const double var_out = sum_sq_out / count_out - (sum_out / count_out) * (sum_out / count_out);

    const double mean_input_snr = 0.5 * p0 * p0 * norm_sq / static_cast<double>(n) / var_in;
    const double output_snr = 0.5 * p0 * p0 / var_out;
    return 10.0 * std::log10(output_snr / mean_input_snr);
}

}  // namespace hydrolink
