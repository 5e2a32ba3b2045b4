#include "hydrolink/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "hydrolink/errors.hpp"
#include "hydrolink/rng.hpp"

namespace hydrolink {

namespace {
constexpr std::uint64_t kNoiseStream = 0xA11CE;
constexpr std::uint64_t kBitStream = 0xB175;
}  // namespace

void ActuatorSettings::validate(double sample_rate) const {
    if (!(natural_frequency > 0.0) || !std::isfinite(natural_frequency))
        throw ConfigInvalid("actuator.natural_frequency must be a positive finite number");
    if (!(damping > 0.0) || !std::isfinite(damping))
        throw ConfigInvalid("actuator.damping must be a positive finite number");
    if (natural_frequency >= 0.5 * sample_rate)
        throw ConfigInvalid("actuator.natural_frequency must be below the Nyquist frequency");
}

void LinkConfig::validate() const {
    medium.validate();
    source.validate();
    array.validate();
    bpsk.validate();
    noise.validate();
    if (explicit_bits) {
        if (explicit_bits->empty()) throw ConfigInvalid("link.bits must contain at least one bit");
    } else if (bits < 1) {
        throw ConfigInvalid("link.bits must be >= 1");
    }
    if (std::abs(bpsk.carrier_frequency - source.carrier_frequency) >
        1e-9 * source.carrier_frequency)
        throw ConfigInvalid("bpsk.carrier_frequency must match source.carrier_frequency");
    if (target_snr_db && !std::isfinite(*target_snr_db))
        throw ConfigInvalid("link.target_snr_db must be finite");
    if (actuator) actuator->validate(bpsk.sample_rate);
    if (!steering_offset.allFinite())
        throw ConfigInvalid("link.steering_offset must be finite");
    if (!std::isfinite(sign_correction) || sign_correction == 0.0)
        throw ConfigInvalid("link.sign_correction must be finite and nonzero");
}

BitSequence random_bits(long count, std::uint64_t seed) {
    BitSequence bits(static_cast<std::size_t>(count));
    std::mt19937_64 eng(seed);
    for (auto& b : bits) b = static_cast<std::uint8_t>(eng() & 1ull);
    return bits;
}

LinkReport run_link(const LinkConfig& config) {
    return run_link_full(config, false).report;
}

LinkResult run_link_full(const LinkConfig& config, bool keep_waveform) {
    config.validate();

    const BitSequence bits = config.explicit_bits
                                 ? *config.explicit_bits
                                 : random_bits(config.bits, derive_seed(config.seed, {kBitStream}));
    const long n_bits = static_cast<long>(bits.size());
    const long spb = config.bpsk.samples_per_symbol();
    const long total = n_bits * spb;
    const double fs = config.bpsk.sample_rate;

    const SpatialFingerprint fp_true = steering_vector(config.array, config.source);
    SpatialFingerprint fp_steer = fp_true;
    double coef = 1.0;
    if (config.steering_offset.norm() > 0.0) {
        DipoleSource assumed = config.source;
        assumed.position += config.steering_offset;
        fp_steer = steering_vector(config.array, assumed);
        coef = fp_steer.h.dot(fp_true.h) / fp_steer.norm_sq();
    }
    const double norm_sq_steer = fp_steer.norm_sq();

    const double p0 = source_strength_amplitude(config.medium, config.source);
    const double sigma = config.target_snr_db
                             ? calibrate_noise_for_snr(fp_true, p0, *config.target_snr_db)
                             : config.noise.sigma;

    // Combiner output, assembled channel-major so the full N x T sensor
    // record is never materialized: y_sum = coef * s_phys + (h . n) / ||h||^2.
    const CarrierRef carrier(config.source.carrier_frequency, fs);
    Waveform combined;
    combined.sample_rate = fs;
    combined.samples.resize(static_cast<std::size_t>(total));
    {
        // Drive timeline: per-sample polarity, optionally band-limited by
        // the actuator before it reaches the source.
        std::vector<double> timeline = polarity_timeline(bits, config.bpsk);
        if (config.actuator) {
            Waveform drive;
            drive.sample_rate = fs;
            drive.samples = std::move(timeline);
            timeline = actuator_filter(drive, config.actuator->natural_frequency,
                                       config.actuator->damping)
                           .samples;
        }
        for (long m = 0; m < total; ++m)
            combined.samples[static_cast<std::size_t>(m)] =
                coef * -p0 * timeline[static_cast<std::size_t>(m)] * carrier(m);
    }

    double empirical_gain_db = std::numeric_limits<double>::quiet_NaN();
    if (sigma > 0.0 && total > 0) {
        NoiseModel model = config.noise;
        model.sigma = sigma;
        model.seed = derive_seed(config.seed, {kNoiseStream});

        std::vector<double> noise_bf(static_cast<std::size_t>(total), 0.0);
        std::vector<double> channel(static_cast<std::size_t>(total));
        double in_sum = 0.0, in_sq = 0.0;
        for (long i = 0; i < config.array.count(); ++i) {
            synthesize_noise_channel(model, static_cast<int>(i), fs, channel);
            const double hi = fp_steer.h[i];
            for (long m = 0; m < total; ++m) {
                const double v = channel[static_cast<std::size_t>(m)];
                in_sum += v;
                in_sq += v * v;
                noise_bf[static_cast<std::size_t>(m)] += hi * v;
            }
        }
        double out_sum = 0.0, out_sq = 0.0;
        for (long m = 0; m < total; ++m) {
            const double w = noise_bf[static_cast<std::size_t>(m)] / norm_sq_steer;
            out_sum += w;
            out_sq += w * w;
            combined.samples[static_cast<std::size_t>(m)] += w;
        }
        const double count_in =
            static_cast<double>(config.array.count()) * static_cast<double>(total);
        const double count_out = static_cast<double>(total);
        const double var_in = in_sq / count_in - (in_sum / count_in) * (in_sum / count_in);
        const double var_out = out_sq / count_out - (out_sum / count_out) * (out_sum / count_out);
        if (var_in > 0.0 && var_out > 0.0) {
            const double out_snr = 0.5 * coef * coef * p0 * p0 / var_out;
            const double in_snr = 0.5 * p0 * p0 * fp_true.norm_sq() /
                                  static_cast<double>(config.array.count()) / var_in;
            empirical_gain_db = 10.0 * std::log10(out_snr / in_snr);
        }
    }

    // Receiver: known channel-sign correction, then integrate-and-dump. The
    // raw combiner output is preserved only when the caller asked for it.
    std::vector<DecisionRecord> decisions;
    if (keep_waveform) {
        Waveform corrected = combined;
        for (double& v : corrected.samples) v *= config.sign_correction;
        decisions = coherent_demodulate(corrected, config.bpsk);
    } else {
        for (double& v : combined.samples) v *= config.sign_correction;
        decisions = coherent_demodulate(combined, config.bpsk);
    }

    LinkResult result;
    LinkReport& report = result.report;
    report.transmitted = bits;
    report.decoded = decisions_to_bits(decisions);
    report.decision_metrics.resize(decisions.size());
    for (std::size_t k = 0; k < decisions.size(); ++k)
        report.decision_metrics[k] = decisions[k].metric;
    report.bit_count = n_bits;
    report.bit_errors = 0;
    for (long k = 0; k < n_bits; ++k)
        if (report.decoded[static_cast<std::size_t>(k)] != bits[static_cast<std::size_t>(k)])
            ++report.bit_errors;
    report.ber = static_cast<double>(report.bit_errors) / static_cast<double>(n_bits);
    report.p0 = p0;
    report.sigma_used = sigma;
    if (sigma > 0.0) {
        report.mean_input_snr_db =
            10.0 * std::log10(0.5 * p0 * p0 * fp_true.norm_sq() /
                              static_cast<double>(config.array.count()) / (sigma * sigma));
        report.output_snr_db =
            10.0 * std::log10(0.5 * coef * coef * p0 * p0 * norm_sq_steer / (sigma * sigma));
    } else {
        report.mean_input_snr_db = std::numeric_limits<double>::infinity();
        report.output_snr_db = std::numeric_limits<double>::infinity();
    }
    report.empirical_gain_db = empirical_gain_db;
    const CsrReport csr = cycle_per_symbol(config.bpsk);
    report.gamma = csr.gamma;
    report.csr_class = csr.classification;
    report.sample_rate = fs;
    report.samples_per_symbol = spb;
    report.total_samples = total;
    report.duration_s = static_cast<double>(n_bits) / config.bpsk.bit_rate;

    if (keep_waveform) result.beamformed = std::move(combined);
    return result;
}

std::vector<SweepPoint> ber_sweep(const LinkConfig& base, SweepVariable variable,
                                  const std::vector<double>& values, int trials) {
    if (values.empty()) throw ConfigInvalid("sweep requires at least one value");
    if (trials < 1) throw ConfigInvalid("sweep.trials must be >= 1");
    if (variable == SweepVariable::Distance && !(base.source.position.norm() > 0.0))
        throw ConfigInvalid(
            "distance sweep requires a nonzero source.position to define the ray");

    std::vector<SweepPoint> table;
    table.reserve(values.size());
    for (std::size_t vi = 0; vi < values.size(); ++vi) {
        const double value = values[vi];
        LinkConfig cfg = base;
        switch (variable) {
            case SweepVariable::MeanSnrDb:
                cfg.target_snr_db = value;
                break;
            case SweepVariable::Distance: {
                if (!(value > 0.0)) throw ConfigInvalid("sweep distance values must be positive");
                cfg.source.position = base.source.position.normalized() * value;
                break;
            }
            case SweepVariable::BitRate:
                cfg.bpsk.bit_rate = value;
                break;
        }
        SweepPoint point;
        point.value = value;
        point.trials = trials;
        for (int t = 0; t < trials; ++t) {
            cfg.seed = derive_seed(base.seed, {static_cast<std::uint64_t>(vi),
                                               static_cast<std::uint64_t>(t)});
            const LinkReport report = run_link(cfg);
            point.errors += report.bit_errors;
            point.bits += report.bit_count;
        }
        point.ber = static_cast<double>(point.errors) / static_cast<double>(point.bits);
        const WilsonInterval ci = wilson_interval(point.errors, point.bits);
        point.ci_low = ci.low;
        point.ci_high = ci.high;
        table.push_back(point);
    }
    return table;
}

AttenuationProfile attenuation_profile(const FluidMedium& medium, const DipoleSource& source,
                                       const Vec3& direction, double r_min, double r_max,
                                       int samples) {
    medium.validate();
    source.validate();
    if (!direction.allFinite() || !(direction.norm() > 0.0))
        throw ConfigInvalid("attenuation direction must be a nonzero finite vector");
    if (!(r_min > source.radius))
        throw ConfigInvalid("attenuation r_min must exceed the source radius");
    if (!(r_max > r_min)) throw ConfigInvalid("attenuation r_max must exceed r_min");
    if (samples < 2) throw ConfigInvalid("attenuation requires at least 2 samples");

    const Vec3 unit = direction.normalized();
    const double p0 = source_strength_amplitude(medium, source);
    const double log_ratio = std::log(r_max / r_min);

    AttenuationProfile profile;
    profile.radii.resize(static_cast<std::size_t>(samples));
    profile.amplitudes.resize(static_cast<std::size_t>(samples));
    bool all_zero = true;
    for (int i = 0; i < samples; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(samples - 1);
        const double r = r_min * std::exp(log_ratio * frac);
        const double g = dipole_geometric_factor(source, source.position + r * unit);
        const double amp = p0 * std::abs(g);
        profile.radii[static_cast<std::size_t>(i)] = r;
        profile.amplitudes[static_cast<std::size_t>(i)] = amp;
        if (amp != 0.0) all_zero = false;
    }

    if (all_zero) {
        profile.nodal = true;
        profile.slope = std::numeric_limits<double>::quiet_NaN();
        return profile;
    }

    // Least-squares slope of log10(amplitude) against log10(r).
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double x = std::log10(profile.radii[static_cast<std::size_t>(i)]);
        const double y = std::log10(profile.amplitudes[static_cast<std::size_t>(i)]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(samples);
    profile.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return profile;
}

long SensitivityGrid::count_valid() const {
    long n = 0;
    for (char v : valid) n += (v != 0);
    return n;
}

SensitivityGrid sensitivity_field(const SensorArray& array, const GridSpec& grid,
                                  const Vec3& probe_axis, double probe_radius) {
    array.validate();
    if (!probe_axis.allFinite() || std::abs(probe_axis.norm() - 1.0) > 1e-12)
        throw ConfigInvalid("sensitivity probe_axis must have unit norm (tolerance 1e-12)");
    if (!(probe_radius >= 0.0) || !std::isfinite(probe_radius))
        throw ConfigInvalid("sensitivity probe_radius must be a non-negative finite number");
    for (int d = 0; d < 3; ++d) {
        if (grid.shape[d] < 1) throw ConfigInvalid("grid.shape entries must be >= 1");
        if (grid.shape[d] > 1 && !(grid.hi[d] > grid.lo[d]))
            throw ConfigInvalid("grid.hi must exceed grid.lo along sampled dimensions");
    }

    SensitivityGrid field;
    field.grid = grid;
    field.values.assign(static_cast<std::size_t>(grid.count()),
                        std::numeric_limits<double>::quiet_NaN());
    field.valid.assign(static_cast<std::size_t>(grid.count()), 0);

    const std::size_t n = array.positions.size();
    std::vector<double> terms(n);
    double max_value = 0.0;
    for (int iz = 0; iz < grid.shape[2]; ++iz)
        for (int iy = 0; iy < grid.shape[1]; ++iy)
            for (int ix = 0; ix < grid.shape[0]; ++ix) {
                const Vec3 p = grid.point(ix, iy, iz);
                bool masked = false;
                for (std::size_t i = 0; i < n; ++i) {
                    const Vec3 delta = array.positions[i] - p;
                    const double r = delta.norm();
                    if (r <= probe_radius) {
                        masked = true;
                        break;
                    }
                    const double g = delta.dot(probe_axis) / (r * r * r);
                    terms[i] = g * g;
                }
                if (masked) continue;
                // Sorted accumulation keeps the sum invariant under the
                // sensor permutations induced by mirror symmetry.
                std::sort(terms.begin(), terms.end());
                double sum = 0.0;
                for (double t : terms) sum += t;
                const double s = std::sqrt(sum);
                const std::size_t idx = static_cast<std::size_t>(grid.index(ix, iy, iz));
                field.values[idx] = s;
                field.valid[idx] = 1;
                max_value = std::max(max_value, s);
            }

    if (field.count_valid() == 0)
        throw EmptyGrid("every grid point lies within the probe radius of a sensor");

    field.max_value = max_value;
    field.threshold_60 = 0.6 * max_value;
    field.threshold_30 = 0.3 * max_value;
    return field;
}

EyeDiagramData eye_diagram(const Waveform& beamformed, const BitSequence& bits,
                           const BpskConfig& config, int trace_count, double sign_correction) {
    config.validate();
    if (trace_count < 1) throw ConfigInvalid("eye trace_count must be >= 1");
    const long spb = config.samples_per_symbol();
    const long total = beamformed.length();
    if (total % spb != 0)
        throw LengthMismatch("eye input length " + std::to_string(total) +
                             " is not a whole number of symbols");
    const long n_symbols = total / spb;
    if (n_symbols < 3)
        throw LengthMismatch("eye construction requires at least 3 symbols, got " +
                             std::to_string(n_symbols));
    if (static_cast<long>(bits.size()) != n_symbols)
        throw LengthMismatch("eye bit labels (" + std::to_string(bits.size()) +
                             ") must match the symbol count (" + std::to_string(n_symbols) + ")");

    // Baseband: sign-corrected mix with the local carrier, then a trailing
    // moving average over one carrier period, scaled by 2 so an ideal BPSK
    // plateau sits at the signal amplitude.
    const CarrierRef carrier(config.carrier_frequency, config.sample_rate);
    const long window =
        std::max<long>(1, std::llround(config.sample_rate / config.carrier_frequency));
    std::vector<double> baseband(static_cast<std::size_t>(total));
    double running = 0.0;
    for (long m = 0; m < total; ++m) {
        const double z =
            sign_correction * beamformed.samples[static_cast<std::size_t>(m)] * carrier(m);
        running += z;
        if (m >= window) {
            const long tail = m - window;
            running -= sign_correction * beamformed.samples[static_cast<std::size_t>(tail)] *
                       carrier(tail);
        }
        const double count = static_cast<double>(std::min(m + 1, window));
        baseband[static_cast<std::size_t>(m)] = 2.0 * running / count;
    }

    EyeDiagramData data;
    data.center_index = spb / 2;
    const long n_traces = std::min<long>(trace_count, n_symbols - 1);
    data.traces.reserve(static_cast<std::size_t>(n_traces));
    data.trace_bits.reserve(static_cast<std::size_t>(n_traces));
    double pos_min = std::numeric_limits<double>::infinity();
    double neg_max = -std::numeric_limits<double>::infinity();
    bool has_pos = false, has_neg = false;
    for (long k = 0; k < n_traces; ++k) {
        const long begin = k * spb;
        std::vector<double> trace(static_cast<std::size_t>(2 * spb));
        for (long j = 0; j < 2 * spb; ++j)
            trace[static_cast<std::size_t>(j)] = baseband[static_cast<std::size_t>(begin + j)];
        const double center = trace[static_cast<std::size_t>(data.center_index)];
        if (bits[static_cast<std::size_t>(k)]) {
            pos_min = std::min(pos_min, center);
            has_pos = true;
        } else {
            neg_max = std::max(neg_max, center);
            has_neg = true;
        }
        data.traces.push_back(std::move(trace));
        data.trace_bits.push_back(bits[static_cast<std::size_t>(k)]);
    }

    if (has_pos && has_neg) {
        data.eye_height = pos_min - neg_max;
    } else {
        data.eye_height = std::numeric_limits<double>::quiet_NaN();
    }
    data.normalized_eye_height = data.eye_height / (2.0 * config.amplitude);
    return data;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

WilsonInterval wilson_interval(long successes, long total, double z) {
    if (total < 1) throw ConfigInvalid("Wilson interval requires at least one observation");
    const double n = static_cast<double>(total);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    WilsonInterval interval;
    // At the extremes center and half agree analytically; force the exact
    // endpoint rather than keeping their rounding residue.
    interval.low = successes == 0 ? 0.0 : std::max(0.0, center - half);
    interval.high = successes == total ? 1.0 : std::min(1.0, center + half);
    return interval;
}

double carrier_window_sin_sq_sum(const BpskConfig& config) {
    config.validate();
    const CarrierRef carrier(config.carrier_frequency, config.sample_rate);
    const long spb = config.samples_per_symbol();
    double sum = 0.0;
    for (long m = 0; m < spb; ++m) {
        const double c = carrier(m);
        sum += c * c;
    }
    return sum;
}

DecisionOracle decision_oracle(double p0, double sigma, double fingerprint_norm_sq,
                               const BpskConfig& config) {
    if (!(sigma > 0.0)) throw ConfigInvalid("decision oracle requires noise.sigma > 0");
    if (!(fingerprint_norm_sq > 0.0))
        throw DegenerateFingerprint("decision oracle requires a nonzero fingerprint");
    const double s2 = carrier_window_sin_sq_sum(config);
    const double fs = config.sample_rate;
    DecisionOracle oracle;
    oracle.mean_metric = p0 * s2 / fs;
    oracle.metric_sigma = sigma / std::sqrt(fingerprint_norm_sq) * std::sqrt(s2) / fs;
    const double ratio = oracle.mean_metric / oracle.metric_sigma;
    oracle.ebn0_linear = 0.5 * ratio * ratio;
    oracle.predicted_ber = q_function(ratio);
    return oracle;
}

double mean_snr_db_for_ebn0(double ebn0_linear, long n_sensors, const BpskConfig& config) {
    if (!(ebn0_linear > 0.0)) throw ConfigInvalid("target Eb/N0 must be positive");
    if (n_sensors < 1) throw ConfigInvalid("sensor count must be >= 1");
    const double s2 = carrier_window_sin_sq_sum(config);
    const double snr_linear = ebn0_linear / (static_cast<double>(n_sensors) * s2);
    return 10.0 * std::log10(snr_linear);
}

}  // namespace hydrolink
