#include "hydrolink/modem.hpp"

#include <cmath>

#include "hydrolink/errors.hpp"

namespace hydrolink {

void BpskConfig::validate() const {
    if (!(bit_rate > 0.0) || !std::isfinite(bit_rate))
        throw ConfigInvalid("bpsk.bit_rate must be a positive finite number");
    if (!(carrier_frequency > 0.0) || !std::isfinite(carrier_frequency))
        throw ConfigInvalid("bpsk.carrier_frequency must be a positive finite number");
    if (!(sample_rate > 0.0) || !std::isfinite(sample_rate))
        throw ConfigInvalid("bpsk.sample_rate must be a positive finite number");
    if (!std::isfinite(amplitude)) throw ConfigInvalid("bpsk.amplitude must be finite");
    if (sample_rate < 10.0 * carrier_frequency)
        throw ConfigInvalid("bpsk.sample_rate must be at least 10x the carrier frequency");
    const double ratio = sample_rate / bit_rate;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * ratio)
        throw ConfigInvalid("bpsk.sample_rate / bit_rate must be a positive integer");
}

long BpskConfig::samples_per_symbol() const {
    return static_cast<long>(std::llround(sample_rate / bit_rate));
}

CarrierRef::CarrierRef(double carrier_frequency, double sample_rate)
    : cycles_per_sample_(carrier_frequency / sample_rate) {
    const double ratio = sample_rate / carrier_frequency;
    const double rounded = std::round(ratio);
    if (rounded >= 2.0 && std::abs(ratio - rounded) <= 1e-12 * ratio) {
        const long n = static_cast<long>(rounded);
        table_.resize(static_cast<std::size_t>(n));
        for (long k = 0; k < n; ++k)
            table_[static_cast<std::size_t>(k)] =
                std::sin(2.0 * kPi * static_cast<double>(k) / static_cast<double>(n));
    }
}

double CarrierRef::operator()(long sample_index) const {
    if (!table_.empty())
        return table_[static_cast<std::size_t>(sample_index % static_cast<long>(table_.size()))];
    const double cycles = std::fmod(static_cast<double>(sample_index) * cycles_per_sample_, 1.0);
    return std::sin(2.0 * kPi * cycles);
}

CsrReport cycle_per_symbol(const BpskConfig& config) {
    CsrReport report;
    report.gamma = config.carrier_frequency / config.bit_rate;
    if (report.gamma < 1.0) {
        report.classification = CsrClass::Infeasible;
    } else if (std::abs(report.gamma - std::round(report.gamma)) <= 1e-12 * report.gamma) {
        report.classification = CsrClass::Reliable;
    } else {
        report.classification = CsrClass::Fractional;
    }
    return report;
}

std::string csr_class_name(CsrClass c) {
    switch (c) {
        case CsrClass::Reliable: return "Reliable";
        case CsrClass::Fractional: return "Fractional";
        default: return "Infeasible";
    }
}

std::vector<double> map_bits(const BitSequence& bits) {
    std::vector<double> d(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) d[i] = bits[i] ? 1.0 : -1.0;
    return d;
}

std::vector<double> polarity_timeline(const BitSequence& bits, const BpskConfig& config) {
    config.validate();
    const long spb = config.samples_per_symbol();
    std::vector<double> timeline(bits.size() * static_cast<std::size_t>(spb));
    std::size_t m = 0;
    for (std::uint8_t b : bits) {
        const double d = b ? 1.0 : -1.0;
        for (long j = 0; j < spb; ++j) timeline[m++] = d;
    }
    return timeline;
}

Waveform modulate(const BitSequence& bits, const BpskConfig& config) {
    config.validate();
    const std::vector<double> timeline = polarity_timeline(bits, config);
    const CarrierRef carrier(config.carrier_frequency, config.sample_rate);
    Waveform wave;
    wave.sample_rate = config.sample_rate;
    wave.samples.resize(timeline.size());
    for (std::size_t m = 0; m < timeline.size(); ++m)
        wave.samples[m] = config.amplitude * timeline[m] * carrier(static_cast<long>(m));
    return wave;
}

Waveform actuator_filter(const Waveform& input, double natural_frequency, double damping) {
    if (!(natural_frequency > 0.0) || !std::isfinite(natural_frequency))
        throw ConfigInvalid("actuator.natural_frequency must be a positive finite number");
    if (!(damping > 0.0) || !std::isfinite(damping))
        throw ConfigInvalid("actuator.damping must be a positive finite number");
    if (!(input.sample_rate > 0.0))
        throw ConfigInvalid("actuator input waveform must carry a positive sample_rate");
    if (natural_frequency >= 0.5 * input.sample_rate)
        throw ConfigInvalid("actuator.natural_frequency must be below the Nyquist frequency");

    const double wn = 2.0 * kPi * natural_frequency;
    const double k = 2.0 * input.sample_rate;  // bilinear s = k (1 - z^-1)/(1 + z^-1)
    const double a0 = k * k + 2.0 * damping * wn * k + wn * wn;
    const double b0 = wn * wn / a0;
    const double b1 = 2.0 * b0;
    const double b2 = b0;
    const double a1 = (2.0 * wn * wn - 2.0 * k * k) / a0;
    const double a2 = (k * k - 2.0 * damping * wn * k + wn * wn) / a0;

    Waveform out;
    out.sample_rate = input.sample_rate;
    out.start_time = input.start_time;
    out.samples.resize(input.samples.size());
    double s1 = 0.0, s2 = 0.0;  // direct form II transposed, rest state
    for (std::size_t m = 0; m < input.samples.size(); ++m) {
        const double x = input.samples[m];
        const double y = b0 * x + s1;
        s1 = b1 * x - a1 * y + s2;
        s2 = b2 * x - a2 * y;
        out.samples[m] = y;
    }
    return out;
}

std::vector<DecisionRecord> coherent_demodulate(const Waveform& beamformed,
                                                const BpskConfig& config) {
    config.validate();
    const long spb = config.samples_per_symbol();
    const long total = beamformed.length();
    if (total % spb != 0)
        throw LengthMismatch("waveform length " + std::to_string(total) +
                             " is not a whole number of symbols of " + std::to_string(spb) +
                             " samples");
    const CarrierRef carrier(config.carrier_frequency, config.sample_rate);
    const long n_symbols = total / spb;
    std::vector<DecisionRecord> decisions(static_cast<std::size_t>(n_symbols));
    for (long k = 0; k < n_symbols; ++k) {
        double acc = 0.0;
        for (long j = 0; j < spb; ++j) {
            const long m = k * spb + j;
            acc += beamformed.samples[static_cast<std::size_t>(m)] * carrier(m);
        }
        DecisionRecord& rec = decisions[static_cast<std::size_t>(k)];
        rec.metric = acc / config.sample_rate;
        rec.bit = rec.metric > 0.0 ? 1 : 0;
        rec.sample_time = beamformed.start_time + static_cast<double>((k + 1) * spb) /
                                                      config.sample_rate;
    }
    return decisions;
}

BitSequence decisions_to_bits(const std::vector<DecisionRecord>& decisions) {
    BitSequence bits(decisions.size());
    for (std::size_t i = 0; i < decisions.size(); ++i) bits[i] = decisions[i].bit;
    return bits;
}

}  // namespace hydrolink
