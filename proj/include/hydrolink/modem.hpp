#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hydrolink/types.hpp"

namespace hydrolink {

using BitSequence = std::vector<std::uint8_t>;  // entries 0 or 1

/// BPSK timing and amplitude. Samples per symbol must come out integer.
struct BpskConfig {
    double bit_rate = 20.0;           // bits/s
    double carrier_frequency = 40.0;  // Hz
    double sample_rate = 2000.0;      // samples/s
    double amplitude = 1.0;           // signal units

    void validate() const;
    long samples_per_symbol() const;         // f_s / R_b, exact integer
    double symbol_period() const { return 1.0 / bit_rate; }
    double omega() const { return 2.0 * kPi * carrier_frequency; }
};

/// Local carrier sin(omega_c * m / f_s) with the phase tracked in cycles.
/// When f_s / f_c is an integer the per-cycle sample table makes every
/// symbol window reuse identical carrier values, so window sums do not
/// drift with absolute sample index.
class CarrierRef {
  public:
    CarrierRef(double carrier_frequency, double sample_rate);

    double operator()(long sample_index) const;

  private:
    std::vector<double> table_;       // one carrier cycle; empty if ratio non-integer
    double cycles_per_sample_ = 0.0;  // f_c / f_s
};

enum class CsrClass { Reliable, Fractional, Infeasible };

/// Carrier cycles per symbol gamma = f_c / R_b with feasibility class:
/// Reliable (integer gamma >= 1), Fractional (gamma >= 1, non-integer),
/// Infeasible (gamma < 1).
struct CsrReport {
    double gamma = 0.0;
    CsrClass classification = CsrClass::Infeasible;
};

CsrReport cycle_per_symbol(const BpskConfig& config);
std::string csr_class_name(CsrClass c);

/// Elementwise 1 -> +1, 0 -> -1.
std::vector<double> map_bits(const BitSequence& bits);

/// Per-sample polarity d_{floor(t / T_s)}, one entry per output sample.
std::vector<double> polarity_timeline(const BitSequence& bits, const BpskConfig& config);

/// s_mod[m] = amplitude * d_k * sin(omega_c * m / f_s); the carrier phase is
/// global and continuous, so a polarity flip is an instantaneous phase
/// inversion.
Waveform modulate(const BitSequence& bits, const BpskConfig& config);

/// Discrete second-order low-pass (bilinear transform of
/// wn^2 / (s^2 + 2 zeta wn s + wn^2)), unity DC gain, zero initial state.
/// Emulates finite actuator bandwidth on a drive waveform.
Waveform actuator_filter(const Waveform& input, double natural_frequency, double damping);

/// One demodulated symbol: integrate-and-dump metric, decision, dump time.
struct DecisionRecord {
    double metric = 0.0;       // D_k, signal units * s
    std::uint8_t bit = 0;      // 1 iff metric > 0
    double sample_time = 0.0;  // end of the symbol window, s
};

/// Integrate-and-dump against the phase-locked local carrier:
/// D_k = sum over the symbol window of y[m] * sin(omega_c * m / f_s) / f_s.
/// Requires a whole number of symbols.
std::vector<DecisionRecord> coherent_demodulate(const Waveform& beamformed,
                                                const BpskConfig& config);

BitSequence decisions_to_bits(const std::vector<DecisionRecord>& decisions);

}  // namespace hydrolink
