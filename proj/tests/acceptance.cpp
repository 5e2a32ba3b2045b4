// Acceptance gate: every primary behavioural guarantee of the simulator,
// one PASS/FAIL line each. Exits nonzero if any criterion fails.
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hydrolink/analysis.hpp"
#include "hydrolink/beamform.hpp"
#include "hydrolink/errors.hpp"
#include "hydrolink/physics.hpp"
#include "hydrolink/scenario.hpp"
#include "hydrolink/sensor_array.hpp"

using namespace hydrolink;

namespace {

int g_failed = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
    if (!pass) ++g_failed;
    std::printf("%s %2d. %s%s%s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                detail.empty() ? "" : ": ", detail.c_str());
    std::fflush(stdout);
}

SpatialFingerprint reference_fingerprint() {
    const Scenario scenario = default_scenario();
    return steering_vector(scenario.link.array, scenario.link.source);
}

// 1. The matched combiner's SNR gain over the mean per-sensor level is
//    10 log10 N exactly, and a Monte-Carlo estimate agrees within 0.3 dB.
void criterion_array_gain() {
    const SpatialFingerprint fp = reference_fingerprint();
    const double expected = 10.0 * std::log10(24.0);
    const ArrayGainReport algebraic = array_gain_report(fp, 1.0, 925.2754125885804);
    const bool exact = algebraic.gain_db == expected;

    const double estimate = empirical_array_gain_db(fp, 1.0, 925.2754125885804, 100, 10000, 0);
    const double err = std::abs(estimate - expected);
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "identity %.15g dB, Monte-Carlo %.4f dB (|err| %.4f, limit 0.3)",
                  algebraic.gain_db, estimate, err);
    report(1, "array gain is 10 log10 N", exact && err < 0.3, detail);
}

// 2. The reference operating point (-5 dB mean per-sensor SNR, turbulence
//    noise, 10^4 bits) decodes without a single bit error.
void criterion_operating_point() {
    LinkConfig config = default_scenario().link;
    config.bits = 10000;
    const LinkReport r = run_link(config);
    char detail[120];
    std::snprintf(detail, sizeof detail, "%ld errors in %ld bits (ber %.3g)", r.bit_errors,
                  r.bit_count, r.ber);
    report(2, "error-free decoding at the -5 dB operating point", r.bit_errors == 0, detail);
}

// 3. At the SNR where the decision statistics predict BER 1e-2, a 1e5-bit
//    white-noise run lands inside the 95% Wilson interval around 1e-2.
void criterion_predicted_ber() {
    LinkConfig config = default_scenario().link;
    config.bits = 100000;
    config.noise.kind = NoiseKind::White;
    config.seed = 0;

    const double x = 2.3263478740408408;  // Q(x) = 1e-2
    config.target_snr_db = mean_snr_db_for_ebn0(0.5 * x * x, 24, config.bpsk);

    const LinkReport r = run_link(config);
    const SpatialFingerprint fp = reference_fingerprint();
    const DecisionOracle oracle = decision_oracle(r.p0, r.sigma_used, fp.norm_sq(), config.bpsk);

    const long predicted_errors = std::lround(oracle.predicted_ber * static_cast<double>(r.bit_count));
    const WilsonInterval ci = wilson_interval(predicted_errors, r.bit_count);
    const bool inside = r.ber >= ci.low && r.ber <= ci.high;
    char detail[200];
    std::snprintf(detail, sizeof detail,
                  "snr %.4f dB, predicted %.6g, measured %.6g, interval [%.6g, %.6g]",
                  *config.target_snr_db, oracle.predicted_ber, r.ber, ci.low, ci.high);
    report(3, "measured BER matches the analytic prediction", inside, detail);
}

// 4. Pressure amplitude along any non-nodal ray decays as r^-2 to 1e-6 in
//    log-log slope.
void criterion_attenuation() {
    const FluidMedium medium;
    DipoleSource source;
    source.exclusion_radius = 0.0;
    const AttenuationProfile on_axis =
        attenuation_profile(medium, source, Vec3(1.0, 0.0, 0.0), 0.25, 12.5, 100);
    const AttenuationProfile oblique =
        attenuation_profile(medium, source, Vec3(1.0, 0.5, -0.25), 0.25, 12.5, 100);
    const double err_a = std::abs(on_axis.slope - (-2.0));
    const double err_b = std::abs(oblique.slope - (-2.0));
    char detail[160];
    std::snprintf(detail, sizeof detail, "slopes %.9f and %.9f (limit 1e-6 from -2)",
                  on_axis.slope, oblique.slope);
    report(4, "inverse-square attenuation", err_a <= 1e-6 && err_b <= 1e-6, detail);
}

// 5. Noiseless unit-amplitude loopback: the integrate-and-dump metric is
//    +-T_s/2 = +-0.025 within 1e-4.
void criterion_decision_metric() {
    const BpskConfig config;
    const Waveform wave = modulate({1, 0}, config);
    const auto decisions = coherent_demodulate(wave, config);
    const double err_one = std::abs(decisions[0].metric - 0.025);
    const double err_zero = std::abs(decisions[1].metric + 0.025);
    char detail[120];
    std::snprintf(detail, sizeof detail, "D = %+.9f / %+.9f (limit 1e-4 from +-0.025)",
                  decisions[0].metric, decisions[1].metric);
    report(5, "ideal decision metric is +-T_s/2", err_one <= 1e-4 && err_zero <= 1e-4, detail);
}

// 6. Noiseless modulate -> demodulate loopback is exact for 1000 random
//    payloads at every integer cycles-per-symbol ratio {1, 2, 4}.
void criterion_loopback() {
    long failures = 0;
    long sequences = 0;
    for (double bit_rate : {40.0, 20.0, 10.0}) {
        BpskConfig config;
        config.bit_rate = bit_rate;
        for (int i = 0; i < 1000; ++i) {
            const BitSequence bits =
                random_bits(16 + (i % 48), 1000003ull * static_cast<unsigned long long>(i) +
                                               static_cast<unsigned long long>(bit_rate));
            const Waveform wave = modulate(bits, config);
            if (decisions_to_bits(coherent_demodulate(wave, config)) != bits) ++failures;
            ++sequences;
        }
    }
    char detail[120];
    std::snprintf(detail, sizeof detail, "%ld of %ld sequences corrupted", failures, sequences);
    report(6, "noiseless loopback is exact for integer cycle ratios", failures == 0, detail);
}

// 7. With a 40 Hz / 0.7 damping actuator on the drive, 20 bps stays error
//    free at the operating point while 100 bps degrades past BER 0.1.
void criterion_actuator_separation() {
    LinkConfig base = default_scenario().link;
    base.bits = 3000;
    base.actuator = ActuatorSettings{40.0, 0.7};
    const auto rows = ber_sweep(base, SweepVariable::BitRate, {20.0, 100.0}, 3);
    const bool pass = rows[0].ber == 0.0 && rows[1].ber > 0.1;
    char detail[140];
    std::snprintf(detail, sizeof detail, "BER(20 bps) = %.6g, BER(100 bps) = %.6g", rows[0].ber,
                  rows[1].ber);
    report(7, "actuator bandwidth separates 20 from 100 bps", pass, detail);
}

// 8. Localization sensitivity is anisotropic (stronger along the vibration
//    axis than broadside at equal range) and exactly mirror symmetric.
void criterion_sensitivity() {
    const SensorArray array = build_dual_line_array(0.2, 0.02, 12);
    const Vec3 axis(1.0, 0.0, 0.0);

    GridSpec along;
    along.lo = along.hi = Vec3(0.25, 0.0, 0.0);
    along.shape = {1, 1, 1};
    GridSpec broadside;
    broadside.lo = broadside.hi = Vec3(0.0, 0.25, 0.0);
    broadside.shape = {1, 1, 1};
    const double s_along = sensitivity_field(array, along, axis, 0.125).values[0];
    const double s_broad = sensitivity_field(array, broadside, axis, 0.125).values[0];

    GridSpec grid;
    grid.lo = Vec3(-0.4, -0.4, 0.0);
    grid.hi = Vec3(0.4, 0.4, 0.0);
    grid.shape = {9, 9, 1};
    const SensitivityGrid s = sensitivity_field(array, grid, axis, 0.125);
    bool mirror = true;
    for (int iy = 0; iy < 9 && mirror; ++iy)
        for (int ix = 0; ix < 9 && mirror; ++ix) {
            const double v = s.values[static_cast<std::size_t>(grid.index(ix, iy, 0))];
            const double mx = s.values[static_cast<std::size_t>(grid.index(8 - ix, iy, 0))];
            const double my = s.values[static_cast<std::size_t>(grid.index(ix, 8 - iy, 0))];
            if (std::isnan(v)) {
                mirror = std::isnan(mx) && std::isnan(my);
            } else {
                mirror = (v == mx) && (v == my);
            }
        }

    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "S(along) = %.6g, S(broadside) = %.6g, mirror equality %s", s_along, s_broad,
                  mirror ? "exact" : "BROKEN");
    report(8, "sensitivity field is anisotropic and mirror symmetric", s_along > s_broad && mirror,
           detail);
}

// 9. The eye at the operating point stays at least half open; a signal-free
//    input leaves it closed.
void criterion_eye() {
    LinkConfig config = default_scenario().link;
    config.bits = 300;
    const LinkResult result = run_link_full(config, true);
    BpskConfig scaled = config.bpsk;
    scaled.amplitude = result.report.p0;
    const EyeDiagramData open = eye_diagram(result.beamformed, result.report.transmitted, scaled,
                                            200, config.sign_correction);

    NoiseModel model;
    model.kind = NoiseKind::White;
    model.sigma = 1.0;
    model.seed = 9;
    const long spb = config.bpsk.samples_per_symbol();
    const MultiChannelSignal noise = synthesize_noise(model, 1, 40 * spb, config.bpsk.sample_rate);
    Waveform w;
    w.sample_rate = config.bpsk.sample_rate;
    w.samples.resize(static_cast<std::size_t>(noise.samples.cols()));
    for (long m = 0; m < noise.samples.cols(); ++m)
        w.samples[static_cast<std::size_t>(m)] = noise.samples(0, m);
    BitSequence labels(40);
    for (std::size_t k = 0; k < labels.size(); ++k) labels[k] = k % 2;
    const EyeDiagramData closed = eye_diagram(w, labels, config.bpsk, 39);

    const bool pass = open.normalized_eye_height >= 0.5 && closed.eye_height <= 0.0;
    char detail[140];
    std::snprintf(detail, sizeof detail,
                  "normalized eye %.4f at -5 dB (limit 0.5); signal-free eye height %.4f",
                  open.normalized_eye_height, closed.eye_height);
    report(9, "eye opening at the operating point", pass, detail);
}

// 10. Field self-consistency: p = -rho dphi/dt against a central difference
//     to 1e-6 relative, and the nodal plane is exactly silent.
void criterion_field_consistency() {
    const FluidMedium medium;
    DipoleSource source;
    source.exclusion_radius = 0.0;

    double worst = 0.0;
    const double h = 1e-6;
    for (const Vec3& p : {Vec3(0.07, 0.0, 0.0), Vec3(0.05, 0.03, -0.02), Vec3(-0.2, 0.1, 0.05),
                          Vec3(0.0, 0.0, 0.15)}) {
        for (double t : {0.003, 0.011, 0.0404}) {
            const double dphi =
                (velocity_potential(source, p, t + h) - velocity_potential(source, p, t - h)) /
                (2.0 * h);
            const double direct = pressure_at(medium, source, p, t);
            const double fd = -medium.density * dphi;
            const double scale = std::max(std::abs(direct), 1e-30);
            worst = std::max(worst, std::abs(fd - direct) / scale);
        }
    }

    bool nodal_silent = true;
    for (double t : {0.0, 0.004, 0.037}) {
        if (pressure_at(medium, source, {0.0, 0.1, 0.0}, t) != 0.0) nodal_silent = false;
        if (pressure_at(medium, source, {0.0, -0.03, 0.2}, t) != 0.0) nodal_silent = false;
        if (dipole_geometric_factor(source, {0.0, 0.05, -0.04}) != 0.0) nodal_silent = false;
    }

    char detail[140];
    std::snprintf(detail, sizeof detail,
                  "max relative mismatch %.3g (limit 1e-6); nodal plane %s", worst,
                  nodal_silent ? "exactly zero" : "NOT silent");
    report(10, "pressure / potential self-consistency", worst <= 1e-6 && nodal_silent, detail);
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion_array_gain();
    criterion_operating_point();
    criterion_predicted_ber();
    criterion_attenuation();
    criterion_decision_metric();
    criterion_loopback();
    criterion_actuator_separation();
    criterion_sensitivity();
    criterion_eye();
    criterion_field_consistency();

    if (g_failed == 0) {
        std::printf("all criteria satisfied\n");
        return 0;
    }
    std::printf("%d criterion(s) FAILED\n", g_failed);
    return 1;
}
