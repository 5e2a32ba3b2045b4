#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hydrolink/analysis.hpp"
#include "hydrolink/errors.hpp"
#include "hydrolink/io.hpp"
#include "hydrolink/scenario.hpp"

namespace {

using hydrolink::ConfigInvalid;
using ordered_json = nlohmann::ordered_json;

struct CommonOpts {
    std::string scenario_path;
    std::string out_dir = "./out";
    std::optional<std::uint64_t> seed;
    std::optional<long> bits;
    std::optional<double> snr_db;
    std::optional<double> bit_rate;
    std::string actuator;  // "natural_frequency,damping"
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--scenario", opts.scenario_path, "Scenario JSON file (defaults built in)");
    cmd->add_option("--out", opts.out_dir, "Output directory (default ./out)");
    cmd->add_option("--seed", opts.seed, "Master seed (default 0)");
    cmd->add_option("--bits", opts.bits, "Payload bit count override");
    cmd->add_option("--snr-db", opts.snr_db, "Target mean per-sensor SNR in dB");
    cmd->add_option("--rate", opts.bit_rate, "Bit rate override, bits/s");
    cmd->add_option("--actuator", opts.actuator,
                    "Enable the actuator low-pass: natural_frequency_hz,damping");
}

hydrolink::Scenario load_effective_scenario(const CommonOpts& opts) {
    hydrolink::Scenario scenario = opts.scenario_path.empty()
                                       ? hydrolink::default_scenario()
                                       : hydrolink::load_scenario_file(opts.scenario_path);
    if (opts.seed) scenario.link.seed = *opts.seed;
    if (opts.bits) scenario.link.bits = *opts.bits;
    if (opts.snr_db) scenario.link.target_snr_db = *opts.snr_db;
    if (opts.bit_rate) scenario.link.bpsk.bit_rate = *opts.bit_rate;
    if (!opts.actuator.empty()) {
        hydrolink::ActuatorSettings settings;
        char comma = 0;
        std::istringstream in(opts.actuator);
        if (!(in >> settings.natural_frequency >> comma >> settings.damping) || comma != ',')
            throw ConfigInvalid(
                "--actuator must be natural_frequency_hz,damping (e.g. 40,0.7)");
        scenario.link.actuator = settings;
    }
    scenario.link.validate();
    return scenario;
}

std::filesystem::path ensure_out_dir(const CommonOpts& opts) {
    std::filesystem::path dir(opts.out_dir);
    std::filesystem::create_directories(dir);
    return dir;
}

void emit(const ordered_json& doc) { std::cout << doc.dump(2) << "\n"; }

ordered_json report_to_json(const hydrolink::LinkReport& report, std::uint64_t seed) {
    ordered_json doc;
    doc["ber"] = hydrolink::io::json_number(report.ber);
    doc["bit_errors"] = report.bit_errors;
    doc["bit_count"] = report.bit_count;
    doc["p0"] = hydrolink::io::json_number(report.p0);
    doc["sigma"] = hydrolink::io::json_number(report.sigma_used);
    doc["mean_input_snr_db"] = hydrolink::io::json_number(report.mean_input_snr_db);
    doc["output_snr_db"] = hydrolink::io::json_number(report.output_snr_db);
    doc["empirical_gain_db"] = hydrolink::io::json_number(report.empirical_gain_db);
    doc["gamma"] = hydrolink::io::json_number(report.gamma);
    doc["csr_class"] = hydrolink::csr_class_name(report.csr_class);
    doc["sample_rate"] = hydrolink::io::json_number(report.sample_rate);
    doc["samples_per_symbol"] = report.samples_per_symbol;
    doc["total_samples"] = report.total_samples;
    doc["duration_s"] = hydrolink::io::json_number(report.duration_s);
    doc["seed"] = seed;
    return doc;
}

int cmd_simulate(const CommonOpts& opts, bool dump_signals) {
    const hydrolink::Scenario scenario = load_effective_scenario(opts);
    const hydrolink::LinkResult result = hydrolink::run_link_full(scenario.link, dump_signals);
    ordered_json doc = report_to_json(result.report, scenario.link.seed);

    if (dump_signals) {
        const std::filesystem::path dir = ensure_out_dir(opts);
        const std::string csv = (dir / "beamformed.csv").string();
        const std::string raw = (dir / "beamformed.f64").string();
        hydrolink::io::write_waveform_csv(csv, result.beamformed);
        hydrolink::io::write_waveform_raw(raw, result.beamformed);

        std::string decisions = "symbol,metric,bit\n";
        for (std::size_t k = 0; k < result.report.decision_metrics.size(); ++k)
            decisions += std::to_string(k) + ',' +
                         hydrolink::io::format_sig(result.report.decision_metrics[k], 12) + ',' +
                         std::to_string(static_cast<int>(result.report.decoded[k])) + "\n";
        const std::string decisions_path = (dir / "decisions.csv").string();
        hydrolink::io::write_text_file(decisions_path, decisions);

        ordered_json dumps;
        dumps["beamformed_csv"] = csv;
        dumps["beamformed_raw"] = raw;
        dumps["decisions_csv"] = decisions_path;
        doc["dumps"] = dumps;
    }
    emit(doc);
    return 0;
}

int cmd_sweep(const CommonOpts& opts, const std::string& kind, const std::string& values_csv,
              std::optional<double> from, std::optional<double> to, std::optional<double> step,
              int trials) {
    hydrolink::SweepVariable variable;
    if (kind == "snr") {
        variable = hydrolink::SweepVariable::MeanSnrDb;
    } else if (kind == "distance") {
        variable = hydrolink::SweepVariable::Distance;
    } else if (kind == "rate") {
        variable = hydrolink::SweepVariable::BitRate;
    } else {
        throw ConfigInvalid("sweep kind must be one of snr, distance, rate");
    }

    std::vector<double> values;
    if (!values_csv.empty()) {
        if (from || to || step)
            throw ConfigInvalid("sweep takes either --values or --from/--to/--step, not both");
        std::istringstream in(values_csv);
        std::string token;
        while (std::getline(in, token, ',')) {
            try {
                values.push_back(std::stod(token));
            } catch (const std::exception&) {
                throw ConfigInvalid("sweep --values entry '" + token + "' is not a number");
            }
        }
    } else if (from && to && step) {
        if (!(*step > 0.0)) throw ConfigInvalid("sweep --step must be positive");
        const long count = static_cast<long>(std::floor((*to - *from) / *step + 1e-9)) + 1;
        if (count < 1) throw ConfigInvalid("sweep range is empty: --to must be >= --from");
        for (long i = 0; i < count; ++i) values.push_back(*from + static_cast<double>(i) * *step);
    } else {
        throw ConfigInvalid("sweep requires --values or the full --from/--to/--step range");
    }

    const hydrolink::Scenario scenario = load_effective_scenario(opts);
    const std::vector<hydrolink::SweepPoint> table =
        hydrolink::ber_sweep(scenario.link, variable, values, trials);

    const std::filesystem::path dir = ensure_out_dir(opts);
    const std::string csv = (dir / ("sweep_" + kind + ".csv")).string();
    hydrolink::io::write_sweep_csv(csv, table);

    ordered_json doc;
    doc["kind"] = kind;
    doc["trials"] = trials;
    ordered_json rows = ordered_json::array();
    for (const hydrolink::SweepPoint& p : table) {
        ordered_json row;
        row["value"] = hydrolink::io::json_number(p.value);
        row["ber"] = hydrolink::io::json_number(p.ber);
        row["ci_low"] = hydrolink::io::json_number(p.ci_low);
        row["ci_high"] = hydrolink::io::json_number(p.ci_high);
        row["errors"] = p.errors;
        row["bits"] = p.bits;
        rows.push_back(row);
    }
    doc["rows"] = rows;
    doc["csv"] = csv;
    emit(doc);
    return 0;
}

int cmd_field(const CommonOpts& opts, const std::string& plane, double extent, int resolution,
              std::optional<double> time) {
    if (!(extent > 0.0)) throw ConfigInvalid("field --extent must be positive");
    if (resolution < 2) throw ConfigInvalid("field --resolution must be at least 2");
    if (plane.size() < 3 || plane[1] != '=' ||
        (plane[0] != 'x' && plane[0] != 'y' && plane[0] != 'z'))
        throw ConfigInvalid("field --plane must look like z=0 or y=0.05");
    const int pinned = plane[0] - 'x';
    double plane_value = 0.0;
    try {
        plane_value = std::stod(plane.substr(2));
    } catch (const std::exception&) {
        throw ConfigInvalid("field --plane value '" + plane.substr(2) + "' is not a number");
    }

    const hydrolink::Scenario scenario = load_effective_scenario(opts);
    const double t =
        time ? *time : 1.0 / (4.0 * scenario.link.source.carrier_frequency);

    hydrolink::GridSpec grid;
    for (int d = 0; d < 3; ++d) {
        if (d == pinned) {
            grid.lo[d] = grid.hi[d] = plane_value;
            grid.shape[d] = 1;
        } else {
            grid.lo[d] = -extent;
            grid.hi[d] = extent;
            grid.shape[d] = resolution;
        }
    }

    const hydrolink::ScalarField field = hydrolink::pressure_field_grid(
        scenario.link.medium, scenario.link.source, grid, t);

    const std::filesystem::path dir = ensure_out_dir(opts);
    const std::string csv = (dir / "field.csv").string();
    hydrolink::io::write_field_csv(csv, field);

    ordered_json doc;
    doc["plane"] = plane;
    doc["extent"] = hydrolink::io::json_number(extent);
    doc["resolution"] = resolution;
    doc["time"] = hydrolink::io::json_number(t);
    doc["normalization"] = hydrolink::io::json_number(field.normalization);
    doc["valid_points"] = field.count_valid();
    ordered_json grid_meta;
    grid_meta["lo"] = {hydrolink::io::json_number(grid.lo[0]),
                       hydrolink::io::json_number(grid.lo[1]),
                       hydrolink::io::json_number(grid.lo[2])};
    grid_meta["hi"] = {hydrolink::io::json_number(grid.hi[0]),
                       hydrolink::io::json_number(grid.hi[1]),
                       hydrolink::io::json_number(grid.hi[2])};
    grid_meta["shape"] = {grid.shape[0], grid.shape[1], grid.shape[2]};
    grid_meta["spacing"] = {hydrolink::io::json_number(grid.step(0)),
                            hydrolink::io::json_number(grid.step(1)),
                            hydrolink::io::json_number(grid.step(2))};
    doc["grid"] = grid_meta;
    doc["csv"] = csv;
    emit(doc);
    return 0;
}

int cmd_sensitivity(const CommonOpts& opts, double extent, int resolution) {
    if (!(extent > 0.0)) throw ConfigInvalid("sensitivity --extent must be positive");
    if (resolution < 2) throw ConfigInvalid("sensitivity --resolution must be at least 2");

    const hydrolink::Scenario scenario = load_effective_scenario(opts);
    hydrolink::GridSpec grid;
    grid.lo = hydrolink::Vec3(-extent, -extent, -extent);
    grid.hi = hydrolink::Vec3(extent, extent, extent);
    grid.shape = {resolution, resolution, resolution};

    const hydrolink::SensitivityGrid field = hydrolink::sensitivity_field(
        scenario.link.array, grid, scenario.link.source.vibration_axis,
        scenario.link.source.radius);

    const std::filesystem::path dir = ensure_out_dir(opts);
    const std::string csv = (dir / "sensitivity.csv").string();
    hydrolink::io::write_sensitivity_csv(csv, field);

    ordered_json doc;
    doc["extent"] = hydrolink::io::json_number(extent);
    doc["resolution"] = resolution;
    doc["max"] = hydrolink::io::json_number(field.max_value);
    doc["threshold_60"] = hydrolink::io::json_number(field.threshold_60);
    doc["threshold_30"] = hydrolink::io::json_number(field.threshold_30);
    doc["valid_points"] = field.count_valid();
    doc["csv"] = csv;
    emit(doc);
    return 0;
}

int cmd_eye(const CommonOpts& opts, int traces) {
    if (traces < 2) throw ConfigInvalid("eye --traces must be at least 2");
    hydrolink::Scenario scenario = load_effective_scenario(opts);
    scenario.link.bits = traces + 1;
    const hydrolink::LinkResult result = hydrolink::run_link_full(scenario.link, true);

    hydrolink::BpskConfig eye_config = scenario.link.bpsk;
    eye_config.amplitude = result.report.p0;
    const hydrolink::EyeDiagramData eye =
        hydrolink::eye_diagram(result.beamformed, result.report.transmitted, eye_config, traces,
                               scenario.link.sign_correction);

    const std::filesystem::path dir = ensure_out_dir(opts);
    const std::string csv = (dir / "eye_traces.csv").string();
    hydrolink::io::write_eye_csv(csv, eye);

    ordered_json doc;
    doc["traces"] = static_cast<long>(eye.traces.size());
    doc["center_index"] = eye.center_index;
    doc["eye_height"] = hydrolink::io::json_number(eye.eye_height);
    doc["normalized_eye_height"] = hydrolink::io::json_number(eye.normalized_eye_height);
    doc["amplitude_reference"] = hydrolink::io::json_number(result.report.p0);
    doc["csv"] = csv;
    emit(doc);
    return 0;
}

int cmd_dump_config(const CommonOpts& opts) {
    const hydrolink::Scenario scenario = load_effective_scenario(opts);
    emit(hydrolink::scenario_to_json(scenario));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Near-field hydrodynamic BPSK link simulator"};
    app.require_subcommand(1);

    CommonOpts sim_opts;
    bool dump_signals = false;
    CLI::App* simulate = app.add_subcommand("simulate", "Run one link scenario");
    add_common(simulate, sim_opts);
    simulate->add_flag("--dump-signals", dump_signals,
                       "Write the beamformed waveform and decisions to --out");

    CommonOpts sweep_opts;
    std::string sweep_kind;
    std::string sweep_values;
    std::optional<double> sweep_from, sweep_to, sweep_step;
    int sweep_trials = 5;
    CLI::App* sweep = app.add_subcommand("sweep", "Monte-Carlo BER sweep");
    sweep->add_option("kind", sweep_kind, "Swept variable: snr, distance, or rate")->required();
    add_common(sweep, sweep_opts);
    sweep->add_option("--values", sweep_values, "Comma-separated list of values");
    sweep->add_option("--from", sweep_from, "Range start");
    sweep->add_option("--to", sweep_to, "Range end (inclusive)");
    sweep->add_option("--step", sweep_step, "Range step");
    sweep->add_option("--trials", sweep_trials, "Independent runs per value (default 5)");

    CommonOpts field_opts;
    std::string field_plane = "z=0";
    double field_extent = 0.3;
    int field_resolution = 200;
    std::optional<double> field_time;
    CLI::App* field = app.add_subcommand("field", "Export a pressure-field slice");
    add_common(field, field_opts);
    field->add_option("--plane", field_plane, "Slice plane, e.g. z=0 (default)");
    field->add_option("--extent", field_extent, "Half-width of the slice, m (default 0.3)");
    field->add_option("--resolution", field_resolution, "Points per axis (default 200)");
    field->add_option("--time", field_time, "Sample time, s (default quarter period)");

    CommonOpts sens_opts;
    double sens_extent = 0.5;
    int sens_resolution = 40;
    CLI::App* sensitivity = app.add_subcommand("sensitivity", "Export the array sensitivity grid");
    add_common(sensitivity, sens_opts);
    sensitivity->add_option("--extent", sens_extent, "Half-width of the cube, m (default 0.5)");
    sensitivity->add_option("--resolution", sens_resolution, "Points per axis (default 40)");

    CommonOpts eye_opts;
    int eye_traces = 200;
    CLI::App* eye = app.add_subcommand("eye", "Export eye-diagram traces");
    add_common(eye, eye_opts);
    eye->add_option("--traces", eye_traces, "Number of two-symbol traces (default 200)");

    CommonOpts dump_opts;
    CLI::App* dump_config = app.add_subcommand("dump-config", "Print the effective scenario JSON");
    add_common(dump_config, dump_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cerr << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(sim_opts, dump_signals);
        if (sweep->parsed())
            return cmd_sweep(sweep_opts, sweep_kind, sweep_values, sweep_from, sweep_to,
                             sweep_step, sweep_trials);
        if (field->parsed())
            return cmd_field(field_opts, field_plane, field_extent, field_resolution, field_time);
        if (sensitivity->parsed()) return cmd_sensitivity(sens_opts, sens_extent, sens_resolution);
        if (eye->parsed()) return cmd_eye(eye_opts, eye_traces);
        if (dump_config->parsed()) return cmd_dump_config(dump_opts);
    } catch (const ConfigInvalid& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
