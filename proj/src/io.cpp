#include "hydrolink/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace hydrolink {
namespace io {

std::string format_sig(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

double round12(double v) {
    if (!std::isfinite(v)) return v;
    return std::strtod(format_sig(v, 12).c_str(), nullptr);
}

nlohmann::ordered_json json_number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return round12(v);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    return out;
}

template <typename Field>
void write_grid_csv(const std::string& path, const Field& field, const char* value_header) {
    std::ofstream out = open_out(path);
    out << "x,y,z," << value_header << "\n";
    const GridSpec& grid = field.grid;
    for (int iz = 0; iz < grid.shape[2]; ++iz)
        for (int iy = 0; iy < grid.shape[1]; ++iy)
            for (int ix = 0; ix < grid.shape[0]; ++ix) {
                const Vec3 p = grid.point(ix, iy, iz);
                const std::size_t idx = static_cast<std::size_t>(grid.index(ix, iy, iz));
                out << format_sig(p[0], 9) << ',' << format_sig(p[1], 9) << ','
                    << format_sig(p[2], 9) << ','
                    << (field.valid[idx] ? format_sig(field.values[idx], 9) : "nan") << "\n";
            }
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace

void write_field_csv(const std::string& path, const ScalarField& field) {
    write_grid_csv(path, field, "value");
}

void write_sensitivity_csv(const std::string& path, const SensitivityGrid& field) {
    write_grid_csv(path, field, "S");
}

void write_sweep_csv(const std::string& path, const std::vector<SweepPoint>& table) {
    std::ofstream out = open_out(path);
    out << "value,ber,ci_low,ci_high,trials\n";
    for (const SweepPoint& p : table)
        out << format_sig(p.value, 12) << ',' << format_sig(p.ber, 12) << ','
            << format_sig(p.ci_low, 12) << ',' << format_sig(p.ci_high, 12) << ',' << p.trials
            << "\n";
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

void write_attenuation_csv(const std::string& path, const AttenuationProfile& profile) {
    std::ofstream out = open_out(path);
    out << "r,amplitude\n";
    for (std::size_t i = 0; i < profile.radii.size(); ++i)
        out << format_sig(profile.radii[i], 12) << ',' << format_sig(profile.amplitudes[i], 12)
            << "\n";
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

void write_waveform_csv(const std::string& path, const Waveform& wave) {
    std::ofstream out = open_out(path);
    out << "t,value\n";
    for (long m = 0; m < wave.length(); ++m) {
        const double t = wave.start_time + static_cast<double>(m) / wave.sample_rate;
        out << format_sig(t, 12) << ',' << format_sig(wave.samples[static_cast<std::size_t>(m)], 12)
            << "\n";
    }
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

void write_multichannel_csv(const std::string& path, const MultiChannelSignal& signal) {
    std::ofstream out = open_out(path);
    out << 't';
    for (long i = 0; i < signal.channels(); ++i) out << ",ch" << i;
    out << "\n";
    for (long m = 0; m < signal.length(); ++m) {
        const double t = signal.start_time + static_cast<double>(m) / signal.sample_rate;
        out << format_sig(t, 12);
        for (long i = 0; i < signal.channels(); ++i)
            out << ',' << format_sig(signal.samples(i, m), 12);
        out << "\n";
    }
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

void write_eye_csv(const std::string& path, const EyeDiagramData& eye) {
    std::ofstream out = open_out(path);
    out << "trace,bit,sample,value\n";
    for (std::size_t k = 0; k < eye.traces.size(); ++k)
        for (std::size_t j = 0; j < eye.traces[k].size(); ++j)
            out << k << ',' << static_cast<int>(eye.trace_bits[k]) << ',' << j << ','
                << format_sig(eye.traces[k][j], 12) << "\n";
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

void write_waveform_raw(const std::string& path, const Waveform& wave) {
    std::ofstream out = open_out(path);
    out.write(reinterpret_cast<const char*>(wave.samples.data()),
              static_cast<std::streamsize>(wave.samples.size() * sizeof(double)));
    if (!out) throw std::runtime_error("write to '" + path + "' failed");

    nlohmann::ordered_json sidecar;
    sidecar["sample_rate"] = json_number(wave.sample_rate);
    sidecar["channels"] = 1;
    sidecar["length"] = wave.length();
    write_text_file(path + ".json", sidecar.dump(2) + "\n");
}

std::vector<double> read_raw_f64(const std::string& path) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    const std::streamsize bytes = in.tellg();
    if (bytes % static_cast<std::streamsize>(sizeof(double)) != 0)
        throw std::runtime_error("raw float file '" + path + "' has a partial sample");
    std::vector<double> samples(static_cast<std::size_t>(bytes) / sizeof(double));
    in.seekg(0);
    in.read(reinterpret_cast<char*>(samples.data()), bytes);
    if (!in) throw std::runtime_error("read from '" + path + "' failed");
    return samples;
}

}  // namespace io
}  // namespace hydrolink
