#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hydrolink/analysis.hpp"
#include "hydrolink/physics.hpp"
#include "hydrolink/types.hpp"

namespace hydrolink {
namespace io {

/// Shortest decimal form of v at `digits` significant digits (printf %g).
std::string format_sig(double v, int digits);

/// v rounded to 12 significant digits, as a value that serializes stably.
double round12(double v);

/// JSON-safe number: round12, with non-finite values mapped to null.
nlohmann::ordered_json json_number(double v);

void write_text_file(const std::string& path, const std::string& content);

/// Header `x,y,z,value`; one row per grid point (x fastest), masked points
/// carry the literal `nan`. 9 significant digits.
void write_field_csv(const std::string& path, const ScalarField& field);

/// Header `x,y,z,S`; same layout as write_field_csv.
void write_sensitivity_csv(const std::string& path, const SensitivityGrid& field);

/// Header `value,ber,ci_low,ci_high,trials`.
void write_sweep_csv(const std::string& path, const std::vector<SweepPoint>& table);

/// Header `r,amplitude`.
void write_attenuation_csv(const std::string& path, const AttenuationProfile& profile);

/// Header `t,value`.
void write_waveform_csv(const std::string& path, const Waveform& wave);

/// Header `t,ch0,...,chN-1`.
void write_multichannel_csv(const std::string& path, const MultiChannelSignal& signal);

/// Header `trace,bit,sample,value`; one row per trace sample.
void write_eye_csv(const std::string& path, const EyeDiagramData& eye);

/// Raw 64-bit little-endian floats at `path` plus a JSON sidecar at
/// `path + ".json"` carrying {sample_rate, channels, length}.
void write_waveform_raw(const std::string& path, const Waveform& wave);
std::vector<double> read_raw_f64(const std::string& path);

}  // namespace io
}  // namespace hydrolink
