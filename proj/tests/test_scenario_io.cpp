#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "hydrolink/errors.hpp"
#include "hydrolink/io.hpp"
#include "hydrolink/scenario.hpp"

using namespace hydrolink;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::string temp_path(const std::string& name) { return "./" + name; }

}  // namespace

TEST_CASE("compiled-in defaults describe the reference operating point") {
    const Scenario scenario = default_scenario();
    CHECK_NOTHROW(scenario.link.validate());
    CHECK(scenario.link.medium.density == 1000.0);
    CHECK(scenario.link.source.radius == 0.125);
    CHECK(scenario.link.source.amplitude == 0.015);
    CHECK(scenario.link.source.carrier_frequency == 40.0);
    CHECK(scenario.link.source.position[1] == 0.07);
    CHECK(scenario.link.bpsk.bit_rate == 20.0);
    CHECK(scenario.link.bpsk.sample_rate == 2000.0);
    CHECK(scenario.link.array.count() == 24);
    CHECK(scenario.link.noise.kind == NoiseKind::Kolmogorov);
    REQUIRE(scenario.link.target_snr_db.has_value());
    CHECK(*scenario.link.target_snr_db == -5.0);
    CHECK(scenario.link.bits == 10000);
    CHECK(scenario.link.seed == 0);
    CHECK(scenario.link.sign_correction == -1.0);
    CHECK_FALSE(scenario.strict_exterior);
    CHECK(scenario.link.source.exclusion_radius == 0.0);
}

TEST_CASE("an empty document yields the defaults") {
    const Scenario scenario = scenario_from_json(nlohmann::json::object());
    const Scenario defaults = default_scenario();
    CHECK(scenario_to_json(scenario).dump() == scenario_to_json(defaults).dump());
}

TEST_CASE("unknown keys are rejected with their context") {
    nlohmann::json doc;
    doc["sourc"] = nlohmann::json::object();
    try {
        scenario_from_json(doc);
        FAIL("expected ConfigInvalid");
    } catch (const ConfigInvalid& e) {
        CHECK(std::string(e.what()).find("sourc") != std::string::npos);
    }

    nlohmann::json nested;
    nested["source"]["radiius"] = 0.2;
    try {
        scenario_from_json(nested);
        FAIL("expected ConfigInvalid");
    } catch (const ConfigInvalid& e) {
        const std::string msg = e.what();
        CHECK(msg.find("radiius") != std::string::npos);
        CHECK(msg.find("source") != std::string::npos);
    }
}

TEST_CASE("serialization round-trips byte for byte") {
    Scenario scenario = default_scenario();
    scenario.link.seed = 99;
    scenario.link.bits = 1234;
    scenario.link.actuator = ActuatorSettings{40.0, 0.7};
    scenario.link.steering_offset = Vec3(0.001, -0.002, 0.0);
    const std::string first = scenario_to_json(scenario).dump(2);
    const Scenario reloaded = scenario_from_json(nlohmann::json::parse(first));
    const std::string second = scenario_to_json(reloaded).dump(2);
    CHECK(first == second);
}

TEST_CASE("strict exterior handling maps onto the exclusion radius") {
    nlohmann::json doc;
    doc["source"]["strict_exterior"] = true;
    const Scenario strict = scenario_from_json(doc);
    CHECK(strict.strict_exterior);
    CHECK(strict.link.source.exclusion_radius == -1.0);

    doc["source"]["strict_exterior"] = false;
    const Scenario relaxed = scenario_from_json(doc);
    CHECK_FALSE(relaxed.strict_exterior);
    CHECK(relaxed.link.source.exclusion_radius == 0.0);
}

TEST_CASE("explicit sensor positions exclude the dual-line parameters") {
    nlohmann::json doc;
    doc["array"]["positions"] = {{0.1, 0.0, 0.0}, {0.2, 0.0, 0.0}};
    const Scenario scenario = scenario_from_json(doc);
    CHECK(scenario.array_from_positions);
    CHECK(scenario.link.array.count() == 2);
    CHECK(scenario.link.array.positions[0][0] == 0.1);

    nlohmann::json conflict = doc;
    conflict["array"]["span"] = 0.3;
    CHECK_THROWS_AS(scenario_from_json(conflict), ConfigInvalid);
}

TEST_CASE("a null SNR target disables calibration") {
    nlohmann::json doc;
    doc["target_snr_db"] = nullptr;
    doc["noise"]["sigma"] = 0.5;
    const Scenario scenario = scenario_from_json(doc);
    CHECK_FALSE(scenario.link.target_snr_db.has_value());
    CHECK(scenario.link.noise.sigma == 0.5);
}

TEST_CASE("bad field types and values name the field") {
    nlohmann::json doc;
    doc["bits"] = "many";
    CHECK_THROWS_AS(scenario_from_json(doc), ConfigInvalid);

    nlohmann::json zero_bits;
    zero_bits["bits"] = 0;
    CHECK_THROWS_WITH_AS(scenario_from_json(zero_bits), "link.bits must be >= 1", ConfigInvalid);

    nlohmann::json bad_kind;
    bad_kind["noise"]["kind"] = "pink";
    CHECK_THROWS_AS(scenario_from_json(bad_kind), ConfigInvalid);
}

TEST_CASE("significant-digit formatting round-trips") {
    CHECK(io::format_sig(0.30000000000000004, 12) == "0.3");
    CHECK(io::round12(0.30000000000000004) == 0.3);
    CHECK(io::round12(925.2754125885804) == 925.275412589);
    CHECK(io::format_sig(1.0, 12) == "1");
    CHECK(io::format_sig(-2.5e-7, 9) == "-2.5e-07");

    CHECK(io::json_number(std::numeric_limits<double>::infinity()).is_null());
    CHECK(io::json_number(std::nan("")).is_null());
    CHECK(io::json_number(1.5).get<double>() == 1.5);
}

TEST_CASE("field CSV layout") {
    const FluidMedium medium;
    DipoleSource source;
    source.exclusion_radius = 0.0;
    GridSpec grid;
    grid.lo = Vec3(0.05, 0.0, 0.0);
    grid.hi = Vec3(0.15, 0.1, 0.0);
    grid.shape = {3, 2, 1};
    const ScalarField field = pressure_field_grid(medium, source, grid, 1.0 / 160.0);
    const std::string path = temp_path("test_field.csv");
    io::write_field_csv(path, field);
    const std::string text = slurp(path);
    std::remove(path.c_str());

    std::istringstream lines(text);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "x,y,z,value");
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        CHECK(line.find(',') != std::string::npos);
    }
    CHECK(rows == 6);
    CHECK(text.substr(text.size() - 1) == "\n");
}

TEST_CASE("masked grid points serialize as nan") {
    const FluidMedium medium;
    const DipoleSource strict;  // exclusion = 0.125
    GridSpec grid;
    grid.lo = Vec3(0.0, 0.0, 0.0);
    grid.hi = Vec3(0.3, 0.0, 0.0);
    grid.shape = {4, 1, 1};
    const ScalarField field = pressure_field_grid(medium, strict, grid, 0.001);
    const std::string path = temp_path("test_field_nan.csv");
    io::write_field_csv(path, field);
    const std::string text = slurp(path);
    std::remove(path.c_str());
    CHECK(text.find(",nan") != std::string::npos);
}

TEST_CASE("sweep CSV layout") {
    std::vector<SweepPoint> rows(2);
    rows[0].value = -10.0;
    rows[0].ber = 0.0123456789012345;
    rows[0].ci_low = 0.01;
    rows[0].ci_high = 0.015;
    rows[0].trials = 3;
    rows[1].value = -5.0;
    rows[1].trials = 3;
    const std::string path = temp_path("test_sweep.csv");
    io::write_sweep_csv(path, rows);
    const std::string text = slurp(path);
    std::remove(path.c_str());

    std::istringstream lines(text);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "value,ber,ci_low,ci_high,trials");
    REQUIRE(std::getline(lines, line));
    CHECK(line == "-10,0.0123456789012,0.01,0.015,3");
    REQUIRE(std::getline(lines, line));
    CHECK(line == "-5,0,0,0,3");
}

TEST_CASE("eye and attenuation CSV headers") {
    EyeDiagramData eye;
    eye.traces = {{0.5, -0.5}, {0.25, 0.75}};
    eye.trace_bits = {1, 0};
    const std::string eye_path = temp_path("test_eye.csv");
    io::write_eye_csv(eye_path, eye);
    const std::string eye_text = slurp(eye_path);
    std::remove(eye_path.c_str());
    CHECK(eye_text.rfind("trace,bit,sample,value\n", 0) == 0);
    CHECK(eye_text.find("0,1,0,0.5") != std::string::npos);
    CHECK(eye_text.find("1,0,1,0.75") != std::string::npos);

    AttenuationProfile profile;
    profile.radii = {0.25, 0.5};
    profile.amplitudes = {100.0, 25.0};
    profile.slope = -2.0;
    const std::string att_path = temp_path("test_att.csv");
    io::write_attenuation_csv(att_path, profile);
    const std::string att_text = slurp(att_path);
    std::remove(att_path.c_str());
    CHECK(att_text.rfind("r,amplitude\n", 0) == 0);
    CHECK(att_text.find("0.25,100") != std::string::npos);
}

TEST_CASE("raw waveform round-trip with sidecar") {
    Waveform wave;
    wave.sample_rate = 2000.0;
    wave.samples = {0.0, 1.5, -2.25, 1e-300, 925.2754125885804};
    const std::string path = temp_path("test_wave.f64");
    io::write_waveform_raw(path, wave);

    const std::vector<double> back = io::read_raw_f64(path);
    REQUIRE(back.size() == wave.samples.size());
    for (std::size_t i = 0; i < back.size(); ++i) CHECK(back[i] == wave.samples[i]);

    const nlohmann::json sidecar = nlohmann::json::parse(slurp(path + ".json"));
    CHECK(sidecar.at("sample_rate").get<double>() == 2000.0);
    CHECK(sidecar.at("channels").get<int>() == 1);
    CHECK(sidecar.at("length").get<long>() == 5);
    std::remove(path.c_str());
    std::remove((path + ".json").c_str());
}

TEST_CASE("scenario files that do not parse are configuration errors") {
    const std::string path = temp_path("test_scenario_bad.json");
    io::write_text_file(path, "{ not json");
    CHECK_THROWS_AS(load_scenario_file(path), ConfigInvalid);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_scenario_file("./no_such_scenario_file.json"), ConfigInvalid);
}
