#include "hydrolink/scenario.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <string>

#include "hydrolink/errors.hpp"

namespace hydrolink {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void check_keys(const json& obj, const std::string& context,
                std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* key : allowed)
            if (it.key() == key) {
                known = true;
                break;
            }
        if (!known)
            throw ConfigInvalid("scenario: unknown key '" + it.key() + "' in " + context);
    }
}

const json* find(const json& obj, const char* key) {
    auto it = obj.find(key);
    return it == obj.end() || it->is_null() ? nullptr : &*it;
}

double require_number(const json& v, const std::string& field) {
    if (!v.is_number()) throw ConfigInvalid("scenario: " + field + " must be a number");
    return v.get<double>();
}

double number_or(const json& obj, const std::string& context, const char* key, double fallback) {
    const json* v = find(obj, key);
    return v ? require_number(*v, context + "." + key) : fallback;
}

long integer_or(const json& obj, const std::string& context, const char* key, long fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_number_integer() && !v->is_number_unsigned())
        throw ConfigInvalid("scenario: " + context + "." + key + " must be an integer");
    return v->get<long>();
}

bool bool_or(const json& obj, const std::string& context, const char* key, bool fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_boolean())
        throw ConfigInvalid("scenario: " + context + "." + key + " must be a boolean");
    return v->get<bool>();
}

Vec3 parse_vec3(const json& v, const std::string& field) {
    if (!v.is_array() || v.size() != 3)
        throw ConfigInvalid("scenario: " + field + " must be an array of 3 numbers");
    Vec3 out;
    for (int i = 0; i < 3; ++i) out[i] = require_number(v[static_cast<std::size_t>(i)], field);
    return out;
}

Vec3 vec3_or(const json& obj, const std::string& context, const char* key, const Vec3& fallback) {
    const json* v = find(obj, key);
    return v ? parse_vec3(*v, context + "." + key) : fallback;
}

ordered_json array_of(const Vec3& v) { return ordered_json::array({v[0], v[1], v[2]}); }

}  // namespace

Scenario default_scenario() {
    Scenario s;
    s.link.medium.density = 1000.0;
    s.link.source.position = Vec3(0.0, 0.07, 0.0);
    s.link.source.vibration_axis = Vec3::UnitX();
    s.link.source.radius = 0.125;
    s.link.source.amplitude = 0.015;
    s.link.source.carrier_frequency = 40.0;
    s.link.source.exclusion_radius = 0.0;
    s.link.array = build_dual_line_array(s.array_span, s.array_row_offset, s.array_n_per_row);
    s.link.bpsk.bit_rate = 20.0;
    s.link.bpsk.carrier_frequency = 40.0;
    s.link.bpsk.sample_rate = 2000.0;
    s.link.noise.kind = NoiseKind::Kolmogorov;
    s.link.noise.sigma = 1.0;
    s.link.noise.f_low = 1.0;
    s.link.target_snr_db = -5.0;
    s.link.bits = 10000;
    s.link.seed = 0;
    return s;
}

Scenario scenario_from_json(const json& doc) {
    if (!doc.is_object()) throw ConfigInvalid("scenario: document root must be a JSON object");
    check_keys(doc, "the scenario root",
               {"medium", "source", "array", "bpsk", "noise", "target_snr_db", "bits", "seed",
                "actuator", "steering_offset", "sign_correction"});

    Scenario s = default_scenario();
    LinkConfig& link = s.link;

    if (const json* medium = find(doc, "medium")) {
        check_keys(*medium, "medium", {"density"});
        link.medium.density = number_or(*medium, "medium", "density", link.medium.density);
    }

    if (const json* source = find(doc, "source")) {
        check_keys(*source, "source",
                   {"position", "vibration_axis", "radius", "amplitude", "carrier_frequency",
                    "strict_exterior"});
        link.source.position = vec3_or(*source, "source", "position", link.source.position);
        link.source.vibration_axis =
            vec3_or(*source, "source", "vibration_axis", link.source.vibration_axis);
        link.source.radius = number_or(*source, "source", "radius", link.source.radius);
        link.source.amplitude = number_or(*source, "source", "amplitude", link.source.amplitude);
        link.source.carrier_frequency =
            number_or(*source, "source", "carrier_frequency", link.source.carrier_frequency);
        s.strict_exterior = bool_or(*source, "source", "strict_exterior", s.strict_exterior);
    }
    link.source.exclusion_radius = s.strict_exterior ? -1.0 : 0.0;

    if (const json* array = find(doc, "array")) {
        check_keys(*array, "array", {"span", "row_offset", "n_per_row", "positions"});
        if (const json* positions = find(*array, "positions")) {
            if (find(*array, "span") || find(*array, "row_offset") || find(*array, "n_per_row"))
                throw ConfigInvalid(
                    "scenario: array.positions cannot be combined with dual-line parameters");
            if (!positions->is_array() || positions->empty())
                throw ConfigInvalid("scenario: array.positions must be a non-empty array");
            s.array_from_positions = true;
            link.array.positions.clear();
            for (std::size_t i = 0; i < positions->size(); ++i)
                link.array.positions.push_back(
                    parse_vec3((*positions)[i], "array.positions[" + std::to_string(i) + "]"));
        } else {
            s.array_span = number_or(*array, "array", "span", s.array_span);
            s.array_row_offset = number_or(*array, "array", "row_offset", s.array_row_offset);
            s.array_n_per_row = static_cast<int>(
                integer_or(*array, "array", "n_per_row", s.array_n_per_row));
            link.array = build_dual_line_array(s.array_span, s.array_row_offset, s.array_n_per_row);
        }
    }

    if (const json* bpsk = find(doc, "bpsk")) {
        check_keys(*bpsk, "bpsk", {"bit_rate", "sample_rate"});
        link.bpsk.bit_rate = number_or(*bpsk, "bpsk", "bit_rate", link.bpsk.bit_rate);
        link.bpsk.sample_rate = number_or(*bpsk, "bpsk", "sample_rate", link.bpsk.sample_rate);
    }
    link.bpsk.carrier_frequency = link.source.carrier_frequency;

    if (const json* noise = find(doc, "noise")) {
        check_keys(*noise, "noise", {"kind", "sigma", "f_low"});
        if (const json* kind = find(*noise, "kind")) {
            if (!kind->is_string())
                throw ConfigInvalid("scenario: noise.kind must be \"white\" or \"kolmogorov\"");
            const std::string name = kind->get<std::string>();
            if (name == "white") {
                link.noise.kind = NoiseKind::White;
            } else if (name == "kolmogorov") {
                link.noise.kind = NoiseKind::Kolmogorov;
            } else {
                throw ConfigInvalid("scenario: noise.kind must be \"white\" or \"kolmogorov\"");
            }
        }
        link.noise.sigma = number_or(*noise, "noise", "sigma", link.noise.sigma);
        link.noise.f_low = number_or(*noise, "noise", "f_low", link.noise.f_low);
    }

    if (find(doc, "target_snr_db")) {
        link.target_snr_db = require_number(doc["target_snr_db"], "target_snr_db");
    } else if (doc.contains("target_snr_db")) {
        link.target_snr_db.reset();  // explicit null disables calibration
    }

    link.bits = integer_or(doc, "scenario", "bits", link.bits);
    {
        const json* seed = find(doc, "seed");
        if (seed) {
            if (!seed->is_number_integer() && !seed->is_number_unsigned())
                throw ConfigInvalid("scenario: seed must be an integer");
            link.seed = seed->get<std::uint64_t>();
        }
    }

    if (const json* actuator = find(doc, "actuator")) {
        check_keys(*actuator, "actuator", {"natural_frequency", "damping"});
        ActuatorSettings settings;
        settings.natural_frequency =
            number_or(*actuator, "actuator", "natural_frequency", settings.natural_frequency);
        settings.damping = number_or(*actuator, "actuator", "damping", settings.damping);
        link.actuator = settings;
    }

    link.steering_offset = vec3_or(doc, "scenario", "steering_offset", link.steering_offset);
    link.sign_correction =
        number_or(doc, "scenario", "sign_correction", link.sign_correction);

    link.validate();
    return s;
}

ordered_json scenario_to_json(const Scenario& s) {
    const LinkConfig& link = s.link;
    ordered_json doc;
    doc["medium"] = {{"density", link.medium.density}};

    ordered_json source;
    source["position"] = array_of(link.source.position);
    source["vibration_axis"] = array_of(link.source.vibration_axis);
    source["radius"] = link.source.radius;
    source["amplitude"] = link.source.amplitude;
    source["carrier_frequency"] = link.source.carrier_frequency;
    source["strict_exterior"] = s.strict_exterior;
    doc["source"] = source;

    ordered_json array;
    if (s.array_from_positions) {
        ordered_json positions = ordered_json::array();
        for (const Vec3& p : link.array.positions) positions.push_back(array_of(p));
        array["positions"] = positions;
    } else {
        array["span"] = s.array_span;
        array["row_offset"] = s.array_row_offset;
        array["n_per_row"] = s.array_n_per_row;
    }
    doc["array"] = array;

    doc["bpsk"] = {{"bit_rate", link.bpsk.bit_rate}, {"sample_rate", link.bpsk.sample_rate}};

    ordered_json noise;
    noise["kind"] = link.noise.kind == NoiseKind::White ? "white" : "kolmogorov";
    noise["sigma"] = link.noise.sigma;
    noise["f_low"] = link.noise.f_low;
    doc["noise"] = noise;

    if (link.target_snr_db) {
        doc["target_snr_db"] = *link.target_snr_db;
    } else {
        doc["target_snr_db"] = nullptr;
    }
    doc["bits"] = link.bits;
    doc["seed"] = link.seed;
    if (link.actuator) {
        doc["actuator"] = {{"natural_frequency", link.actuator->natural_frequency},
                           {"damping", link.actuator->damping}};
    }
    if (link.steering_offset.norm() > 0.0)
        doc["steering_offset"] = array_of(link.steering_offset);
    doc["sign_correction"] = link.sign_correction;
    return doc;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigInvalid("scenario file '" + path + "' is not readable");
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ConfigInvalid("scenario file '" + path + "' is not valid JSON: " + e.what());
    }
    return scenario_from_json(doc);
}

}  // namespace hydrolink
