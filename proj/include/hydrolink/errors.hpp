#pragma once

#include <stdexcept>
#include <string>

namespace hydrolink {

/// Invalid configuration value; the message names the offending field.
struct ConfigInvalid : std::invalid_argument {
    explicit ConfigInvalid(const std::string& what) : std::invalid_argument(what) {}
};

/// Field evaluation requested at or inside the source exclusion radius.
struct PointInsideSource : std::domain_error {
    double distance;
    double limit;
    int sensor_index;  // -1 when not tied to a sensor

    PointInsideSource(double distance_, double limit_, int sensor_index_ = -1)
        : std::domain_error(format(distance_, limit_, sensor_index_)),
          distance(distance_),
          limit(limit_),
          sensor_index(sensor_index_) {}

  private:
    static std::string format(double d, double lim, int idx) {
        std::string msg = "evaluation point at distance " + std::to_string(d) +
                          " m is inside the source exclusion radius " + std::to_string(lim) + " m";
        if (idx >= 0) msg += " (sensor " + std::to_string(idx) + ")";
        return msg;
    }
};

/// Spatial fingerprint has zero norm; beamforming impossible.
struct DegenerateFingerprint : std::domain_error {
    explicit DegenerateFingerprint(const std::string& what) : std::domain_error(what) {}
};

struct ChannelCountMismatch : std::invalid_argument {
    explicit ChannelCountMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct LengthMismatch : std::invalid_argument {
    explicit LengthMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// Grid contains no valid evaluation points.
struct EmptyGrid : std::domain_error {
    explicit EmptyGrid(const std::string& what) : std::domain_error(what) {}
};

}  // namespace hydrolink
