#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <vector>

namespace hydrolink {

using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = 3.14159265358979323846;

/// Axis-aligned regular grid. A dimension with shape 1 is pinned at lo.
struct GridSpec {
    Vec3 lo = Vec3::Zero();
    Vec3 hi = Vec3::Zero();
    std::array<int, 3> shape = {1, 1, 1};

    long count() const {
        return static_cast<long>(shape[0]) * shape[1] * shape[2];
    }

    double step(int dim) const {
        return shape[dim] > 1 ? (hi[dim] - lo[dim]) / (shape[dim] - 1) : 0.0;
    }

    // Endpoint-weighted interpolation keeps a symmetric grid (lo = -hi)
    // bitwise mirror symmetric: coord(n-1-i) == -coord(i).
    double coord(int dim, int i) const {
        if (shape[dim] <= 1) return lo[dim];
        const double n = static_cast<double>(shape[dim] - 1);
        return (lo[dim] * (n - i) + hi[dim] * i) / n;
    }

    Vec3 point(int ix, int iy, int iz) const {
        return {coord(0, ix), coord(1, iy), coord(2, iz)};
    }

    // Flat index; x varies fastest, z slowest.
    long index(int ix, int iy, int iz) const {
        return (static_cast<long>(iz) * shape[1] + iy) * shape[0] + ix;
    }
};

/// Single-channel sampled waveform; sample m sits at start_time + m / sample_rate.
struct Waveform {
    std::vector<double> samples;
    double sample_rate = 0.0;
    double start_time = 0.0;

    long length() const { return static_cast<long>(samples.size()); }
};

/// N-channel sampled pressure record (rows = channels, columns = samples).
struct MultiChannelSignal {
    Eigen::MatrixXd samples;
    double sample_rate = 0.0;
    double start_time = 0.0;

    long channels() const { return samples.rows(); }
    long length() const { return samples.cols(); }
};

}  // namespace hydrolink
