#pragma once

#include <vector>

#include "hydrolink/types.hpp"

namespace hydrolink {

/// Incompressible working fluid.
struct FluidMedium {
    double density = 1000.0;  // kg/m^3

    void validate() const;
};

/// Sphere of radius `radius` oscillating along `vibration_axis` with
/// displacement amplitude `amplitude` at `carrier_frequency`, centred at
/// `position`. Field evaluation closer to the centre than the exclusion
/// radius throws PointInsideSource. A negative `exclusion_radius` means
/// "use `radius`" (strict exterior solution); zero keeps only the guard
/// against the centre singularity.
struct DipoleSource {
    Vec3 position = Vec3::Zero();
    Vec3 vibration_axis = Vec3::UnitX();
    double radius = 0.125;             // m
    double amplitude = 0.015;          // m
    double carrier_frequency = 40.0;   // Hz
    double exclusion_radius = -1.0;    // m; < 0 selects `radius`

    void validate() const;
    double omega() const { return 2.0 * kPi * carrier_frequency; }
    double effective_exclusion() const {
        return exclusion_radius < 0.0 ? radius : exclusion_radius;
    }
};

/// Peak pressure prefactor P0 = rho * A * omega^2 * a^3 / 2 (Pa m^2).
double source_strength_amplitude(const FluidMedium& medium, const DipoleSource& source);

/// Geometric decay factor G = (delta . axis) / |delta|^3 at `point` (1/m^2).
double dipole_geometric_factor(const DipoleSource& source, const Vec3& point);

/// Velocity potential phi = -(a^3 / 2 r^2) * A omega cos(omega t) * cos(theta).
double velocity_potential(const DipoleSource& source, const Vec3& point, double t);

/// Instantaneous pressure p = -P0 * G(point) * sin(omega t).
double pressure_at(const FluidMedium& medium, const DipoleSource& source, const Vec3& point,
                   double t);

/// Scalar samples over a regular grid. Points inside the exclusion region
/// carry NaN and are flagged invalid.
struct ScalarField {
    GridSpec grid;
    std::vector<double> values;  // grid.count() entries, x fastest
    std::vector<char> valid;     // 1 = evaluated, 0 = masked
    double normalization = 0.0;  // divisor applied to raw values (max |raw|)

    long count_valid() const;
};

/// Pressure sampled at `time` over `grid`, normalized by the maximum
/// absolute value over valid points (normalization constant retained).
/// Throws EmptyGrid when every point is masked.
ScalarField pressure_field_grid(const FluidMedium& medium, const DipoleSource& source,
                                const GridSpec& grid, double time);

}  // namespace hydrolink
