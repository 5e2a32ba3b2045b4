#include "hydrolink/physics.hpp"

#include <cmath>
#include <limits>

#include "hydrolink/errors.hpp"

namespace hydrolink {

void FluidMedium::validate() const {
    if (!(density > 0.0) || !std::isfinite(density))
        throw ConfigInvalid("medium.density must be a positive finite number");
}

void DipoleSource::validate() const {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw ConfigInvalid("source.radius must be a positive finite number");
    if (!(amplitude > 0.0) || !std::isfinite(amplitude))
        throw ConfigInvalid("source.amplitude must be a positive finite number");
    if (!(carrier_frequency > 0.0) || !std::isfinite(carrier_frequency))
        throw ConfigInvalid("source.carrier_frequency must be a positive finite number");
    if (!position.allFinite()) throw ConfigInvalid("source.position must be finite");
    if (!vibration_axis.allFinite() || std::abs(vibration_axis.norm() - 1.0) > 1e-12)
        throw ConfigInvalid("source.vibration_axis must have unit norm (tolerance 1e-12)");
    if (!(exclusion_radius < 0.0) && !std::isfinite(exclusion_radius))
        throw ConfigInvalid("source.exclusion_radius must be finite");
}

double source_strength_amplitude(const FluidMedium& medium, const DipoleSource& source) {
    const double w = source.omega();
    const double a3 = source.radius * source.radius * source.radius;
    return 0.5 * medium.density * source.amplitude * w * w * a3;
}

double dipole_geometric_factor(const DipoleSource& source, const Vec3& point) {
    const Vec3 delta = point - source.position;
    const double r = delta.norm();
    if (r <= source.effective_exclusion())
        throw PointInsideSource(r, source.effective_exclusion());
    return delta.dot(source.vibration_axis) / (r * r * r);
}

double velocity_potential(const DipoleSource& source, const Vec3& point, double t) {
    const double w = source.omega();
    const double a3 = source.radius * source.radius * source.radius;
    const double u = source.amplitude * w * std::cos(w * t);
    return -0.5 * a3 * u * dipole_geometric_factor(source, point);
}

double pressure_at(const FluidMedium& medium, const DipoleSource& source, const Vec3& point,
                   double t) {
    const double p0 = source_strength_amplitude(medium, source);
    return -p0 * dipole_geometric_factor(source, point) * std::sin(source.omega() * t);
}

long ScalarField::count_valid() const {
    long n = 0;
    for (char v : valid) n += (v != 0);
    return n;
}

ScalarField pressure_field_grid(const FluidMedium& medium, const DipoleSource& source,
                                const GridSpec& grid, double time) {
    for (int d = 0; d < 3; ++d) {
        if (grid.shape[d] < 1) throw ConfigInvalid("grid.shape entries must be >= 1");
        if (grid.shape[d] > 1 && !(grid.hi[d] > grid.lo[d]))
            throw ConfigInvalid("grid.hi must exceed grid.lo along sampled dimensions");
    }
    ScalarField field;
    field.grid = grid;
    field.values.assign(static_cast<std::size_t>(grid.count()),
                        std::numeric_limits<double>::quiet_NaN());
    field.valid.assign(static_cast<std::size_t>(grid.count()), 0);

    const double p0 = source_strength_amplitude(medium, source);
    const double sin_wt = std::sin(source.omega() * time);
    const double excl = source.effective_exclusion();

    double max_abs = 0.0;
    for (int iz = 0; iz < grid.shape[2]; ++iz)
        for (int iy = 0; iy < grid.shape[1]; ++iy)
            for (int ix = 0; ix < grid.shape[0]; ++ix) {
                const Vec3 pt = grid.point(ix, iy, iz);
                const Vec3 delta = pt - source.position;
                const double r = delta.norm();
                if (r <= excl) continue;
                const double g = delta.dot(source.vibration_axis) / (r * r * r);
                const double p = -p0 * g * sin_wt;
                const std::size_t idx = static_cast<std::size_t>(grid.index(ix, iy, iz));
                field.values[idx] = p;
                field.valid[idx] = 1;
                max_abs = std::max(max_abs, std::abs(p));
            }

    if (field.count_valid() == 0)
        throw EmptyGrid("every grid point lies inside the source exclusion radius");

    field.normalization = max_abs;
    if (max_abs > 0.0) {
        for (std::size_t i = 0; i < field.values.size(); ++i)
            if (field.valid[i]) field.values[i] /= max_abs;
    }
    return field;
}

}  // namespace hydrolink
