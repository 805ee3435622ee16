#include "rpe/ssp.hpp"

#include "rpe/errors.hpp"

namespace rpe {

SpatialMask build_spatial_mask(const SpatialBounds& bounds,
                               const AxisMaps& axes) {
    if (bounds.d_min > bounds.d_max || bounds.theta_min > bounds.theta_max) {
        throw ConfigError("spatial bounds: min exceeds max");
    }
    const int R = axes.range_bins();
    const int A = axes.angle_bins();
    SpatialMask mask(R, A);
    for (int r = 0; r < R; ++r) {
        const bool r_in =
            axes.d_of_r[r] >= bounds.d_min && axes.d_of_r[r] <= bounds.d_max;
        if (!r_in) continue;
        for (int a = 0; a < A; ++a) {
            if (axes.theta_of_a[a] >= bounds.theta_min &&
                axes.theta_of_a[a] <= bounds.theta_max) {
                mask.at(r, a) = 1;
            }
        }
    }
    return mask;
}

RadCube apply_spatial_mask(const RadCube& cube, const SpatialMask& mask) {
    if (mask.rows != cube.r || mask.cols != cube.a) {
        throw DimensionError("spatial mask: shape does not match cube");
    }
    RadCube out = cube;
    for (int r = 0; r < cube.r; ++r) {
        for (int a = 0; a < cube.a; ++a) {
            if (mask.at(r, a)) continue;
            for (int d = 0; d < cube.d; ++d) {
                out.at(r, a, d) = {0.0f, 0.0f};
            }
        }
    }
    return out;
}

}  // namespace rpe
