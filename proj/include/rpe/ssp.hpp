#pragma once

// Spatial scope pruning: a binary range-angle gate from physical bounds.
// Cells outside the gate are set to exact zero in every Doppler slice, so
// later stages can treat "outside the region of interest" and "zero
// energy" as the same thing.

#include "rpe/radar.hpp"
#include "rpe/tensor.hpp"

namespace rpe {

struct SpatialBounds {
    double d_min = 0;      // m
    double d_max = 0;      // m
    double theta_min = 0;  // rad
    double theta_max = 0;  // rad
};

// mask(r, a) = 1 iff d_min <= d_of_r[r] <= d_max and
// theta_min <= theta_of_a[a] <= theta_max (inclusive at both ends).
// Throws ConfigError when a min exceeds its max.
SpatialMask build_spatial_mask(const SpatialBounds& bounds, const AxisMaps& axes);

// Multiplies every (r, a) column by its mask bit, broadcast along Doppler.
// Throws DimensionError on shape mismatch.
RadCube apply_spatial_mask(const RadCube& cube, const SpatialMask& mask);

}  // namespace rpe
