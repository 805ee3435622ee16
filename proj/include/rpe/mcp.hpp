#pragma once

// Motion-consistency pruning.  Per range-angle cell: find the dominant
// Doppler bin, read its velocity, then keep only cells whose velocity
// magnitude and local velocity spread look like articulated human motion
// rather than static clutter.

#include <limits>

#include "rpe/radar.hpp"
#include "rpe/tensor.hpp"

namespace rpe {

// v(r, a) = velocity of the strongest Doppler bin; k(r, a) = its index.
// Magnitude ties pick the lowest bin index, so an all-zero column gives
// k = 0 deterministically.
struct VelocityField {
    int rows = 0;
    int cols = 0;
    std::vector<double> v;  // m/s
    std::vector<int> k;     // winning bin per cell

    double vel(int r, int a) const {
        return v[static_cast<std::size_t>(r) * cols + a];
    }
    int bin(int r, int a) const {
        return k[static_cast<std::size_t>(r) * cols + a];
    }
};

VelocityField dominant_doppler(const RadCube& cube);

// Mean and population variance of v over a (2 radius + 1)^2 window clamped
// to the grid edges (shrunk windows renormalize by their actual cell count).
struct LocalStats {
    int rows = 0;
    int cols = 0;
    std::vector<double> mu;
    std::vector<double> sigma2;

    double mean(int r, int a) const {
        return mu[static_cast<std::size_t>(r) * cols + a];
    }
    double var(int r, int a) const {
        return sigma2[static_cast<std::size_t>(r) * cols + a];
    }
};

LocalStats local_stats(const VelocityField& field, int radius);

struct DopplerThresholds {
    double v_min = 0;      // m/s
    double v_max = 0;      // m/s
    double sigma_min = 0;  // m/s
    double sigma_max = std::numeric_limits<double>::infinity();  // m/s

    bool operator==(const DopplerThresholds&) const = default;
};

// bit(r, a) = 1 iff v_min <= |v| <= v_max and
// sigma_min <= sqrt(sigma2) <= sigma_max (all bounds inclusive).
DopplerMask doppler_mask(const VelocityField& field, const LocalStats& stats,
                         const DopplerThresholds& t);

// Same broadcast-multiply semantics as the spatial gate.
RadCube apply_doppler_mask(const RadCube& cube, const DopplerMask& mask);

// Summary of the surviving motion, computed over masked-in cells only;
// an empty mask yields all zeros.  sigma_g is the population std.
struct MotionDescriptors {
    double mu_g = 0;     // mean velocity, m/s
    double sigma_g = 0;  // velocity std, m/s
    double vmax_g = 0;   // max |velocity|, m/s
};

MotionDescriptors global_descriptors(const VelocityField& field,
                                     const DopplerMask& mask);

}  // namespace rpe
