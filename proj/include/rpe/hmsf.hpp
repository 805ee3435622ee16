#pragma once

// Hierarchical multi-scale fusion: pool the motion-gated magnitude cube at
// two coarser scales, resample both back to full resolution, stack them
// with the original, then reduce to a fixed-length feature vector.

#include <vector>

#include "rpe/mcp.hpp"
#include "rpe/tensor.hpp"

namespace rpe {

struct PoolSpec {
    int s_c = 5;  // first pooling kernel
    int s_m = 9;  // second pooling kernel

    bool operator==(const PoolSpec&) const = default;
};

struct Kernel3 {
    int kr = 1;
    int ka = 1;
    int kd = 1;
};

// Non-overlapping average pooling, stride = kernel, no padding.  Each
// kernel is clamped to its axis length; output dims are floor(dim / k) and
// trailing cells that do not fill a block are dropped.  Per channel.
RealCube avg_pool3(const RealCube& x, Kernel3 k);

inline RealCube avg_pool3(const RealCube& x, int k) {
    return avg_pool3(x, Kernel3{k, k, k});
}

// Trilinear resampling to (r, a, d), half-pixel-aligned centers with edge
// clamping.  Same dims copy through exactly.  Per channel.
RealCube upsample_trilinear(const RealCube& x, int r, int a, int d);

// Channel concatenation; spatial dims must agree.
RealCube fuse(const RealCube& coarse, const RealCube& medium,
              const RealCube& fine);

struct FeatureGrid {
    int g_r = 4;
    int g_a = 4;
    int g_d = 2;

    bool operator==(const FeatureGrid&) const = default;
};

using FeatureVector = std::vector<double>;

// Pools every channel down to the grid (kernel = floor(dim / g) per axis,
// which must be >= 1), flattens channel-major, then appends the three
// motion descriptors.  Length = channels * g_r * g_a * g_d + 3.
FeatureVector global_features(const RealCube& fused,
                              const MotionDescriptors& desc,
                              const FeatureGrid& grid);

inline int feature_length(int channels, const FeatureGrid& g) {
    return channels * g.g_r * g.g_a * g.g_d + 3;
}

}  // namespace rpe
