#pragma once

// Dense tensors and pose containers shared by every stage.

#include <array>
#include <cstdint>
#include <vector>

#include "rpe/radar.hpp"

namespace rpe {

// Channel-major real tensor [c][r][a][d].  Double storage: the pooling and
// statistics stages are specified against exact arithmetic, and float
// accumulation would not hold their tolerances.
struct RealCube {
    int c = 0;
    int r = 0;
    int a = 0;
    int d = 0;
    std::vector<double> data;

    RealCube() = default;
    RealCube(int c_, int r_, int a_, int d_)
        : c(c_), r(r_), a(a_), d(d_),
          data(static_cast<std::size_t>(c_) * r_ * a_ * d_, 0.0) {}

    double& at(int ci, int ri, int ai, int di) {
        return data[((static_cast<std::size_t>(ci) * r + ri) * a + ai) * d + di];
    }
    double at(int ci, int ri, int ai, int di) const {
        return data[((static_cast<std::size_t>(ci) * r + ri) * a + ai) * d + di];
    }
    std::size_t size() const { return data.size(); }
};

// Row-major binary grid over (range, angle).
struct BitGrid {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> bits;

    BitGrid() = default;
    BitGrid(int rows_, int cols_, std::uint8_t fill = 0)
        : rows(rows_), cols(cols_),
          bits(static_cast<std::size_t>(rows_) * cols_, fill) {}

    std::uint8_t& at(int r, int c) {
        return bits[static_cast<std::size_t>(r) * cols + c];
    }
    std::uint8_t at(int r, int c) const {
        return bits[static_cast<std::size_t>(r) * cols + c];
    }
    int count() const {
        int n = 0;
        for (auto b : bits) n += b ? 1 : 0;
        return n;
    }
    bool operator==(const BitGrid&) const = default;
};

using SpatialMask = BitGrid;
using DopplerMask = BitGrid;

// Skeleton joint order; poses are stored as J x (x, y, z) in millimeters.
// x lateral (positive to the radar's left), y depth along boresight,
// z up, origin at the sensor.
enum JointId : int {
    kHead = 0,
    kNeck,
    kShoulderR,
    kShoulderL,
    kElbowR,
    kElbowL,
    kWristR,
    kWristL,
    kHipR,
    kHipL,
    kKneeR,
    kKneeL,
    kAnkleR,
    kAnkleL,
    kJointCount,  // 14
};

struct Pose {
    std::vector<std::array<float, 3>> joints;  // mm

    Pose() = default;
    explicit Pose(int j) : joints(j, {0.0f, 0.0f, 0.0f}) {}
    int joint_count() const { return static_cast<int>(joints.size()); }
    bool operator==(const Pose&) const = default;
};

// |z| per cell as a single-channel RealCube.  Exact formula:
// sqrt(re*re + im*im) evaluated in double (float squares are exact in
// double, sqrt is correctly rounded).
RealCube magnitude(const RadCube& cube);

}  // namespace rpe
