#pragma once

// Point-scatterer scene synthesis.  This is the ground-truth generator the
// whole pipeline is tested against: every scatterer contributes separable
// phase ramps across fast time, slow time and the array, so its cube peak
// position is known in closed form (expected_bins) before any FFT runs.
//
// Per scatterer p the raw sample is
//   s[n,k,m] = amp * exp(j 2 pi f_if n / f_s)        f_if = 2 S d / c
//            * exp(j 4 pi v T_r k / lambda)
//            * exp(j 2 pi (l m / lambda) sin(theta))
// plus circular complex Gaussian noise of std noise_sigma per sample.
// v > 0 means approaching; theta is the direction cosine angle along the
// array axis.

#include <complex>
#include <cstdint>
#include <vector>

#include "rpe/radar.hpp"
#include "rpe/tensor.hpp"

namespace rpe {

struct Scatterer {
    double dist = 0;   // m
    double theta = 0;  // rad
    double vel = 0;    // m/s, positive = approaching
    std::complex<double> amp = {1.0, 0.0};
};

struct Scene {
    std::vector<Scatterer> scatterers;
    std::vector<Scatterer> clutter;  // conventionally static (vel = 0)
    double noise_sigma = 0.0;        // per-sample complex std
};

// Throws ConfigError when a scatterer aliases in range (f_if > f_s/2) or
// velocity (|v| >= v_amb).  Noise is drawn from SplitMix64(seed) in cell
// order, so a scene plus a seed fully determines the output bits.
RawCube synthesize_frame(const Scene& scene, const RadarConfig& cfg,
                         std::uint64_t seed);

struct CubeBins {
    int r = 0;
    int a = 0;
    int d = 0;
    bool operator==(const CubeBins&) const = default;
};

// Nearest cube cell for a scatterer: round(d / range_res),
// round(A/2 + (A/2)(2 l / lambda) sin(theta)),
// round(D/2 + (v / v_amb)(D/2)), each clamped to the axis.
CubeBins expected_bins(const Scatterer& s, const RadarConfig& cfg,
                       int range_bins = kDefaultRangeBins);

// ---------------------------------------------------------------------------
// Walking skeleton: 14 joints on a sinusoidal gait with one global phase.
// Torso joints sway gently (|v| <= 0.5 m/s), wrists and ankles swing up to
// ~2.3 m/s, always below the ambiguous velocity.  Limb pairs are antiphase
// and legs lead arms by a quarter cycle, so some group is always moving.

struct GaitParams {
    double frame_rate = 10.0;   // frames per second
    double stride_rate = 0.9;   // gait cycles per second
    double torso_amp = 0.08;    // m, depth sway of head/neck/shoulders/hips
    double elbow_amp = 0.20;    // m
    double wrist_amp = 0.40;    // m
    double knee_amp = 0.15;     // m
    double ankle_amp = 0.30;    // m
};

struct SkeletonScene {
    double base_depth = 1.6;    // m, torso distance along boresight
    double base_lateral = 0.0;  // m, offset along the array axis
    double phase0 = 0.0;        // turns
    double noise_sigma = 1e-3;
    GaitParams gait;

    // Randomizes placement and initial phase; gait amplitudes stay fixed.
    static SkeletonScene from_seed(std::uint64_t seed);
};

// Rest pose in millimeters (frame 0 with all amplitudes zero), centered at
// the scene's base position.  Radar is mounted at torso mid-height.
Pose skeleton_rest_pose(const SkeletonScene& sc);

// Closed-form gait evaluation.
Pose skeleton_pose(const SkeletonScene& sc, int frame);

// One echo per joint, with analytic radial velocity (positive approaching).
std::vector<Scatterer> skeleton_scatterers(const SkeletonScene& sc, int frame);

// Raw frame for frame index i; the noise stream is seed mixed with i, so
// frames are independent and any frame can be regenerated in isolation.
RawCube skeleton_raw_frame(const SkeletonScene& sc, const RadarConfig& cfg,
                           int frame, std::uint64_t seed);

// Poses for frames 0..n_frames-1.
std::vector<Pose> skeleton_poses(const SkeletonScene& sc, int n_frames);

}  // namespace rpe
