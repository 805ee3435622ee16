#include "rpe/sim.hpp"

#include <algorithm>
#include <cmath>

#include "rpe/det_math.hpp"
#include "rpe/errors.hpp"

namespace rpe {
namespace {

void accumulate_scatterer(RawCube& raw, const Scatterer& s,
                          const RadarConfig& cfg, const DerivedParams& p) {
    if (!(s.dist >= 0.0)) {
        throw ConfigError("scene: scatterer distance must be non-negative");
    }
    const double f_if = 2.0 * p.slope * s.dist / kSpeedOfLight;
    if (f_if > 0.5 * cfg.f_s) {
        throw ConfigError("scene: scatterer beyond unambiguous range (f_if > f_s/2)");
    }
    if (!(std::abs(s.vel) < p.v_amb)) {
        throw ConfigError("scene: |velocity| must stay below v_amb");
    }

    // Per-axis phase increments in turns per index.
    const double fr_n = f_if / cfg.f_s;
    const double fr_k = 2.0 * s.vel * p.t_r / p.lambda;
    const double fr_m = (cfg.spacing / p.lambda) * sin_turns(s.theta / kTwoPi);

    std::vector<std::complex<double>> pn(raw.n_s), pk(raw.n_d), pm(raw.n_a);
    for (int n = 0; n < raw.n_s; ++n) {
        double si, co;
        sincos_turns(fr_n * n, si, co);
        pn[n] = {co, si};
    }
    for (int k = 0; k < raw.n_d; ++k) {
        double si, co;
        sincos_turns(fr_k * k, si, co);
        pk[k] = {co, si};
    }
    for (int m = 0; m < raw.n_a; ++m) {
        double si, co;
        sincos_turns(fr_m * m, si, co);
        pm[m] = {co, si};
    }

    std::vector<std::complex<double>> pkm(static_cast<std::size_t>(raw.n_d) *
                                          raw.n_a);
    for (int k = 0; k < raw.n_d; ++k) {
        for (int m = 0; m < raw.n_a; ++m) {
            pkm[static_cast<std::size_t>(k) * raw.n_a + m] =
                s.amp * pk[k] * pm[m];
        }
    }
    const std::size_t slab = pkm.size();
    for (int n = 0; n < raw.n_s; ++n) {
        const std::complex<double> cn = pn[n];
        std::complex<double>* dst = raw.data.data() + slab * n;
        for (std::size_t i = 0; i < slab; ++i) {
            dst[i] += cn * pkm[i];
        }
    }
}

}  // namespace

RawCube synthesize_frame(const Scene& scene, const RadarConfig& cfg,
                         std::uint64_t seed) {
    const DerivedParams p = derive_params(cfg);
    RawCube raw = make_raw_cube(cfg);
    for (const auto& s : scene.scatterers) {
        accumulate_scatterer(raw, s, cfg, p);
    }
    for (const auto& s : scene.clutter) {
        accumulate_scatterer(raw, s, cfg, p);
    }
    if (scene.noise_sigma > 0.0) {
        SplitMix64 rng(seed);
        const double scale = scene.noise_sigma / std::sqrt(2.0);
        for (auto& z : raw.data) {
            const GaussPair g = gaussian_pair(rng);
            z += std::complex<double>(scale * g.z0, scale * g.z1);
        }
    }
    return raw;
}

CubeBins expected_bins(const Scatterer& s, const RadarConfig& cfg,
                       int range_bins) {
    const DerivedParams p = derive_params(cfg);
    const double half_a = cfg.n_a / 2.0;
    const double half_d = cfg.n_d / 2.0;
    const long r = std::lround(s.dist / p.range_res);
    const long a = std::lround(half_a + half_a * (2.0 * cfg.spacing / p.lambda) *
                                            sin_turns(s.theta / kTwoPi));
    const long d = std::lround(half_d + half_d * s.vel / p.v_amb);
    CubeBins b;
    b.r = static_cast<int>(std::clamp(r, 0L, static_cast<long>(range_bins - 1)));
    b.a = static_cast<int>(std::clamp(a, 0L, static_cast<long>(cfg.n_a - 1)));
    b.d = static_cast<int>(std::clamp(d, 0L, static_cast<long>(cfg.n_d - 1)));
    return b;
}

// ---------------------------------------------------------------------------

namespace {

enum class Limb { torso, elbow, wrist, knee, ankle };

struct JointSpec {
    double x;       // rest lateral, m (radar's view)
    double z;       // rest height relative to the sensor, m
    Limb limb;      // selects the gait amplitude
    double offset;  // gait phase offset, turns
    double echo;    // echo strength
};

// Antiphase left/right pairs; legs lead arms by a quarter cycle.
const JointSpec kJoints[kJointCount] = {
    /* head      */ {0.00, 0.75, Limb::torso, 0.00, 0.8},
    /* neck      */ {0.00, 0.55, Limb::torso, 0.00, 0.9},
    /* shoulderR */ {-0.20, 0.45, Limb::torso, 0.00, 1.0},
    /* shoulderL */ {0.20, 0.45, Limb::torso, 0.00, 1.0},
    /* elbowR    */ {-0.25, 0.15, Limb::elbow, 0.00, 0.6},
    /* elbowL    */ {0.25, 0.15, Limb::elbow, 0.50, 0.6},
    /* wristR    */ {-0.28, -0.15, Limb::wrist, 0.00, 0.6},
    /* wristL    */ {0.28, -0.15, Limb::wrist, 0.50, 0.6},
    /* hipR      */ {-0.12, -0.05, Limb::torso, 0.00, 1.0},
    /* hipL      */ {0.12, -0.05, Limb::torso, 0.00, 1.0},
    /* kneeR     */ {-0.14, -0.55, Limb::knee, 0.25, 0.6},
    /* kneeL     */ {0.14, -0.55, Limb::knee, 0.75, 0.6},
    /* ankleR    */ {-0.15, -0.95, Limb::ankle, 0.25, 0.6},
    /* ankleL    */ {0.15, -0.95, Limb::ankle, 0.75, 0.6},
};

double joint_amp(const GaitParams& g, int j) {
    switch (kJoints[j].limb) {
        case Limb::torso: return g.torso_amp;
        case Limb::elbow: return g.elbow_amp;
        case Limb::wrist: return g.wrist_amp;
        case Limb::knee: return g.knee_amp;
        case Limb::ankle: return g.ankle_amp;
    }
    return 0.0;
}

struct JointState {
    double x, y, z;     // m
    double vy;          // m/s, depth rate
};

JointState joint_state(const SkeletonScene& sc, int frame, int j) {
    const GaitParams& g = sc.gait;
    const double t = static_cast<double>(frame) / g.frame_rate;
    const double phase = sc.phase0 + g.stride_rate * t + kJoints[j].offset;
    const double amp = joint_amp(g, j);
    double si, co;
    sincos_turns(phase, si, co);
    JointState st;
    st.x = sc.base_lateral + kJoints[j].x;
    st.y = sc.base_depth + amp * si;
    st.z = kJoints[j].z;
    st.vy = amp * kTwoPi * g.stride_rate * co;
    return st;
}

}  // namespace

SkeletonScene SkeletonScene::from_seed(std::uint64_t seed) {
    SkeletonScene sc;
    SplitMix64 rng(mix_seed(seed, 0x5ce7e));
    sc.base_depth = rng.next_in(1.4, 1.9);
    sc.base_lateral = rng.next_in(-0.25, 0.25);
    sc.phase0 = rng.next_double();
    return sc;
}

Pose skeleton_rest_pose(const SkeletonScene& sc) {
    Pose p(kJointCount);
    for (int j = 0; j < kJointCount; ++j) {
        p.joints[j] = {
            static_cast<float>((sc.base_lateral + kJoints[j].x) * 1000.0),
            static_cast<float>(sc.base_depth * 1000.0),
            static_cast<float>(kJoints[j].z * 1000.0)};
    }
    return p;
}

Pose skeleton_pose(const SkeletonScene& sc, int frame) {
    Pose p(kJointCount);
    for (int j = 0; j < kJointCount; ++j) {
        const JointState st = joint_state(sc, frame, j);
        p.joints[j] = {static_cast<float>(st.x * 1000.0),
                       static_cast<float>(st.y * 1000.0),
                       static_cast<float>(st.z * 1000.0)};
    }
    return p;
}

std::vector<Scatterer> skeleton_scatterers(const SkeletonScene& sc, int frame) {
    std::vector<Scatterer> out;
    out.reserve(kJointCount);
    for (int j = 0; j < kJointCount; ++j) {
        const JointState st = joint_state(sc, frame, j);
        const double d =
            std::sqrt(st.x * st.x + st.y * st.y + st.z * st.z);
        Scatterer s;
        s.dist = d;
        // Direction cosine along the array axis.
        s.theta = det_asin(std::clamp(st.x / d, -1.0, 1.0));
        // Approach rate: range shrinks when y and vy have opposite signs.
        s.vel = -(st.y * st.vy) / d;
        s.amp = {kJoints[j].echo, 0.0};
        out.push_back(s);
    }
    return out;
}

RawCube skeleton_raw_frame(const SkeletonScene& sc, const RadarConfig& cfg,
                           int frame, std::uint64_t seed) {
    Scene scene;
    scene.scatterers = skeleton_scatterers(sc, frame);
    scene.noise_sigma = sc.noise_sigma;
    return synthesize_frame(scene, cfg,
                            mix_seed(seed, static_cast<std::uint64_t>(frame)));
}

std::vector<Pose> skeleton_poses(const SkeletonScene& sc, int n_frames) {
    std::vector<Pose> poses;
    poses.reserve(static_cast<std::size_t>(n_frames));
    for (int f = 0; f < n_frames; ++f) {
        poses.push_back(skeleton_pose(sc, f));
    }
    return poses;
}

}  // namespace rpe
