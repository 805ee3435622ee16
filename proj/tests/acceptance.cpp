// Acceptance gate.  Each criterion pins pipeline behavior against an
// independent computation: closed-form bin positions, a brute-force DFT,
// hand-built scenes with known masks, finite differences, and Monte Carlo
// detector statistics.  One line per criterion; the exit code is the number
// of failed criteria.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "rpe/cfar.hpp"
#include "rpe/det_math.hpp"
#include "rpe/fft.hpp"
#include "rpe/hmsf.hpp"
#include "rpe/io.hpp"
#include "rpe/mcp.hpp"
#include "rpe/metrics.hpp"
#include "rpe/mlp.hpp"
#include "rpe/pipeline.hpp"
#include "rpe/profile.hpp"
#include "rpe/radar.hpp"
#include "rpe/sim.hpp"
#include "rpe/ssp.hpp"
#include "rpe/tensor.hpp"

using namespace rpe;

namespace {

struct CheckFail : std::runtime_error {
    explicit CheckFail(const std::string& what) : std::runtime_error(what) {}
};

void require(bool ok, const char* what) {
    if (!ok) throw CheckFail(what);
}

void require(bool ok, const std::string& what) {
    if (!ok) throw CheckFail(what);
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

AxisMaps default_axes() {
    const RadarConfig cfg = RadarConfig::basic();
    return build_axis_maps(cfg, derive_params(cfg), kDefaultRangeBins);
}

CubeBins argmax_bins(const RadCube& cube) {
    CubeBins best;
    double best_mag = -1.0;
    for (int r = 0; r < cube.r; ++r) {
        for (int a = 0; a < cube.a; ++a) {
            for (int d = 0; d < cube.d; ++d) {
                const std::complex<float> z = cube.at(r, a, d);
                const double m =
                    static_cast<double>(z.real()) * z.real() +
                    static_cast<double>(z.imag()) * z.imag();
                if (m > best_mag) {
                    best_mag = m;
                    best = {r, a, d};
                }
            }
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// 1. Point targets land on their predicted bins.

std::string c1_point_targets() {
    const auto t0 = std::chrono::steady_clock::now();
    const RadarConfig cfg = RadarConfig::basic();
    const DerivedParams dp = derive_params(cfg);
    SplitMix64 rng(1001);

    for (int i = 0; i < 100; ++i) {
        Scatterer s;
        s.dist = rng.next_in(3.0 * dp.range_res, 60.0 * dp.range_res);
        s.theta = rng.next_in(-kPi / 3.0, kPi / 3.0);
        s.vel = rng.next_in(-0.8 * dp.v_amb, 0.8 * dp.v_amb);
        Scene scene;
        scene.scatterers.push_back(s);
        const RadCube cube = fft_chain(synthesize_frame(scene, cfg, 42), cfg);
        const CubeBins want = expected_bins(s, cfg);
        const CubeBins got = argmax_bins(cube);
        require(std::abs(got.r - want.r) <= 1 && std::abs(got.a - want.a) <= 1 &&
                    std::abs(got.d - want.d) <= 1,
                "scatterer " + std::to_string(i) + ": peak (" +
                    std::to_string(got.r) + "," + std::to_string(got.a) + "," +
                    std::to_string(got.d) + ") vs predicted (" +
                    std::to_string(want.r) + "," + std::to_string(want.a) +
                    "," + std::to_string(want.d) + ")");
    }

    // On-grid targets: every axis frequency is an exact bin, so the peak
    // position must match the prediction exactly.
    const int range_bins[] = {5, 17, 30, 44, 59};
    const int angle_bins[] = {10, 32, 50};
    const int doppler_bins[] = {4, 8, 12};
    for (int i = 0; i < 10; ++i) {
        const int rb = range_bins[i % 5];
        const int ab = angle_bins[i % 3];
        const int db = doppler_bins[(i / 3) % 3];
        Scatterer s;
        s.dist = rb * dp.range_res;
        s.theta = std::asin(2.0 * ab / cfg.n_a - 1.0);
        s.vel = dp.v_amb * (2.0 * db / cfg.n_d - 1.0);
        Scene scene;
        scene.scatterers.push_back(s);
        const RadCube cube = fft_chain(synthesize_frame(scene, cfg, 42), cfg);
        const CubeBins want{rb, ab, db};
        require(expected_bins(s, cfg) == want,
                "on-grid prediction moved off (" + std::to_string(rb) + "," +
                    std::to_string(ab) + "," + std::to_string(db) + ")");
        require(argmax_bins(cube) == want,
                "on-grid peak missed (" + std::to_string(rb) + "," +
                    std::to_string(ab) + "," + std::to_string(db) + ")");
    }

    const double secs = seconds_since(t0);
    require(secs < 10.0, "runtime " + num(secs) + " s exceeds 10 s");
    return "110 targets in " + num(secs) + " s";
}

// ---------------------------------------------------------------------------
// 2. The FFT chain equals a brute-force DFT; the core transform is unitary.

RadarConfig small_config(int n_s, int n_d, int n_a) {
    RadarConfig c = RadarConfig::basic();
    c.n_s = n_s;
    c.n_d = n_d;
    c.n_a = n_a;
    c.t_chirp = 1e-5;
    c.f_s = n_s / c.t_chirp;
    return c;
}

std::string c2_fft_oracle() {
    double worst_rel = 0.0;
    for (const auto& [ns, nd, na] :
         {std::tuple{16, 8, 8}, std::tuple{8, 4, 4}}) {
        const RadarConfig cfg = small_config(ns, nd, na);
        const int rb = ns / 2;
        RawCube raw = make_raw_cube(cfg);
        SplitMix64 rng(2002);
        for (auto& z : raw.data) {
            z = {rng.next_in(-1.0, 1.0), rng.next_in(-1.0, 1.0)};
        }
        const RadCube got = fft_chain(raw, cfg, rb);

        // Independent oracle: plain triple DFT sum with libm trig, 1/N per
        // axis, angle and Doppler axes rotated so their center bin is DC.
        double max_mag = 0.0;
        double max_err = 0.0;
        for (int r = 0; r < rb; ++r) {
            for (int a = 0; a < na; ++a) {
                for (int d = 0; d < nd; ++d) {
                    const int ai = (a + na / 2) % na;
                    const int di = (d + nd / 2) % nd;
                    std::complex<double> acc = 0.0;
                    for (int n = 0; n < ns; ++n) {
                        for (int k = 0; k < nd; ++k) {
                            for (int m = 0; m < na; ++m) {
                                const double ph =
                                    -kTwoPi *
                                    (static_cast<double>(r) * n / ns +
                                     static_cast<double>(di) * k / nd +
                                     static_cast<double>(ai) * m / na);
                                acc += raw.at(n, k, m) *
                                       std::complex<double>(std::cos(ph),
                                                            std::sin(ph));
                            }
                        }
                    }
                    acc /= static_cast<double>(ns) * nd * na;
                    max_mag = std::max(max_mag, std::abs(acc));
                    const std::complex<float> g = got.at(r, a, d);
                    max_err = std::max(
                        max_err,
                        std::abs(std::complex<double>(g.real(), g.imag()) -
                                 acc));
                }
            }
        }
        const double rel = max_err / max_mag;
        require(rel <= 1e-6, "dft mismatch: rel err " + num(rel) + " on " +
                                 std::to_string(ns) + "x" +
                                 std::to_string(nd) + "x" +
                                 std::to_string(na));
        worst_rel = std::max(worst_rel, rel);
    }

    // Parseval for the unitary transform.
    SplitMix64 rng(2003);
    std::vector<std::complex<double>> v(256);
    double e_in = 0.0;
    for (auto& z : v) {
        z = {rng.next_in(-1.0, 1.0), rng.next_in(-1.0, 1.0)};
        e_in += std::norm(z);
    }
    fft(v, FftNorm::unitary);
    double e_out = 0.0;
    for (const auto& z : v) e_out += std::norm(z);
    require(std::abs(e_in - e_out) <= 1e-9 * e_in,
            "parseval violated: " + num(e_in) + " vs " + num(e_out));
    return "rel err " + num(worst_rel) + ", energy drift " +
           num(std::abs(e_in - e_out) / e_in);
}

// ---------------------------------------------------------------------------
// 3. The spatial gate zeroes exactly the cells outside the region.

std::string c3_spatial_gate() {
    const AxisMaps axes = default_axes();
    const Profile p = builtin_profile("balanced");
    const SpatialMask mask = build_spatial_mask(p.spatial_bounds(), axes);
    SplitMix64 rng(3003);
    std::int64_t outside = 0;
    for (int t = 0; t < 100; ++t) {
        RadCube cube;
        cube.r = 64;
        cube.a = 64;
        cube.d = 16;
        cube.axes = axes;
        cube.data.resize(static_cast<std::size_t>(64) * 64 * 16);
        for (auto& z : cube.data) {
            z = {static_cast<float>(rng.next_in(-1.0, 1.0)),
                 static_cast<float>(rng.next_in(-1.0, 1.0))};
        }
        const RadCube m1 = apply_spatial_mask(cube, mask);
        double e_orig = 0.0;
        double e_mask = 0.0;
        for (int r = 0; r < 64; ++r) {
            for (int a = 0; a < 64; ++a) {
                for (int d = 0; d < 16; ++d) {
                    const std::complex<float> o = cube.at(r, a, d);
                    const std::complex<float> k = m1.at(r, a, d);
                    e_orig += static_cast<double>(o.real()) * o.real() +
                              static_cast<double>(o.imag()) * o.imag();
                    e_mask += static_cast<double>(k.real()) * k.real() +
                              static_cast<double>(k.imag()) * k.imag();
                    if (mask.at(r, a)) {
                        require(k == o, "in-region cell changed");
                    } else {
                        require(k == std::complex<float>(0.0f, 0.0f),
                                "out-of-region cell not exactly zero");
                        ++outside;
                    }
                }
            }
        }
        const RadCube m2 = apply_spatial_mask(m1, mask);
        require(m2.data == m1.data, "gate is not idempotent");
        require(e_mask <= e_orig * (1.0 + 1e-12), "gated energy grew");
    }
    require(outside > 0, "region covered the whole grid; check is vacuous");
    return num(static_cast<double>(outside) / 100.0) +
           " cells/frame zeroed over 100 frames";
}

// ---------------------------------------------------------------------------
// 4. The motion gate keeps the mover and rejects static clutter.

std::string c4_motion_gate() {
    const RadarConfig cfg = RadarConfig::basic();
    const DerivedParams dp = derive_params(cfg);
    const AxisMaps axes = default_axes();
    const Profile p = builtin_profile("balanced");

    // One mover plus two on-grid static reflectors inside the mover's
    // local-statistics window.  On-grid clutter leaks nothing into other
    // bins, so every remaining cell is dominated by the mover's Doppler
    // bin, while the clutter cells themselves report zero velocity.
    Scatterer mover;
    mover.dist = 2.0;
    mover.theta = kPi * 0.1;
    mover.vel = 1.5;
    Scatterer cl1;
    cl1.dist = 47.0 * dp.range_res;
    cl1.theta = std::asin(2.0 * 41 / cfg.n_a - 1.0);
    cl1.amp = {3.0, 0.0};
    Scatterer cl2;
    cl2.dist = 49.0 * dp.range_res;
    cl2.theta = std::asin(2.0 * 43 / cfg.n_a - 1.0);
    cl2.amp = {3.0, 0.0};
    Scene scene;
    scene.scatterers.push_back(mover);
    scene.clutter = {cl1, cl2};

    require(expected_bins(mover, cfg) == CubeBins{48, 42, 11},
            "mover bin prediction moved");
    require(expected_bins(cl1, cfg) == CubeBins{47, 41, 8} &&
                expected_bins(cl2, cfg) == CubeBins{49, 43, 8},
            "clutter bin prediction moved");

    const RadCube cube = fft_chain(synthesize_frame(scene, cfg, 7), cfg);
    const SpatialMask smask = build_spatial_mask(p.spatial_bounds(), cube.axes);
    require(smask.at(48, 42) == 1 && smask.at(47, 41) == 1 &&
                smask.at(49, 43) == 1,
            "scene fell outside the spatial region");
    const RadCube gated = apply_spatial_mask(cube, smask);

    const VelocityField field = dominant_doppler(gated);
    require(field.bin(48, 42) == 11,
            "mover cell dominant bin " + std::to_string(field.bin(48, 42)));
    require(field.bin(47, 41) == 8 && field.bin(49, 43) == 8,
            "clutter cells are not at the zero-velocity bin");

    const LocalStats stats = local_stats(field, p.window_radius);
    const DopplerMask dmask = doppler_mask(field, stats, p.thresholds);
    require(dmask.at(48, 42) == 1,
            "mover cell rejected; local sigma " +
                num(std::sqrt(stats.var(48, 42))));
    require(dmask.at(47, 41) == 0 && dmask.at(49, 43) == 0,
            "static clutter cell kept");

    const double v_mover = axes.v_of_d[11];
    int kept = 0;
    for (int r = 0; r < dmask.rows; ++r) {
        for (int a = 0; a < dmask.cols; ++a) {
            if (!dmask.at(r, a)) continue;
            ++kept;
            const double v = field.vel(r, a);
            require(std::abs(v) >= p.thresholds.v_min,
                    "kept cell with static velocity " + num(v));
            require(std::abs(v - v_mover) <= 1e-9,
                    "kept cell not at the mover velocity: " + num(v));
        }
    }
    require(kept >= 1, "empty motion mask");

    // Global descriptors, hand-checked on two-cell fields.
    VelocityField f2;
    f2.rows = 1;
    f2.cols = 2;
    f2.k = {0, 0};
    const DopplerMask all(1, 2, 1);
    f2.v = {1.0, 3.0};
    MotionDescriptors d2 = global_descriptors(f2, all);
    require(std::abs(d2.mu_g - 2.0) <= 1e-9 &&
                std::abs(d2.sigma_g - 1.0) <= 1e-9 &&
                std::abs(d2.vmax_g - 3.0) <= 1e-9,
            "descriptors for (1,3): got (" + num(d2.mu_g) + "," +
                num(d2.sigma_g) + "," + num(d2.vmax_g) + ")");
    f2.v = {-3.0, 1.0};
    d2 = global_descriptors(f2, all);
    require(std::abs(d2.mu_g + 1.0) <= 1e-9 &&
                std::abs(d2.sigma_g - 2.0) <= 1e-9 &&
                std::abs(d2.vmax_g - 3.0) <= 1e-9,
            "descriptors for (-3,1): got (" + num(d2.mu_g) + "," +
                num(d2.sigma_g) + "," + num(d2.vmax_g) + ")");

    return std::to_string(kept) + " cells kept at " + num(v_mover) +
           " m/s, mover sigma " + num(std::sqrt(stats.var(48, 42)));
}

// ---------------------------------------------------------------------------
// 5. Pooling, trilinear resampling, and the kernel dimension chain.

std::string c5_fusion() {
    SplitMix64 rng(5005);
    for (int t = 0; t < 20; ++t) {
        RealCube x(1, 8, 8, 4);
        for (auto& v : x.data) v = rng.next_in(-1.0, 1.0);
        const Kernel3 k{1 + static_cast<int>(rng.next() % 8),
                        1 + static_cast<int>(rng.next() % 8),
                        1 + static_cast<int>(rng.next() % 4)};
        const RealCube pooled = avg_pool3(x, k);
        const int pr = 8 / k.kr;
        const int pa = 8 / k.ka;
        const int pd = 4 / k.kd;
        require(pooled.r == pr && pooled.a == pa && pooled.d == pd,
                "pooled dims mismatch");
        for (int r = 0; r < pr; ++r) {
            for (int a = 0; a < pa; ++a) {
                for (int d = 0; d < pd; ++d) {
                    double sum = 0.0;
                    for (int i = 0; i < k.kr; ++i) {
                        for (int j = 0; j < k.ka; ++j) {
                            for (int l = 0; l < k.kd; ++l) {
                                sum += x.at(0, r * k.kr + i, a * k.ka + j,
                                            d * k.kd + l);
                            }
                        }
                    }
                    const double mean =
                        sum / (static_cast<double>(k.kr) * k.ka * k.kd);
                    require(std::abs(pooled.at(0, r, a, d) - mean) <= 1e-6,
                            "pooled cell differs from its block mean");
                }
            }
        }
    }

    // Trilinear closed form at every site of a 2x2x2 -> 4x4x4 resample.
    RealCube small(1, 2, 2, 2);
    for (auto& v : small.data) v = rng.next_in(-1.0, 1.0);
    const RealCube up = upsample_trilinear(small, 4, 4, 4);
    const auto pos = [](int i) {
        return std::min(1.0, std::max(0.0, 0.5 * i - 0.25));
    };
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            for (int l = 0; l < 4; ++l) {
                const double fr = pos(i);
                const double fa = pos(j);
                const double fd = pos(l);
                double want = 0.0;
                for (int bi = 0; bi < 2; ++bi) {
                    for (int bj = 0; bj < 2; ++bj) {
                        for (int bl = 0; bl < 2; ++bl) {
                            const double w = (bi ? fr : 1.0 - fr) *
                                             (bj ? fa : 1.0 - fa) *
                                             (bl ? fd : 1.0 - fd);
                            want += w * small.at(0, bi, bj, bl);
                        }
                    }
                }
                require(std::abs(up.at(0, i, j, l) - want) <= 1e-9,
                        "trilinear value off at (" + std::to_string(i) + "," +
                            std::to_string(j) + "," + std::to_string(l) + ")");
            }
        }
    }

    // Kernel chain on the full cube dims.
    const RealCube big(1, 64, 64, 16);
    const RealCube coarse = avg_pool3(big, 5);
    require(coarse.r == 12 && coarse.a == 12 && coarse.d == 3,
            "kernel-5 dims not (12,12,3)");
    const RealCube medium = avg_pool3(big, 9);
    require(medium.r == 7 && medium.a == 7 && medium.d == 1,
            "kernel-9 dims not (7,7,1)");
    return "20 tensors, 64 resample sites";
}

// ---------------------------------------------------------------------------
// 6. Regressor gradients, parameter count, and alignment metrics.

Pose random_pose(SplitMix64& rng, double extent) {
    Pose p(kJointCount);
    for (auto& j : p.joints) {
        for (auto& c : j) c = static_cast<float>(rng.next_in(-extent, extent));
    }
    return p;
}

std::array<std::array<double, 3>, 3> rotation_from_rng(SplitMix64& rng) {
    const GaussPair p01 = gaussian_pair(rng);
    const GaussPair p23 = gaussian_pair(rng);
    double q0 = p01.z0, q1 = p01.z1, q2 = p23.z0, q3 = p23.z1;
    const double n = std::sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3);
    q0 /= n;
    q1 /= n;
    q2 /= n;
    q3 /= n;
    return {{{1 - 2 * (q2 * q2 + q3 * q3), 2 * (q1 * q2 - q0 * q3),
              2 * (q1 * q3 + q0 * q2)},
             {2 * (q1 * q2 + q0 * q3), 1 - 2 * (q1 * q1 + q3 * q3),
              2 * (q2 * q3 - q0 * q1)},
             {2 * (q1 * q3 - q0 * q2), 2 * (q2 * q3 + q0 * q1),
              1 - 2 * (q1 * q1 + q2 * q2)}}};
}

std::string c6_regressor() {
    SplitMix64 rng(6006);

    // Analytic gradients against central differences.
    const MlpShape gs{4, 6, 5, 3};
    MlpWeights w = MlpWeights::glorot(gs, 21);
    std::vector<double> x(4), t(3);
    for (auto& v : x) v = rng.next_in(-1.0, 1.0);
    for (auto& v : t) v = rng.next_in(-1.0, 1.0);
    MlpGrads g = MlpGrads::zeros(gs);
    mlp_backward(w, x, t, g);
    const auto loss_at = [&](const MlpWeights& ww) {
        const std::vector<double> o = mlp_forward(ww, x);
        double acc = 0.0;
        for (std::size_t i = 0; i < o.size(); ++i) {
            acc += (o[i] - t[i]) * (o[i] - t[i]);
        }
        return acc / (2.0 * static_cast<double>(o.size()));
    };
    std::vector<double>* params[6] = {&w.w1, &w.b1, &w.w2, &w.b2, &w.w3, &w.b3};
    const std::vector<double>* grads[6] = {&g.w1, &g.b1, &g.w2,
                                           &g.b2, &g.w3, &g.b3};
    const double h = 1e-5;
    double worst = 0.0;
    for (int a = 0; a < 6; ++a) {
        for (std::size_t i = 0; i < params[a]->size(); ++i) {
            double& pv = (*params[a])[i];
            const double orig = pv;
            pv = orig + h;
            const double lp = loss_at(w);
            pv = orig - h;
            const double lm = loss_at(w);
            pv = orig;
            const double fd = (lp - lm) / (2.0 * h);
            const double an = (*grads[a])[i];
            const double rel =
                std::abs(fd - an) / std::max(1e-6, std::abs(fd) + std::abs(an));
            worst = std::max(worst, rel);
        }
    }
    require(worst <= 1e-4, "gradient rel err " + num(worst));

    // Parameter count equals weight enumeration.
    for (int i = 0; i < 20; ++i) {
        MlpShape s;
        s.in = 1 + static_cast<int>(rng.next() % 64);
        s.h1 = 1 + static_cast<int>(rng.next() % 128);
        s.h2 = 1 + static_cast<int>(rng.next() % 128);
        s.out = 3 * (1 + static_cast<int>(rng.next() % 20));
        const MlpWeights z = MlpWeights::zeros(s);
        const std::int64_t n = static_cast<std::int64_t>(
            z.w1.size() + z.b1.size() + z.w2.size() + z.b2.size() +
            z.w3.size() + z.b3.size());
        require(param_count(s) == n, "parameter count mismatch");
    }

    // Aligned error never exceeds unaligned error.
    for (int i = 0; i < 100; ++i) {
        const std::vector<Pose> a{random_pose(rng, 1000.0)};
        const std::vector<Pose> b{random_pose(rng, 1000.0)};
        require(pa_majpe(a, b) <= majpe(a, b) + 1e-9,
                "alignment increased the error");
    }

    // Rigid motions and pure scalings align to zero (small coordinates so
    // float joint storage cannot dominate the residual).
    double worst_rigid = 0.0;
    double worst_scale = 0.0;
    for (int i = 0; i < 20; ++i) {
        const Pose gt = random_pose(rng, 2.0);
        const auto rot = rotation_from_rng(rng);
        const double tx = rng.next_in(-1.0, 1.0);
        const double ty = rng.next_in(-1.0, 1.0);
        const double tz = rng.next_in(-1.0, 1.0);
        Pose moved(kJointCount);
        Pose scaled(kJointCount);
        const double sc = rng.next_in(0.5, 2.0);
        for (int j = 0; j < kJointCount; ++j) {
            const double px = gt.joints[static_cast<std::size_t>(j)][0];
            const double py = gt.joints[static_cast<std::size_t>(j)][1];
            const double pz = gt.joints[static_cast<std::size_t>(j)][2];
            moved.joints[static_cast<std::size_t>(j)] = {
                static_cast<float>(rot[0][0] * px + rot[0][1] * py +
                                   rot[0][2] * pz + tx),
                static_cast<float>(rot[1][0] * px + rot[1][1] * py +
                                   rot[1][2] * pz + ty),
                static_cast<float>(rot[2][0] * px + rot[2][1] * py +
                                   rot[2][2] * pz + tz)};
            scaled.joints[static_cast<std::size_t>(j)] = {
                static_cast<float>(sc * px), static_cast<float>(sc * py),
                static_cast<float>(sc * pz)};
        }
        worst_rigid =
            std::max(worst_rigid, pa_majpe({moved}, {gt}));
        worst_scale =
            std::max(worst_scale, pa_majpe({scaled}, {gt}));
    }
    require(worst_rigid <= 1e-6, "rigid residual " + num(worst_rigid) + " mm");
    require(worst_scale <= 1e-6, "scale residual " + num(worst_scale) + " mm");

    return "gradient rel " + num(worst) + ", rigid residual " +
           num(worst_rigid) + " mm";
}

// ---------------------------------------------------------------------------
// 7 and 8 share one 500-frame dataset and one trained regressor.

struct PoseDataset {
    std::vector<FeatureVector> train_pipe, test_pipe;
    std::vector<FeatureVector> train_base, test_base;
    std::vector<Pose> train_gt, test_gt;
};

const PoseDataset& pose_dataset() {
    static std::optional<PoseDataset> ds;
    if (ds) return *ds;
    PoseDataset out;
    const RadarConfig cfg = RadarConfig::basic();
    const Profile p = builtin_profile("balanced");
    for (int scene = 0; scene < 50; ++scene) {
        const SkeletonScene sc =
            SkeletonScene::from_seed(9000 + static_cast<std::uint64_t>(scene));
        const bool held_out = scene >= 40;
        for (int frame = 0; frame < 10; ++frame) {
            const RawCube raw = skeleton_raw_frame(
                sc, cfg, frame, 9000 + static_cast<std::uint64_t>(scene));
            const RadCube cube = fft_chain(raw, cfg);
            FrontEnd fe = extract_features(cube, p);
            const RadCube masked = apply_spatial_mask(cube, fe.spatial);
            const RealCube energy = collapse_doppler(masked);
            const BitGrid det = morph_open_close(ca_cfar_2d(energy, p.cfar));
            FeatureVector fb = featurize_detections(det, energy, 4, 4);
            (held_out ? out.test_pipe : out.train_pipe)
                .push_back(std::move(fe.features));
            (held_out ? out.test_base : out.train_base)
                .push_back(std::move(fb));
            (held_out ? out.test_gt : out.train_gt)
                .push_back(skeleton_pose(sc, frame));
        }
    }
    ds = std::move(out);
    return *ds;
}

struct Trained {
    MlpWeights weights;
    double held_out_majpe = 0.0;
};

Trained train_and_eval(const std::vector<FeatureVector>& train_x,
                       const std::vector<Pose>& train_y,
                       const std::vector<FeatureVector>& test_x,
                       const std::vector<Pose>& test_y) {
    MlpShape shape;
    shape.in = static_cast<int>(train_x.front().size());
    shape.out = 3 * kJointCount;
    TrainConfig tc;
    tc.epochs = 60;
    tc.batch = 32;
    tc.seed = 11;
    TrainResult tr = train_pose_regressor(train_x, train_y, shape, tc);
    std::vector<Pose> pred;
    pred.reserve(test_x.size());
    for (const auto& f : test_x) pred.push_back(prn_forward(tr.weights, f));
    return {std::move(tr.weights), majpe(pred, test_y)};
}

const Trained& trained_pipeline() {
    static std::optional<Trained> t;
    if (!t) {
        const PoseDataset& ds = pose_dataset();
        t = train_and_eval(ds.train_pipe, ds.train_gt, ds.test_pipe,
                           ds.test_gt);
    }
    return *t;
}

std::string c7_learning() {
    const auto t0 = std::chrono::steady_clock::now();
    const PoseDataset& ds = pose_dataset();
    require(ds.train_gt.size() == 400 && ds.test_gt.size() == 100,
            "dataset split is not 400/100");

    Pose mean_pose(kJointCount);
    {
        std::vector<double> acc(3 * static_cast<std::size_t>(kJointCount),
                                0.0);
        for (const Pose& p : ds.train_gt) {
            for (int j = 0; j < kJointCount; ++j) {
                for (int c = 0; c < 3; ++c) {
                    acc[static_cast<std::size_t>(3 * j + c)] +=
                        p.joints[static_cast<std::size_t>(j)]
                                [static_cast<std::size_t>(c)];
                }
            }
        }
        for (int j = 0; j < kJointCount; ++j) {
            for (int c = 0; c < 3; ++c) {
                mean_pose.joints[static_cast<std::size_t>(j)]
                                [static_cast<std::size_t>(c)] =
                    static_cast<float>(
                        acc[static_cast<std::size_t>(3 * j + c)] /
                        static_cast<double>(ds.train_gt.size()));
            }
        }
    }
    const double const_majpe =
        majpe(std::vector<Pose>(ds.test_gt.size(), mean_pose), ds.test_gt);
    const double model_majpe = trained_pipeline().held_out_majpe;
    const double secs = seconds_since(t0);
    require(model_majpe <= 0.5 * const_majpe,
            "held-out " + num(model_majpe) + " mm vs constant-pose " +
                num(const_majpe) + " mm");
    require(secs <= 300.0, "runtime " + num(secs) + " s exceeds 300 s");
    return "held-out " + num(model_majpe) + " mm vs constant-pose " +
           num(const_majpe) + " mm in " + num(secs) + " s";
}

std::string c8_baseline_direction() {
    const PoseDataset& ds = pose_dataset();
    const double pipe = trained_pipeline().held_out_majpe;
    const Trained base =
        train_and_eval(ds.train_base, ds.train_gt, ds.test_base, ds.test_gt);
    require(pipe <= base.held_out_majpe,
            "pipeline " + num(pipe) + " mm vs detection baseline " +
                num(base.held_out_majpe) + " mm");
    return "pipeline " + num(pipe) + " mm <= detection baseline " +
           num(base.held_out_majpe) + " mm";
}

// ---------------------------------------------------------------------------
// 9. Profile tables are pinned and their cost strictly increases.

std::string c9_profiles() {
    const AxisMaps axes = default_axes();
    struct Row {
        const char* name;
        double d0, d1, th0, th1, v0, v1, s0;
        int sc, sm;
    };
    const Row rows[5] = {
        {"ultra-light", 0.5, 2.0, -40.0, 40.0, 0.3, 2.0, 0.5, 3, 5},
        {"light", 0.4, 2.5, -50.0, 50.0, 0.2, 2.5, 0.4, 3, 5},
        {"balanced", 0.3, 3.0, -60.0, 60.0, 0.1, 3.0, 0.3, 5, 9},
        {"high-precision", 0.2, 3.5, -70.0, 70.0, 0.05, 3.5, 0.2, 7, 13},
        {"ultra-precision", 0.1, 4.0, -80.0, 80.0, 0.05, 4.0, 0.1, 7, 13},
    };
    std::string flops_list;
    std::int64_t prev = 0;
    for (int i = 0; i < 5; ++i) {
        require(std::string(kBuiltinProfileNames[i]) == rows[i].name,
                "profile name order changed");
        const Profile p = builtin_profile(rows[i].name);
        require(p.d_min == rows[i].d0 && p.d_max == rows[i].d1 &&
                    p.theta_min_deg == rows[i].th0 &&
                    p.theta_max_deg == rows[i].th1,
                std::string(rows[i].name) + ": region bounds off table");
        require(p.thresholds.v_min == rows[i].v0 &&
                    p.thresholds.v_max == rows[i].v1 &&
                    p.thresholds.sigma_min == rows[i].s0 &&
                    std::isinf(p.thresholds.sigma_max),
                std::string(rows[i].name) + ": motion thresholds off table");
        require(p.pool.s_c == rows[i].sc && p.pool.s_m == rows[i].sm,
                std::string(rows[i].name) + ": pool kernels off table");
        require(p.window_radius == 2 && p.grid == FeatureGrid{4, 4, 2} &&
                    p.h1 == 512 && p.h2 == 512 &&
                    p.cfar == CfarParams{1, 4, 1e-3},
                std::string(rows[i].name) + ": shared fields off table");
        require(parse_profile(emit_profile(p)) == p,
                std::string(rows[i].name) + ": emit/parse round trip broke");
        const std::int64_t fl = flop_estimate(p, axes);
        require(i == 0 || fl > prev,
                std::string(rows[i].name) + " flops " + num(double(fl)) +
                    " not above previous " + num(double(prev)));
        prev = fl;
        if (i) flops_list += " < ";
        flops_list += num(static_cast<double>(fl) / 1e6) + "M";
    }
    return flops_list;
}

// ---------------------------------------------------------------------------
// 10. One seed, two runs, identical artifacts.

std::string c10_determinism() {
    const RadarConfig cfg = RadarConfig::basic();
    const Profile p = builtin_profile("balanced");
    std::vector<std::string> blobs[2];
    std::vector<std::string> recs[2];
    std::vector<BitGrid> masks[2];
    for (int run = 0; run < 2; ++run) {
        const SkeletonScene sc = SkeletonScene::from_seed(777);
        for (int frame = 0; frame < 3; ++frame) {
            const RadCube cube =
                fft_chain(skeleton_raw_frame(sc, cfg, frame, 777), cfg);
            const std::string path = "acc_det_r" + std::to_string(run) +
                                     "_f" + std::to_string(frame) + ".radc";
            write_cube(path, cube);
            blobs[run].push_back(slurp(path));
            std::remove(path.c_str());

            FrontEnd fe = extract_features(cube, p);
            masks[run].push_back(fe.spatial);
            masks[run].push_back(fe.motion);
            Record rec;
            rec.add("record", std::string("feat"));
            rec.add("frame", static_cast<std::int64_t>(frame));
            std::string values;
            for (std::size_t i = 0; i < fe.features.size(); ++i) {
                if (i) values += ",";
                values += format_double(fe.features[i]);
            }
            rec.add("values", values);
            recs[run].push_back(emit_record(rec));
        }
    }
    require(!blobs[0].empty() && blobs[0][0].size() > 20, "cube file empty");
    require(blobs[0] == blobs[1], "cube bytes differ between runs");
    require(masks[0] == masks[1], "masks differ between runs");
    require(recs[0] == recs[1], "feature records differ between runs");
    return "3 frames, " + num(static_cast<double>(blobs[0][0].size())) +
           " cube bytes each";
}

// ---------------------------------------------------------------------------
// 11. Detector false-alarm statistics.

std::string c11_cfar_stats() {
    const int rows = 400;
    const int cols = 250;
    RealCube energy(1, rows, cols, 1);
    SplitMix64 rng(1111);
    for (auto& v : energy.data) v = -det_log(rng.next_open());
    const CfarParams params{1, 4, 1e-3};
    const BitGrid det = ca_cfar_2d(energy, params);
    const double rate = static_cast<double>(det.count()) /
                        (static_cast<double>(rows) * cols);
    require(rate >= 0.5e-3 && rate <= 2e-3,
            "false-alarm rate " + num(rate) + " outside [5e-4, 2e-3]");

    RealCube scaled = energy;
    for (auto& v : scaled.data) v *= 4.0;
    require(ca_cfar_2d(scaled, params) == det,
            "detections changed under a power-of-two rescale");
    return "empirical rate " + num(rate) + " on 1e5 cells";
}

struct Criterion {
    const char* label;
    std::string (*fn)();
};

}  // namespace

int main() {
    const Criterion table[] = {
        {"point-target peaks within one bin, exact on-grid", c1_point_targets},
        {"fft chain matches a brute-force dft; parseval holds", c2_fft_oracle},
        {"spatial gate: exact zeros outside, idempotent, energy non-increasing",
         c3_spatial_gate},
        {"motion gate keeps the mover, rejects static clutter", c4_motion_gate},
        {"pooling equals block means; trilinear closed form; dim chain",
         c5_fusion},
        {"regressor gradients, parameter count, alignment metrics",
         c6_regressor},
        {"held-out error at most half the constant-pose predictor",
         c7_learning},
        {"learned front end no worse than the detection baseline",
         c8_baseline_direction},
        {"profile cost strictly increases; builtin tables pinned",
         c9_profiles},
        {"one seed, two runs: identical cubes, masks, feature records",
         c10_determinism},
        {"cfar false-alarm rate within 2x of design; rescale invariant",
         c11_cfar_stats},
    };
    int failures = 0;
    for (int i = 0; i < 11; ++i) {
        std::string line;
        bool ok = true;
        try {
            const std::string detail = table[i].fn();
            line = detail.empty()
                       ? std::string(table[i].label)
                       : std::string(table[i].label) + " (" + detail + ")";
        } catch (const std::exception& e) {
            ok = false;
            line = std::string(table[i].label) + " - " + e.what();
        }
        std::printf("[%s] %2d %s\n", ok ? "PASS" : "FAIL", i + 1, line.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    std::printf("%d/11 criteria passed\n", 11 - failures);
    return failures;
}
