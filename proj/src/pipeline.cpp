#include "rpe/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "rpe/errors.hpp"

namespace rpe {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_between(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

struct StageTimes {
    double ssp = 0;
    double mcp = 0;
    double hmsf = 0;
    double prn = 0;
    double io = 0;

    double total() const { return ssp + mcp + hmsf + prn + io; }
};

FeatureGrid effective_grid(const Profile& p, const PipelineOptions& opts) {
    return opts.single_cell_pooling ? FeatureGrid{1, 1, 1} : p.grid;
}

// The one front-end code path.  run_pipeline and extract_features both land
// here, so "pipeline equals stages called by hand" holds by construction.
FrontEnd front_end(const RadCube& cube, const Profile& p,
                   const PipelineOptions& opts, StageTimes& times) {
    FrontEnd out;

    const auto t0 = Clock::now();
    out.spatial = build_spatial_mask(p.spatial_bounds(), cube.axes);
    const RadCube masked = apply_spatial_mask(cube, out.spatial);

    const auto t1 = Clock::now();
    const VelocityField field = dominant_doppler(masked);
    const LocalStats stats = local_stats(field, p.window_radius);
    out.motion = doppler_mask(field, stats, p.thresholds);
    for (int r = 0; r < out.motion.rows; ++r) {
        for (int a = 0; a < out.motion.cols; ++a) {
            out.motion.at(r, a) =
                out.motion.at(r, a) & out.spatial.at(r, a);
        }
    }
    const RadCube gated = apply_doppler_mask(masked, out.motion);
    out.descriptors = global_descriptors(field, out.motion);

    const auto t2 = Clock::now();
    const RealCube mag = magnitude(gated);
    const RealCube coarse = avg_pool3(mag, p.pool.s_c);
    const RealCube medium = avg_pool3(mag, p.pool.s_m);
    const RealCube coarse_up = upsample_trilinear(coarse, mag.r, mag.a, mag.d);
    const RealCube medium_up = upsample_trilinear(medium, mag.r, mag.a, mag.d);
    const RealCube fused = fuse(coarse_up, medium_up, mag);
    out.features = global_features(fused, out.descriptors,
                                   effective_grid(p, opts));

    const auto t3 = Clock::now();
    times.ssp += seconds_between(t0, t1);
    times.mcp += seconds_between(t1, t2);
    times.hmsf += seconds_between(t2, t3);
    return out;
}

// Covered input cells of one pooling pass: full blocks only, per-axis
// kernel clamp as in avg_pool3.
std::int64_t covered3(int r, int a, int d, Kernel3 k) {
    const auto one = [](int dim, int kk) -> std::int64_t {
        kk = std::max(1, std::min(kk, dim));
        return static_cast<std::int64_t>(dim / kk) * kk;
    };
    return one(r, k.kr) * one(a, k.ka) * one(d, k.kd);
}

MlpShape profile_shape(const Profile& p, const FeatureGrid& g) {
    MlpShape s;
    s.in = feature_length(3, g);
    s.h1 = p.h1;
    s.h2 = p.h2;
    s.out = 3 * kJointCount;
    return s;
}

StageReport make_report(const StageTimes& t, const FlopBreakdown& f,
                        const Profile& p, int r, int a, int d,
                        const PipelineOptions& opts) {
    StageReport rep;
    rep.total_seconds = t.total();
    const double sec[5] = {t.ssp, t.mcp, t.hmsf, t.prn, t.io};
    const std::int64_t flops[5] = {f.ssp, f.mcp, f.hmsf, f.prn, 0};
    for (int i = 0; i < 5; ++i) {
        StageStat s;
        s.name = kStageNames[i];
        s.seconds = sec[i];
        s.pct = rep.total_seconds > 0 ? 100.0 * sec[i] / rep.total_seconds
                                      : 20.0;
        s.flops = flops[i];
        s.bytes = stage_bytes(s.name, p, r, a, d, opts);
        rep.stages.push_back(std::move(s));
    }
    return rep;
}

}  // namespace

const char* const kStageNames[5] = {"ssp", "mcp", "hmsf", "prn", "io"};

const StageStat& StageReport::stage(const std::string& name) const {
    for (const StageStat& s : stages) {
        if (s.name == name) return s;
    }
    throw ConfigError("no stage named '" + name + "' in report");
}

FrontEnd extract_features(const RadCube& cube, const Profile& profile,
                          const PipelineOptions& opts) {
    StageTimes times;
    return front_end(cube, profile, opts, times);
}

PipelineOutput run_pipeline(const RadCube& cube, const Profile& profile,
                            const MlpWeights& weights,
                            const PipelineOptions& opts) {
    PipelineOutput out;
    StageTimes times;
    out.front = front_end(cube, profile, opts, times);

    const auto t0 = Clock::now();
    out.pose = prn_forward(weights, out.front.features);
    times.prn += seconds_between(t0, Clock::now());

    const FlopBreakdown f = flop_breakdown(profile, cube.axes, opts);
    out.report = make_report(times, f, profile, cube.r, cube.a, cube.d, opts);
    return out;
}

FlopBreakdown flop_breakdown(const Profile& profile, const AxisMaps& axes,
                             const PipelineOptions& opts) {
    const std::int64_t r = axes.range_bins();
    const std::int64_t a = axes.angle_bins();
    const std::int64_t d = axes.doppler_bins();
    const SpatialMask mask = build_spatial_mask(profile.spatial_bounds(), axes);
    const std::int64_t roi = mask.count();
    const std::int64_t w = profile.window_radius;
    const std::int64_t win = (2 * w + 1) * (2 * w + 1);

    FlopBreakdown f;
    f.ssp = r * a + 2 * roi * d;
    f.mcp = 3 * roi * d + 2 * roi * win + 4 * roi + 3 * roi;

    const int ri = static_cast<int>(r);
    const int ai = static_cast<int>(a);
    const int di = static_cast<int>(d);
    const std::int64_t pooled =
        covered3(ri, ai, di, Kernel3{profile.pool.s_c, profile.pool.s_c,
                                     profile.pool.s_c}) +
        covered3(ri, ai, di, Kernel3{profile.pool.s_m, profile.pool.s_m,
                                     profile.pool.s_m});
    const FeatureGrid g = effective_grid(profile, opts);
    const Kernel3 gk{ri / std::max(1, g.g_r), ai / std::max(1, g.g_a),
                     di / std::max(1, g.g_d)};
    f.hmsf = 4 * roi * d + 2 * pooled + 16 * r * a * d * 2 +
             2 * 3 * covered3(ri, ai, di, gk);

    f.prn = 2 * param_count(profile_shape(profile, g));
    return f;
}

std::int64_t flop_estimate(const Profile& profile, const AxisMaps& axes,
                           const PipelineOptions& opts) {
    return flop_breakdown(profile, axes, opts).total();
}

std::int64_t stage_bytes(const std::string& stage, const Profile& profile,
                         int r, int a, int d, const PipelineOptions& opts) {
    const std::int64_t plane = static_cast<std::int64_t>(r) * a;
    const std::int64_t cells = plane * d;
    const std::int64_t cube_b = cells * 8;  // complex<float>
    const std::int64_t real_b = cells * 8;  // double
    if (stage == "io") {
        return 20 + cube_b;  // header + payload
    }
    if (stage == "ssp") {
        return 2 * cube_b + plane;  // in, out, mask
    }
    if (stage == "mcp") {
        // masked + gated cubes, velocity field (v + k), stats (mu + sigma2),
        // doppler mask
        return 2 * cube_b + plane * (8 + 4) + plane * 16 + plane;
    }
    if (stage == "hmsf") {
        const auto pooled_cells = [&](int k) {
            const std::int64_t pr = r / std::max(1, std::min(k, r));
            const std::int64_t pa = a / std::max(1, std::min(k, a));
            const std::int64_t pd = d / std::max(1, std::min(k, d));
            return pr * pa * pd;
        };
        const FeatureGrid g = effective_grid(profile, opts);
        const std::int64_t features = feature_length(3, g);
        // gated cube, magnitude, two pooled pyramids, two upsampled copies,
        // fused stack, feature vector
        return cube_b + real_b +
               (pooled_cells(profile.pool.s_c) + pooled_cells(profile.pool.s_m)) * 8 +
               2 * real_b + 3 * real_b + features * 8;
    }
    if (stage == "prn") {
        const FeatureGrid g = effective_grid(profile, opts);
        const MlpShape s = profile_shape(profile, g);
        return param_count(s) * 8 +
               static_cast<std::int64_t>(s.in + s.h1 + s.h2 + s.out) * 8;
    }
    throw ConfigError("no stage named '" + stage + "'");
}

RealCube build_pseudo_rad(const RealCube& h_ra, const RealCube& h_rd) {
    if (h_ra.c != 1 || h_ra.d != 1) {
        throw DimensionError("range-angle map must be (1, R, A, 1)");
    }
    if (h_rd.c != 1 || h_rd.a != 1) {
        throw DimensionError("range-doppler map must be (1, R, 1, D)");
    }
    if (h_ra.r != h_rd.r) {
        throw DimensionError("range axes disagree");
    }
    for (double v : h_ra.data) {
        if (v < 0) throw ConfigError("negative cell in range-angle map");
    }
    for (double v : h_rd.data) {
        if (v < 0) throw ConfigError("negative cell in range-doppler map");
    }

    RealCube out(1, h_ra.r, h_ra.a, h_rd.d);
    for (int r = 0; r < h_ra.r; ++r) {
        double row_sum = 0;
        for (int d = 0; d < h_rd.d; ++d) row_sum += h_rd.at(0, r, 0, d);
        if (row_sum == 0) continue;  // zero row -> zero slab
        for (int a = 0; a < h_ra.a; ++a) {
            const double ra = h_ra.at(0, r, a, 0);
            for (int d = 0; d < h_rd.d; ++d) {
                out.at(0, r, a, d) = ra * (h_rd.at(0, r, 0, d) / row_sum);
            }
        }
    }
    return out;
}

BenchResult bench(const std::vector<std::string>& cube_paths,
                  const Profile& profile, const MlpWeights& weights,
                  const RadarConfig& cfg, int repetitions,
                  const PipelineOptions& opts) {
    if (cube_paths.empty()) {
        throw ConfigError("bench needs at least one cube file");
    }
    if (repetitions < 1) {
        throw ConfigError("bench needs at least one repetition");
    }

    // Warm-up pass, untimed.
    {
        StageTimes scratch;
        for (const std::string& path : cube_paths) {
            const RadCube cube = read_cube(path, cfg);
            FrontEnd fe = front_end(cube, profile, opts, scratch);
            (void)prn_forward(weights, fe.features);
        }
    }

    std::vector<StageTimes> reps(static_cast<std::size_t>(repetitions));
    int first_r = 0, first_a = 0, first_d = 0;
    AxisMaps first_axes;
    for (int rep = 0; rep < repetitions; ++rep) {
        StageTimes& t = reps[static_cast<std::size_t>(rep)];
        for (const std::string& path : cube_paths) {
            const auto t0 = Clock::now();
            const RadCube cube = read_cube(path, cfg);
            t.io += seconds_between(t0, Clock::now());
            if (rep == 0 && first_r == 0) {
                first_r = cube.r;
                first_a = cube.a;
                first_d = cube.d;
                first_axes = cube.axes;
            }
            FrontEnd fe = front_end(cube, profile, opts, t);
            const auto t1 = Clock::now();
            (void)prn_forward(weights, fe.features);
            t.prn += seconds_between(t1, Clock::now());
        }
    }

    const auto stage_seconds = [](const StageTimes& t, int i) {
        const double sec[5] = {t.ssp, t.mcp, t.hmsf, t.prn, t.io};
        return sec[i];
    };

    const FlopBreakdown flops = flop_breakdown(profile, first_axes, opts);

    BenchResult out;
    out.repetitions = repetitions;
    out.frames = static_cast<int>(cube_paths.size());
    // Latencies are reported per frame: each repetition's stage time is the
    // total over the pass divided by the frame count.
    const double inv_frames = 1.0 / out.frames;
    double mean_total = 0;
    for (const StageTimes& t : reps) mean_total += t.total() * inv_frames;
    mean_total /= repetitions;
    out.mean_total_ms = mean_total * 1e3;

    const std::int64_t stage_flops[5] = {flops.ssp, flops.mcp, flops.hmsf,
                                         flops.prn, 0};
    for (int i = 0; i < 5; ++i) {
        BenchStage s;
        s.name = kStageNames[i];
        double mean = 0;
        for (const StageTimes& t : reps) mean += stage_seconds(t, i) * inv_frames;
        mean /= repetitions;
        double var = 0;
        for (const StageTimes& t : reps) {
            const double dev = stage_seconds(t, i) * inv_frames - mean;
            var += dev * dev;
        }
        var /= repetitions;
        s.mean_ms = mean * 1e3;
        s.std_ms = std::sqrt(var) * 1e3;
        s.pct = mean_total > 0 ? 100.0 * mean / mean_total : 20.0;
        s.flops = stage_flops[i];
        s.bytes = stage_bytes(s.name, profile, first_r, first_a, first_d, opts);
        out.stages.push_back(std::move(s));
    }
    return out;
}

std::vector<Record> bench_records(const BenchResult& r,
                                  const std::string& profile_name) {
    std::vector<Record> recs;
    for (const BenchStage& s : r.stages) {
        Record rec;
        rec.add("record", std::string("bench"));
        rec.add("profile", profile_name);
        rec.add("stage", s.name);
        rec.add("reps", static_cast<std::int64_t>(r.repetitions));
        rec.add("frames", static_cast<std::int64_t>(r.frames));
        rec.add("mean_ms", s.mean_ms);
        rec.add("std_ms", s.std_ms);
        rec.add("pct", s.pct);
        rec.add("flops", s.flops);
        rec.add("bytes", s.bytes);
        recs.push_back(std::move(rec));
    }
    Record total;
    total.add("record", std::string("bench_total"));
    total.add("profile", profile_name);
    total.add("reps", static_cast<std::int64_t>(r.repetitions));
    total.add("frames", static_cast<std::int64_t>(r.frames));
    total.add("mean_ms", r.mean_total_ms);
    recs.push_back(std::move(total));
    return recs;
}

}  // namespace rpe
