// Command-line surface for the whole pipeline: synthesize datasets, turn
// cubes into feature records, train and evaluate the regressor, benchmark
// per-stage latency, and dump the built-in profiles.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rpe/errors.hpp"
#include "rpe/io.hpp"
#include "rpe/metrics.hpp"
#include "rpe/mlp.hpp"
#include "rpe/pipeline.hpp"
#include "rpe/profile.hpp"
#include "rpe/sim.hpp"

namespace fs = std::filesystem;
using namespace rpe;

namespace {

std::string frame_name(int i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "cube_%05d.radc", i);
    return std::string(buf);
}

std::vector<std::string> cube_files(const std::string& dir) {
    std::vector<std::string> paths;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".radc") {
            paths.push_back(entry.path().string());
        }
    }
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) {
        throw IoError("no .radc files under " + dir);
    }
    return paths;
}

std::string bits_string(const BitGrid& g) {
    std::string s;
    s.reserve(g.bits.size());
    for (auto b : g.bits) s.push_back(b ? '1' : '0');
    return s;
}

std::string join_doubles(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s.push_back(' ');
        s += format_double(v[i]);
    }
    return s;
}

void write_lines(const std::string& path, const std::vector<Record>& recs) {
    if (path.empty() || path == "-") {
        for (const Record& r : recs) std::cout << emit_record(r) << "\n";
    } else {
        write_records(path, recs);
    }
}

int cmd_simulate(std::uint64_t seed, int frames, const std::string& out) {
    const RadarConfig cfg = RadarConfig::basic();
    const SkeletonScene scene = SkeletonScene::from_seed(seed);
    fs::create_directories(out);
    for (int i = 0; i < frames; ++i) {
        const RawCube raw = skeleton_raw_frame(scene, cfg, i, seed);
        const RadCube cube = fft_chain(raw, cfg);
        write_cube((fs::path(out) / frame_name(i)).string(), cube);
    }
    write_poses((fs::path(out) / "poses.pose").string(),
                skeleton_poses(scene, frames));
    std::cout << "wrote " << frames << " frames to " << out << "\n";
    return 0;
}

int cmd_preprocess(const std::string& dir, const Profile& profile,
                   const PipelineOptions& opts, const std::string& out) {
    const RadarConfig cfg = RadarConfig::basic();
    std::vector<Record> recs;
    int frame = 0;
    for (const std::string& path : cube_files(dir)) {
        const RadCube cube = read_cube(path, cfg);
        const FrontEnd fe = extract_features(cube, profile, opts);
        Record rec;
        rec.add("record", std::string("features"));
        rec.add("frame", static_cast<std::int64_t>(frame));
        rec.add("profile", profile.name);
        rec.add("n", static_cast<std::int64_t>(fe.features.size()));
        rec.add("values", join_doubles(fe.features));
        rec.add("mu_g", fe.descriptors.mu_g);
        rec.add("sigma_g", fe.descriptors.sigma_g);
        rec.add("vmax_g", fe.descriptors.vmax_g);
        rec.add("spatial", bits_string(fe.spatial));
        rec.add("motion", bits_string(fe.motion));
        recs.push_back(std::move(rec));
        ++frame;
    }
    write_lines(out, recs);
    return 0;
}

struct Dataset {
    std::vector<FeatureVector> features;
    std::vector<Pose> poses;
};

Dataset load_dataset(const std::string& dir, const Profile& profile,
                     const PipelineOptions& opts) {
    const RadarConfig cfg = RadarConfig::basic();
    Dataset ds;
    for (const std::string& path : cube_files(dir)) {
        const RadCube cube = read_cube(path, cfg);
        ds.features.push_back(extract_features(cube, profile, opts).features);
    }
    ds.poses = read_poses((fs::path(dir) / "poses.pose").string());
    if (ds.poses.size() != ds.features.size()) {
        throw DimensionError("pose count does not match cube count");
    }
    return ds;
}

int cmd_train(const std::string& dir, const Profile& profile,
              const PipelineOptions& opts, std::uint64_t seed, int epochs,
              const std::string& out) {
    const Dataset ds = load_dataset(dir, profile, opts);
    MlpShape shape;
    shape.in = static_cast<int>(ds.features.front().size());
    shape.h1 = profile.h1;
    shape.h2 = profile.h2;
    shape.out = 3 * ds.poses.front().joint_count();
    TrainConfig tc;
    tc.seed = seed;
    if (epochs > 0) tc.epochs = epochs;
    const TrainResult result =
        train_pose_regressor(ds.features, ds.poses, shape, tc);
    write_weights(out, result.weights);
    std::cout << "epochs=" << result.epoch_loss.size()
              << " final_loss=" << format_double(result.epoch_loss.back())
              << " params=" << param_count(shape) << " -> " << out << "\n";
    return 0;
}

int cmd_eval(const std::string& dir, const std::string& weights_path,
             const Profile& profile, const PipelineOptions& opts,
             const std::string& out) {
    const Dataset ds = load_dataset(dir, profile, opts);
    const MlpWeights w = read_weights(weights_path);
    std::vector<Pose> pred;
    pred.reserve(ds.features.size());
    for (const FeatureVector& f : ds.features) {
        pred.push_back(prn_forward(w, f));
    }
    std::vector<Record> recs;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        Record rec;
        rec.add("record", std::string("eval"));
        rec.add("frame", static_cast<std::int64_t>(i));
        rec.add("majpe", frame_majpe(pred[i], ds.poses[i]));
        recs.push_back(std::move(rec));
    }
    Record summary;
    summary.add("record", std::string("eval_summary"));
    summary.add("frames", static_cast<std::int64_t>(pred.size()));
    summary.add("majpe", majpe(pred, ds.poses));
    summary.add("pa_majpe", pa_majpe(pred, ds.poses));
    recs.push_back(std::move(summary));
    write_lines(out, recs);
    return 0;
}

int cmd_bench(const std::string& dir, const Profile& profile,
              const PipelineOptions& opts, const std::string& weights_path,
              std::uint64_t seed, int reps, const std::string& out) {
    const RadarConfig cfg = RadarConfig::basic();
    const std::vector<std::string> paths = cube_files(dir);
    MlpWeights w;
    if (!weights_path.empty()) {
        w = read_weights(weights_path);
    } else {
        const RadCube first = read_cube(paths.front(), cfg);
        const FrontEnd fe = extract_features(first, profile, opts);
        MlpShape shape;
        shape.in = static_cast<int>(fe.features.size());
        shape.h1 = profile.h1;
        shape.h2 = profile.h2;
        w = MlpWeights::glorot(shape, seed);
    }
    const BenchResult result = bench(paths, profile, w, cfg, reps, opts);
    write_lines(out, bench_records(result, profile.name));
    return 0;
}

int cmd_profiles(const std::string& out) {
    if (out.empty()) {
        for (const char* name : kBuiltinProfileNames) {
            std::cout << emit_profile(builtin_profile(name)) << "\n";
        }
        return 0;
    }
    fs::create_directories(out);
    for (const char* name : kBuiltinProfileNames) {
        const fs::path path = fs::path(out) / (std::string(name) + ".profile");
        std::ofstream f(path, std::ios::binary);
        if (!f) throw IoError("cannot write " + path.string());
        f << emit_profile(builtin_profile(name));
    }
    std::cout << "wrote 5 profiles to " << out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mmWave human pose estimation pipeline"};
    app.require_subcommand(1);

    std::string profile_arg = "balanced";
    std::string out;
    std::string dir;
    std::string weights_path;
    std::uint64_t seed = 1;
    int frames = 100;
    int reps = 5;
    int epochs = 0;
    PipelineOptions opts;

    auto* sim = app.add_subcommand("simulate", "synthesize a walking dataset");
    sim->add_option("--seed", seed, "scene and noise seed");
    sim->add_option("--frames", frames, "number of frames");
    sim->add_option("--out", out, "output directory")->required();

    auto* pre = app.add_subcommand("preprocess", "cubes -> feature records");
    pre->add_option("dir", dir, "dataset directory")->required();
    pre->add_option("--profile", profile_arg, "builtin name or profile file");
    pre->add_option("--out", out, "records file ('-' = stdout)");
    pre->add_flag("--single-cell-pooling", opts.single_cell_pooling,
                  "pool each channel to one cell");

    auto* tr = app.add_subcommand("train", "train the pose regressor");
    tr->add_option("dir", dir, "dataset directory")->required();
    tr->add_option("--profile", profile_arg, "builtin name or profile file");
    tr->add_option("--seed", seed, "init and shuffle seed");
    tr->add_option("--epochs", epochs, "override epoch count");
    tr->add_option("--out", out, "weights file")->required();
    tr->add_flag("--single-cell-pooling", opts.single_cell_pooling,
                 "pool each channel to one cell");

    auto* ev = app.add_subcommand("eval", "per-frame pose error records");
    ev->add_option("dir", dir, "dataset directory")->required();
    ev->add_option("weights", weights_path, "trained weights")->required();
    ev->add_option("--profile", profile_arg, "builtin name or profile file");
    ev->add_option("--out", out, "records file ('-' = stdout)");
    ev->add_flag("--single-cell-pooling", opts.single_cell_pooling,
                 "pool each channel to one cell");

    auto* be = app.add_subcommand("bench", "per-stage latency over a dataset");
    be->add_option("dir", dir, "dataset directory")->required();
    be->add_option("--profile", profile_arg, "builtin name or profile file");
    be->add_option("--weights", weights_path, "weights (default: seeded init)");
    be->add_option("--seed", seed, "seed for the default weights");
    be->add_option("--reps", reps, "timed repetitions");
    be->add_option("--out", out, "records file ('-' = stdout)");
    be->add_flag("--single-cell-pooling", opts.single_cell_pooling,
                 "pool each channel to one cell");

    auto* pr = app.add_subcommand("profiles", "emit the five builtin profiles");
    pr->add_option("--out", out, "directory for .profile files");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(seed, frames, out);
        const Profile profile = load_profile(profile_arg);
        if (pre->parsed()) return cmd_preprocess(dir, profile, opts, out);
        if (tr->parsed()) return cmd_train(dir, profile, opts, seed, epochs, out);
        if (ev->parsed()) return cmd_eval(dir, weights_path, profile, opts, out);
        if (be->parsed()) {
            return cmd_bench(dir, profile, opts, weights_path, seed, reps, out);
        }
        if (pr->parsed()) return cmd_profiles(out);
    } catch (const std::exception& e) {
        std::cerr << "radarpose: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
