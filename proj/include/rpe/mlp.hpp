#pragma once

// Pose regression network: a 3-layer perceptron (ReLU, ReLU, linear)
// mapping a feature vector to J*3 joint coordinates in millimeters.
// Everything runs in double and single-threaded with a fixed reduction
// order, so training is reproducible from (dataset, shape, seed).

#include <cstdint>
#include <string>
#include <vector>

#include "rpe/hmsf.hpp"
#include "rpe/tensor.hpp"

namespace rpe {

struct MlpShape {
    int in = 0;
    int h1 = 512;
    int h2 = 512;
    int out = 3 * kJointCount;

    bool operator==(const MlpShape&) const = default;
};

// (in*h1 + h1) + (h1*h2 + h2) + (h2*out + out)
std::int64_t param_count(const MlpShape& s);

struct MlpWeights {
    MlpShape shape;
    // Row-major [rows][cols] = [layer output][layer input].
    std::vector<double> w1, b1, w2, b2, w3, b3;

    // Zeros, sized for the shape.
    static MlpWeights zeros(const MlpShape& s);
    // Weights uniform in +-sqrt(6 / (fan_in + fan_out)), biases zero.
    static MlpWeights glorot(const MlpShape& s, std::uint64_t seed);
};

// x.size() must equal shape.in.
std::vector<double> mlp_forward(const MlpWeights& w,
                                const std::vector<double>& x);

// Feature vector in, pose out (rounded to float mm).  shape.out must be
// 3 * joints.
Pose prn_forward(const MlpWeights& w, const FeatureVector& f);

struct MlpGrads {
    std::vector<double> w1, b1, w2, b2, w3, b3;
    static MlpGrads zeros(const MlpShape& s);
};

// Loss is L = sum((o - t)^2) / (2 * out).  Accumulates exact gradients
// (ReLU subgradient 0 at 0) into g and returns the loss.
double mlp_backward(const MlpWeights& w, const std::vector<double>& x,
                    const std::vector<double>& target, MlpGrads& g);

struct TrainConfig {
    int epochs = 80;
    int batch = 32;
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    std::uint64_t seed = 1;
};

struct TrainResult {
    MlpWeights weights;
    std::vector<double> epoch_loss;  // mean per-sample loss, one per epoch
};

// Adam over shuffled mini-batches.  Gradients are averaged over each batch
// in index order; the shuffle stream is SplitMix64(cfg.seed).  Throws
// DivergenceError if the loss goes non-finite.
TrainResult train_mlp(const std::vector<FeatureVector>& features,
                      const std::vector<Pose>& targets, const MlpShape& shape,
                      const TrainConfig& cfg);

// Practical training harness on top of train_mlp.  Raw feature magnitudes
// (pooled cube energies, ~1e-3) and raw targets (millimeters, ~1e3) are too
// far apart for plain Adam to bridge, so this standardizes features per
// dimension, regresses the meter-scale residual from the mean training
// pose, then folds both affine maps back into layers 1 and 3.  The
// returned weights map raw features to millimeter joints; epoch_loss is in
// the normalized training space.
TrainResult train_pose_regressor(const std::vector<FeatureVector>& features,
                                 const std::vector<Pose>& targets,
                                 const MlpShape& shape, const TrainConfig& cfg);

// Checkpoint file ("PRNW"): magic[4] | version u32 | in u32 | h1 u32 |
// h2 u32 | out u32 | w1 b1 w2 b2 w3 b3 as row-major float32 LE.
void write_weights(const std::string& path, const MlpWeights& w);
MlpWeights read_weights(const std::string& path);

}  // namespace rpe
