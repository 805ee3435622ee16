#include "rpe/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rpe/det_math.hpp"
#include "rpe/detail/bytes.hpp"
#include "rpe/errors.hpp"

namespace rpe {
namespace {

constexpr std::uint32_t kWeightsVersion = 1;

void check_shape(const MlpShape& s) {
    if (s.in < 1 || s.h1 < 1 || s.h2 < 1 || s.out < 1) {
        throw ConfigError("mlp: all shape dims must be >= 1");
    }
}

// y = W x + b, W row-major [rows][cols].
void affine(const std::vector<double>& w, const std::vector<double>& b,
            const std::vector<double>& x, std::vector<double>& y, int rows,
            int cols) {
    y.resize(static_cast<std::size_t>(rows));
    for (int r = 0; r < rows; ++r) {
        const double* wr = w.data() + static_cast<std::size_t>(r) * cols;
        double acc = b[r];
        for (int c = 0; c < cols; ++c) {
            acc += wr[c] * x[c];
        }
        y[r] = acc;
    }
}

void relu_inplace(std::vector<double>& v) {
    for (double& x : v) {
        x = x > 0.0 ? x : 0.0;
    }
}

struct ForwardTrace {
    std::vector<double> a1;  // post-ReLU
    std::vector<double> a2;
    std::vector<double> out;
};

void forward_trace(const MlpWeights& w, const std::vector<double>& x,
                   ForwardTrace& t) {
    const MlpShape& s = w.shape;
    affine(w.w1, w.b1, x, t.a1, s.h1, s.in);
    relu_inplace(t.a1);
    affine(w.w2, w.b2, t.a1, t.a2, s.h2, s.h1);
    relu_inplace(t.a2);
    affine(w.w3, w.b3, t.a2, t.out, s.out, s.h2);
}

}  // namespace

std::int64_t param_count(const MlpShape& s) {
    const auto in = static_cast<std::int64_t>(s.in);
    const auto h1 = static_cast<std::int64_t>(s.h1);
    const auto h2 = static_cast<std::int64_t>(s.h2);
    const auto out = static_cast<std::int64_t>(s.out);
    return (in * h1 + h1) + (h1 * h2 + h2) + (h2 * out + out);
}

MlpWeights MlpWeights::zeros(const MlpShape& s) {
    check_shape(s);
    MlpWeights w;
    w.shape = s;
    w.w1.assign(static_cast<std::size_t>(s.h1) * s.in, 0.0);
    w.b1.assign(static_cast<std::size_t>(s.h1), 0.0);
    w.w2.assign(static_cast<std::size_t>(s.h2) * s.h1, 0.0);
    w.b2.assign(static_cast<std::size_t>(s.h2), 0.0);
    w.w3.assign(static_cast<std::size_t>(s.out) * s.h2, 0.0);
    w.b3.assign(static_cast<std::size_t>(s.out), 0.0);
    return w;
}

MlpWeights MlpWeights::glorot(const MlpShape& s, std::uint64_t seed) {
    MlpWeights w = zeros(s);
    SplitMix64 rng(seed);
    const auto fill = [&rng](std::vector<double>& v, int fan_in, int fan_out) {
        const double bound =
            std::sqrt(6.0 / (static_cast<double>(fan_in) + fan_out));
        for (double& x : v) {
            x = rng.next_in(-bound, bound);
        }
    };
    fill(w.w1, s.in, s.h1);
    fill(w.w2, s.h1, s.h2);
    fill(w.w3, s.h2, s.out);
    return w;
}

std::vector<double> mlp_forward(const MlpWeights& w,
                                const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != w.shape.in) {
        throw DimensionError("mlp_forward: input length does not match shape");
    }
    ForwardTrace t;
    forward_trace(w, x, t);
    return t.out;
}

Pose prn_forward(const MlpWeights& w, const FeatureVector& f) {
    if (w.shape.out % 3 != 0) {
        throw DimensionError("prn_forward: output dim must be 3 * joints");
    }
    const std::vector<double> out = mlp_forward(w, f);
    Pose p(w.shape.out / 3);
    for (int j = 0; j < p.joint_count(); ++j) {
        p.joints[j] = {static_cast<float>(out[3 * j + 0]),
                       static_cast<float>(out[3 * j + 1]),
                       static_cast<float>(out[3 * j + 2])};
    }
    return p;
}

MlpGrads MlpGrads::zeros(const MlpShape& s) {
    MlpGrads g;
    g.w1.assign(static_cast<std::size_t>(s.h1) * s.in, 0.0);
    g.b1.assign(static_cast<std::size_t>(s.h1), 0.0);
    g.w2.assign(static_cast<std::size_t>(s.h2) * s.h1, 0.0);
    g.b2.assign(static_cast<std::size_t>(s.h2), 0.0);
    g.w3.assign(static_cast<std::size_t>(s.out) * s.h2, 0.0);
    g.b3.assign(static_cast<std::size_t>(s.out), 0.0);
    return g;
}

double mlp_backward(const MlpWeights& w, const std::vector<double>& x,
                    const std::vector<double>& target, MlpGrads& g) {
    const MlpShape& s = w.shape;
    if (static_cast<int>(x.size()) != s.in ||
        static_cast<int>(target.size()) != s.out) {
        throw DimensionError("mlp_backward: input/target length mismatch");
    }
    ForwardTrace t;
    forward_trace(w, x, t);

    double loss = 0.0;
    std::vector<double> d3(s.out);
    for (int i = 0; i < s.out; ++i) {
        const double e = t.out[i] - target[i];
        loss += e * e;
        d3[i] = e / s.out;  // d(loss)/d(out_i) for loss = sum(e^2) / (2*out)
    }
    loss /= 2.0 * s.out;

    // Layer 3.
    for (int r = 0; r < s.out; ++r) {
        double* gw = g.w3.data() + static_cast<std::size_t>(r) * s.h2;
        for (int c = 0; c < s.h2; ++c) {
            gw[c] += d3[r] * t.a2[c];
        }
        g.b3[r] += d3[r];
    }
    // d2 = (W3^T d3) * relu'(a2); relu' is 0 at 0.
    std::vector<double> d2(s.h2, 0.0);
    for (int r = 0; r < s.out; ++r) {
        const double* wr = w.w3.data() + static_cast<std::size_t>(r) * s.h2;
        for (int c = 0; c < s.h2; ++c) {
            d2[c] += wr[c] * d3[r];
        }
    }
    for (int c = 0; c < s.h2; ++c) {
        if (t.a2[c] <= 0.0) d2[c] = 0.0;
    }
    // Layer 2.
    for (int r = 0; r < s.h2; ++r) {
        double* gw = g.w2.data() + static_cast<std::size_t>(r) * s.h1;
        for (int c = 0; c < s.h1; ++c) {
            gw[c] += d2[r] * t.a1[c];
        }
        g.b2[r] += d2[r];
    }
    std::vector<double> d1(s.h1, 0.0);
    for (int r = 0; r < s.h2; ++r) {
        const double* wr = w.w2.data() + static_cast<std::size_t>(r) * s.h1;
        for (int c = 0; c < s.h1; ++c) {
            d1[c] += wr[c] * d2[r];
        }
    }
    for (int c = 0; c < s.h1; ++c) {
        if (t.a1[c] <= 0.0) d1[c] = 0.0;
    }
    // Layer 1.
    for (int r = 0; r < s.h1; ++r) {
        double* gw = g.w1.data() + static_cast<std::size_t>(r) * s.in;
        for (int c = 0; c < s.in; ++c) {
            gw[c] += d1[r] * x[c];
        }
        g.b1[r] += d1[r];
    }
    return loss;
}

namespace {

struct AdamState {
    MlpGrads m;
    MlpGrads v;
    double beta1_t = 1.0;  // beta1^t, kept incrementally
    double beta2_t = 1.0;
};

void adam_update(std::vector<double>& w, const std::vector<double>& g,
                 std::vector<double>& m, std::vector<double>& v,
                 const TrainConfig& cfg, double bias1, double bias2) {
    const std::size_t n = w.size();
    for (std::size_t i = 0; i < n; ++i) {
        m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * g[i];
        v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * g[i] * g[i];
        const double mh = m[i] / bias1;
        const double vh = v[i] / bias2;
        w[i] -= cfg.lr * mh / (std::sqrt(vh) + cfg.eps);
    }
}

}  // namespace

TrainResult train_mlp(const std::vector<FeatureVector>& features,
                      const std::vector<Pose>& targets, const MlpShape& shape,
                      const TrainConfig& cfg) {
    if (features.empty() || features.size() != targets.size()) {
        throw DimensionError("train: need equally many features and poses");
    }
    if (cfg.batch < 1 || cfg.epochs < 1 || !(cfg.lr > 0.0)) {
        throw ConfigError("train: batch, epochs and lr must be positive");
    }
    const std::size_t n = features.size();
    std::vector<std::vector<double>> ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (static_cast<int>(features[i].size()) != shape.in) {
            throw DimensionError("train: feature length does not match shape");
        }
        if (targets[i].joint_count() * 3 != shape.out) {
            throw DimensionError("train: pose joints do not match shape");
        }
        ys[i].reserve(static_cast<std::size_t>(shape.out));
        for (const auto& j : targets[i].joints) {
            ys[i].push_back(j[0]);
            ys[i].push_back(j[1]);
            ys[i].push_back(j[2]);
        }
    }

    MlpWeights w = MlpWeights::glorot(shape, cfg.seed);
    AdamState adam{MlpGrads::zeros(shape), MlpGrads::zeros(shape), 1.0, 1.0};
    SplitMix64 shuffle_rng(mix_seed(cfg.seed, 0x7ea1));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);

    TrainResult result;
    result.epoch_loss.reserve(static_cast<std::size_t>(cfg.epochs));
    MlpGrads g = MlpGrads::zeros(shape);

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        // Fisher-Yates with the deterministic stream.
        for (std::size_t i = n - 1; i > 0; --i) {
            const std::size_t j = shuffle_rng.next() % (i + 1);
            std::swap(order[i], order[j]);
        }
        double epoch_loss = 0.0;
        std::size_t pos = 0;
        while (pos < n) {
            const std::size_t take =
                std::min(static_cast<std::size_t>(cfg.batch), n - pos);
            const auto zero = [](std::vector<double>& v) {
                std::fill(v.begin(), v.end(), 0.0);
            };
            zero(g.w1); zero(g.b1); zero(g.w2); zero(g.b2); zero(g.w3); zero(g.b3);
            double batch_loss = 0.0;
            for (std::size_t i = 0; i < take; ++i) {
                const std::size_t idx = order[pos + i];
                batch_loss += mlp_backward(w, features[idx], ys[idx], g);
            }
            const double inv = 1.0 / static_cast<double>(take);
            const auto scale = [inv](std::vector<double>& v) {
                for (double& x : v) x *= inv;
            };
            scale(g.w1); scale(g.b1); scale(g.w2); scale(g.b2); scale(g.w3); scale(g.b3);

            adam.beta1_t *= cfg.beta1;
            adam.beta2_t *= cfg.beta2;
            const double bias1 = 1.0 - adam.beta1_t;
            const double bias2 = 1.0 - adam.beta2_t;
            adam_update(w.w1, g.w1, adam.m.w1, adam.v.w1, cfg, bias1, bias2);
            adam_update(w.b1, g.b1, adam.m.b1, adam.v.b1, cfg, bias1, bias2);
            adam_update(w.w2, g.w2, adam.m.w2, adam.v.w2, cfg, bias1, bias2);
            adam_update(w.b2, g.b2, adam.m.b2, adam.v.b2, cfg, bias1, bias2);
            adam_update(w.w3, g.w3, adam.m.w3, adam.v.w3, cfg, bias1, bias2);
            adam_update(w.b3, g.b3, adam.m.b3, adam.v.b3, cfg, bias1, bias2);

            epoch_loss += batch_loss;
            pos += take;
        }
        epoch_loss /= static_cast<double>(n);
        if (!std::isfinite(epoch_loss)) {
            throw DivergenceError("train: loss is not finite");
        }
        result.epoch_loss.push_back(epoch_loss);
    }
    result.weights = std::move(w);
    return result;
}

TrainResult train_pose_regressor(const std::vector<FeatureVector>& features,
                                 const std::vector<Pose>& targets,
                                 const MlpShape& shape,
                                 const TrainConfig& cfg) {
    if (features.empty() || features.size() != targets.size()) {
        throw DimensionError("train: need equally many features and poses");
    }
    const std::size_t n = features.size();
    const std::size_t in = static_cast<std::size_t>(shape.in);
    const std::size_t out = static_cast<std::size_t>(shape.out);
    constexpr double kMmPerUnit = 1000.0;  // network trains in meters

    std::vector<double> mu(in, 0.0);
    std::vector<double> sigma(in, 0.0);
    for (const FeatureVector& f : features) {
        if (f.size() != in) {
            throw DimensionError("train: feature length does not match shape");
        }
        for (std::size_t i = 0; i < in; ++i) mu[i] += f[i];
    }
    for (double& m : mu) m /= static_cast<double>(n);
    for (const FeatureVector& f : features) {
        for (std::size_t i = 0; i < in; ++i) {
            const double d = f[i] - mu[i];
            sigma[i] += d * d;
        }
    }
    for (double& s : sigma) {
        s = std::sqrt(s / static_cast<double>(n));
        if (!(s > 0.0)) s = 1.0;  // constant feature: leave it centered
    }

    std::vector<double> mean_pose(out, 0.0);
    for (const Pose& p : targets) {
        if (static_cast<std::size_t>(p.joint_count()) * 3 != out) {
            throw DimensionError("train: pose joints do not match shape");
        }
        for (std::size_t i = 0; i < out; ++i) {
            mean_pose[i] += p.joints[i / 3][i % 3];
        }
    }
    for (double& m : mean_pose) m /= static_cast<double>(n);

    std::vector<FeatureVector> fs(n);
    std::vector<Pose> ys(n);
    for (std::size_t s = 0; s < n; ++s) {
        fs[s].resize(in);
        for (std::size_t i = 0; i < in; ++i) {
            fs[s][i] = (features[s][i] - mu[i]) / sigma[i];
        }
        Pose p(static_cast<int>(out / 3));
        for (std::size_t i = 0; i < out; ++i) {
            p.joints[i / 3][i % 3] = static_cast<float>(
                (targets[s].joints[i / 3][i % 3] - mean_pose[i]) / kMmPerUnit);
        }
        ys[s] = std::move(p);
    }

    TrainResult result = train_mlp(fs, ys, shape, cfg);
    MlpWeights& w = result.weights;

    // Fold x -> (x - mu) / sigma into layer 1 ...
    for (int r = 0; r < shape.h1; ++r) {
        double* row = w.w1.data() + static_cast<std::size_t>(r) * shape.in;
        double shift = 0.0;
        for (std::size_t c = 0; c < in; ++c) {
            row[c] /= sigma[c];
            shift += row[c] * mu[c];
        }
        w.b1[static_cast<std::size_t>(r)] -= shift;
    }
    // ... and y -> kMmPerUnit * y + mean_pose into layer 3.
    for (double& v : w.w3) v *= kMmPerUnit;
    for (std::size_t i = 0; i < out; ++i) {
        w.b3[i] = kMmPerUnit * w.b3[i] + mean_pose[i];
    }
    return result;
}

void write_weights(const std::string& path, const MlpWeights& w) {
    std::string buf;
    const MlpShape& s = w.shape;
    buf.reserve(24 + static_cast<std::size_t>(param_count(s)) * 4);
    buf.append("PRNW", 4);
    detail::put_u32(buf, kWeightsVersion);
    detail::put_u32(buf, static_cast<std::uint32_t>(s.in));
    detail::put_u32(buf, static_cast<std::uint32_t>(s.h1));
    detail::put_u32(buf, static_cast<std::uint32_t>(s.h2));
    detail::put_u32(buf, static_cast<std::uint32_t>(s.out));
    for (const std::vector<double>* block :
         {&w.w1, &w.b1, &w.w2, &w.b2, &w.w3, &w.b3}) {
        for (double v : *block) {
            detail::put_f32(buf, static_cast<float>(v));
        }
    }
    detail::write_file(path, buf);
}

MlpWeights read_weights(const std::string& path) {
    const std::string buf = detail::read_file(path);
    detail::ByteReader r{buf, 0, path};
    detail::check_magic(r, "PRNW");
    const std::uint32_t version = r.u32();
    if (version != kWeightsVersion) {
        throw IoError(path + ": unsupported weights version");
    }
    MlpShape s;
    s.in = static_cast<int>(r.u32());
    s.h1 = static_cast<int>(r.u32());
    s.h2 = static_cast<int>(r.u32());
    s.out = static_cast<int>(r.u32());
    if (s.in < 1 || s.h1 < 1 || s.h2 < 1 || s.out < 1 ||
        s.in > (1 << 20) || s.h1 > (1 << 20) || s.h2 > (1 << 20) ||
        s.out > (1 << 20)) {
        throw DimensionError(path + ": implausible shape in header");
    }
    const std::size_t total = static_cast<std::size_t>(param_count(s));
    if (buf.size() < r.pos + total * 4) {
        throw TruncatedError(path + ": truncated payload");
    }
    if (buf.size() > r.pos + total * 4) {
        throw IoError(path + ": trailing bytes after payload");
    }
    MlpWeights w = MlpWeights::zeros(s);
    for (std::vector<double>* block :
         {&w.w1, &w.b1, &w.w2, &w.b2, &w.w3, &w.b3}) {
        for (double& v : *block) {
            v = r.f32();
        }
    }
    return w;
}

}  // namespace rpe
