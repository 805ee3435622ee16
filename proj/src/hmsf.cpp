#include "rpe/hmsf.hpp"

#include <algorithm>
#include <cmath>

#include "rpe/errors.hpp"

namespace rpe {

RealCube avg_pool3(const RealCube& x, Kernel3 k) {
    if (k.kr < 1 || k.ka < 1 || k.kd < 1) {
        throw ConfigError("avg_pool3: kernel must be >= 1");
    }
    const int kr = std::min(k.kr, x.r);
    const int ka = std::min(k.ka, x.a);
    const int kd = std::min(k.kd, x.d);
    const int out_r = x.r / kr;
    const int out_a = x.a / ka;
    const int out_d = x.d / kd;
    RealCube out(x.c, out_r, out_a, out_d);
    const double inv = 1.0 / (static_cast<double>(kr) * ka * kd);
    for (int c = 0; c < x.c; ++c) {
        for (int r = 0; r < out_r; ++r) {
            for (int a = 0; a < out_a; ++a) {
                for (int d = 0; d < out_d; ++d) {
                    double sum = 0.0;
                    for (int i = 0; i < kr; ++i) {
                        for (int j = 0; j < ka; ++j) {
                            for (int l = 0; l < kd; ++l) {
                                sum += x.at(c, r * kr + i, a * ka + j,
                                            d * kd + l);
                            }
                        }
                    }
                    out.at(c, r, a, d) = sum * inv;
                }
            }
        }
    }
    return out;
}

namespace {

// Half-pixel source coordinate with edge clamp: lo index, hi index, blend.
struct AxisSample {
    int lo;
    int hi;
    double t;
};

AxisSample axis_sample(int i, int src, int dst) {
    double pos = (static_cast<double>(i) + 0.5) *
                     (static_cast<double>(src) / static_cast<double>(dst)) -
                 0.5;
    pos = std::clamp(pos, 0.0, static_cast<double>(src - 1));
    const int lo = static_cast<int>(pos);
    const int hi = std::min(lo + 1, src - 1);
    return AxisSample{lo, hi, pos - static_cast<double>(lo)};
}

}  // namespace

RealCube upsample_trilinear(const RealCube& x, int r, int a, int d) {
    if (r < x.r || a < x.a || d < x.d) {
        throw DimensionError("upsample_trilinear: target smaller than source");
    }
    RealCube out(x.c, r, a, d);
    std::vector<AxisSample> sr(r), sa(a), sd(d);
    for (int i = 0; i < r; ++i) sr[i] = axis_sample(i, x.r, r);
    for (int i = 0; i < a; ++i) sa[i] = axis_sample(i, x.a, a);
    for (int i = 0; i < d; ++i) sd[i] = axis_sample(i, x.d, d);
    for (int c = 0; c < x.c; ++c) {
        for (int ri = 0; ri < r; ++ri) {
            for (int ai = 0; ai < a; ++ai) {
                for (int di = 0; di < d; ++di) {
                    const AxisSample& R = sr[ri];
                    const AxisSample& A = sa[ai];
                    const AxisSample& D = sd[di];
                    double acc = 0.0;
                    for (int er = 0; er < 2; ++er) {
                        const double wr = er ? R.t : 1.0 - R.t;
                        if (wr == 0.0) continue;
                        for (int ea = 0; ea < 2; ++ea) {
                            const double wa = ea ? A.t : 1.0 - A.t;
                            if (wa == 0.0) continue;
                            for (int ed = 0; ed < 2; ++ed) {
                                const double wd = ed ? D.t : 1.0 - D.t;
                                if (wd == 0.0) continue;
                                acc += wr * wa * wd *
                                       x.at(c, er ? R.hi : R.lo,
                                            ea ? A.hi : A.lo,
                                            ed ? D.hi : D.lo);
                            }
                        }
                    }
                    out.at(c, ri, ai, di) = acc;
                }
            }
        }
    }
    return out;
}

RealCube fuse(const RealCube& coarse, const RealCube& medium,
              const RealCube& fine) {
    const auto match = [&](const RealCube& x) {
        return x.r == fine.r && x.a == fine.a && x.d == fine.d;
    };
    if (!match(coarse) || !match(medium)) {
        throw DimensionError("fuse: spatial dims differ");
    }
    RealCube out(coarse.c + medium.c + fine.c, fine.r, fine.a, fine.d);
    std::size_t off = 0;
    for (const RealCube* src : {&coarse, &medium, &fine}) {
        std::copy(src->data.begin(), src->data.end(), out.data.begin() + off);
        off += src->data.size();
    }
    return out;
}

FeatureVector global_features(const RealCube& fused,
                              const MotionDescriptors& desc,
                              const FeatureGrid& grid) {
    if (grid.g_r < 1 || grid.g_a < 1 || grid.g_d < 1) {
        throw ConfigError("global_features: grid must be >= 1 per axis");
    }
    if (grid.g_r > fused.r || grid.g_a > fused.a || grid.g_d > fused.d) {
        throw DimensionError("global_features: grid exceeds tensor dims");
    }
    const Kernel3 k{fused.r / grid.g_r, fused.a / grid.g_a, fused.d / grid.g_d};
    const RealCube pooled = avg_pool3(fused, k);
    if (pooled.r != grid.g_r || pooled.a != grid.g_a || pooled.d != grid.g_d) {
        throw DimensionError(
            "global_features: dims are not reducible to the grid "
            "(floor(dim/floor(dim/g)) != g)");
    }
    FeatureVector f;
    f.reserve(pooled.data.size() + 3);
    f.insert(f.end(), pooled.data.begin(), pooled.data.end());
    f.push_back(desc.mu_g);
    f.push_back(desc.sigma_g);
    f.push_back(desc.vmax_g);
    return f;
}

}  // namespace rpe
