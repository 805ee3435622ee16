#include "rpe/cfar.hpp"

#include <algorithm>
#include <cmath>

#include "rpe/det_math.hpp"
#include "rpe/errors.hpp"

namespace rpe {

RealCube collapse_doppler(const RadCube& cube) {
    RealCube out(1, cube.r, cube.a, 1);
    for (int r = 0; r < cube.r; ++r) {
        for (int a = 0; a < cube.a; ++a) {
            double acc = 0.0;
            for (int d = 0; d < cube.d; ++d) {
                const std::complex<float> z = cube.at(r, a, d);
                const double re = z.real();
                const double im = z.imag();
                acc += re * re + im * im;
            }
            out.at(0, r, a, 0) = acc;
        }
    }
    return out;
}

BitGrid ca_cfar_2d(const RealCube& energy, const CfarParams& params) {
    if (energy.c != 1 || energy.d != 1) {
        throw DimensionError("ca_cfar_2d: expected a (1, R, A, 1) energy map");
    }
    if (params.guard < 0 || params.train < 1 ||
        !(params.p_fa > 0.0 && params.p_fa < 1.0)) {
        throw ConfigError("ca_cfar_2d: bad guard/train/p_fa");
    }
    const int rows = energy.r;
    const int cols = energy.a;
    const int outer = params.guard + params.train;
    if (rows <= 2 * outer || cols <= 2 * outer) {
        throw ConfigError("ca_cfar_2d: map no larger than the CFAR window");
    }
    const double neg_log_pfa = -det_log(params.p_fa);

    BitGrid det(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int a = 0; a < cols; ++a) {
            const int r0 = std::max(0, r - outer);
            const int r1 = std::min(rows - 1, r + outer);
            const int a0 = std::max(0, a - outer);
            const int a1 = std::min(cols - 1, a + outer);
            double sum = 0.0;
            int n = 0;
            for (int rr = r0; rr <= r1; ++rr) {
                for (int aa = a0; aa <= a1; ++aa) {
                    const int cheb =
                        std::max(std::abs(rr - r), std::abs(aa - a));
                    if (cheb <= params.guard) continue;
                    sum += energy.at(0, rr, aa, 0);
                    ++n;
                }
            }
            // n >= 1 is guaranteed by the window precondition.
            const double alpha =
                n * (det_exp(neg_log_pfa / n) - 1.0);
            const double noise = sum / n;
            if (energy.at(0, r, a, 0) > alpha * noise) {
                det.at(r, a) = 1;
            }
        }
    }
    return det;
}

namespace {

BitGrid erode3(const BitGrid& in) {
    BitGrid out(in.rows, in.cols);
    for (int r = 0; r < in.rows; ++r) {
        for (int c = 0; c < in.cols; ++c) {
            bool all = true;
            for (int dr = -1; dr <= 1 && all; ++dr) {
                for (int dc = -1; dc <= 1; ++dc) {
                    const int rr = r + dr;
                    const int cc = c + dc;
                    if (rr < 0 || rr >= in.rows || cc < 0 || cc >= in.cols ||
                        !in.at(rr, cc)) {
                        all = false;
                        break;
                    }
                }
            }
            out.at(r, c) = all ? 1 : 0;
        }
    }
    return out;
}

BitGrid dilate3(const BitGrid& in) {
    BitGrid out(in.rows, in.cols);
    for (int r = 0; r < in.rows; ++r) {
        for (int c = 0; c < in.cols; ++c) {
            bool any = false;
            for (int dr = -1; dr <= 1 && !any; ++dr) {
                for (int dc = -1; dc <= 1; ++dc) {
                    const int rr = r + dr;
                    const int cc = c + dc;
                    if (rr >= 0 && rr < in.rows && cc >= 0 && cc < in.cols &&
                        in.at(rr, cc)) {
                        any = true;
                        break;
                    }
                }
            }
            out.at(r, c) = any ? 1 : 0;
        }
    }
    return out;
}

}  // namespace

BitGrid morph_open_close(const BitGrid& detections) {
    const BitGrid opened = dilate3(erode3(detections));
    return erode3(dilate3(opened));
}

FeatureVector featurize_detections(const BitGrid& detections,
                                   const RealCube& energy, int g_r, int g_a) {
    if (energy.c != 1 || energy.d != 1 || detections.rows != energy.r ||
        detections.cols != energy.a) {
        throw DimensionError("featurize_detections: shape mismatch");
    }
    RealCube masked(1, energy.r, energy.a, 1);
    for (int r = 0; r < energy.r; ++r) {
        for (int a = 0; a < energy.a; ++a) {
            masked.at(0, r, a, 0) =
                detections.at(r, a) ? energy.at(0, r, a, 0) : 0.0;
        }
    }
    if (g_r < 1 || g_a < 1 || g_r > energy.r || g_a > energy.a) {
        throw DimensionError("featurize_detections: grid exceeds map");
    }
    const Kernel3 k{energy.r / g_r, energy.a / g_a, 1};
    const RealCube pooled = avg_pool3(masked, k);
    if (pooled.r != g_r || pooled.a != g_a) {
        throw DimensionError(
            "featurize_detections: dims are not reducible to the grid");
    }
    FeatureVector f(pooled.data.begin(), pooled.data.end());
    f.push_back(static_cast<double>(detections.count()));
    return f;
}

}  // namespace rpe
