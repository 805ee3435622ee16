#include "rpe/mcp.hpp"

#include <algorithm>
#include <cmath>

#include "rpe/errors.hpp"

namespace rpe {

VelocityField dominant_doppler(const RadCube& cube) {
    if (cube.axes.doppler_bins() != cube.d) {
        throw DimensionError("dominant_doppler: cube is missing axis maps");
    }
    VelocityField f;
    f.rows = cube.r;
    f.cols = cube.a;
    f.v.resize(static_cast<std::size_t>(cube.r) * cube.a);
    f.k.resize(f.v.size());
    for (int r = 0; r < cube.r; ++r) {
        for (int a = 0; a < cube.a; ++a) {
            // Squared magnitude keeps the comparison in exact double
            // arithmetic (float squares are exact in double).
            int best = 0;
            double best_m = -1.0;
            for (int d = 0; d < cube.d; ++d) {
                const std::complex<float> z = cube.at(r, a, d);
                const double re = z.real();
                const double im = z.imag();
                const double m = re * re + im * im;
                if (m > best_m) {
                    best_m = m;
                    best = d;
                }
            }
            const std::size_t i = static_cast<std::size_t>(r) * cube.a + a;
            f.k[i] = best;
            f.v[i] = cube.axes.v_of_d[best];
        }
    }
    return f;
}

LocalStats local_stats(const VelocityField& field, int radius) {
    if (radius < 0) {
        throw ConfigError("local_stats: radius must be non-negative");
    }
    LocalStats st;
    st.rows = field.rows;
    st.cols = field.cols;
    st.mu.resize(field.v.size());
    st.sigma2.resize(field.v.size());
    for (int r = 0; r < field.rows; ++r) {
        const int r0 = std::max(0, r - radius);
        const int r1 = std::min(field.rows - 1, r + radius);
        for (int a = 0; a < field.cols; ++a) {
            const int a0 = std::max(0, a - radius);
            const int a1 = std::min(field.cols - 1, a + radius);
            const int n = (r1 - r0 + 1) * (a1 - a0 + 1);
            double sum = 0.0;
            for (int rr = r0; rr <= r1; ++rr) {
                for (int aa = a0; aa <= a1; ++aa) {
                    sum += field.vel(rr, aa);
                }
            }
            const double mu = sum / n;
            double acc = 0.0;
            for (int rr = r0; rr <= r1; ++rr) {
                for (int aa = a0; aa <= a1; ++aa) {
                    const double dv = field.vel(rr, aa) - mu;
                    acc += dv * dv;
                }
            }
            const std::size_t i = static_cast<std::size_t>(r) * field.cols + a;
            st.mu[i] = mu;
            st.sigma2[i] = acc / n;
        }
    }
    return st;
}

DopplerMask doppler_mask(const VelocityField& field, const LocalStats& stats,
                         const DopplerThresholds& t) {
    if (stats.rows != field.rows || stats.cols != field.cols) {
        throw DimensionError("doppler_mask: stats shape does not match field");
    }
    if (t.v_min > t.v_max || t.sigma_min > t.sigma_max) {
        throw ConfigError("doppler thresholds: min exceeds max");
    }
    DopplerMask mask(field.rows, field.cols);
    for (int r = 0; r < field.rows; ++r) {
        for (int a = 0; a < field.cols; ++a) {
            const double av = std::abs(field.vel(r, a));
            const double sigma = std::sqrt(stats.var(r, a));
            if (av >= t.v_min && av <= t.v_max && sigma >= t.sigma_min &&
                sigma <= t.sigma_max) {
                mask.at(r, a) = 1;
            }
        }
    }
    return mask;
}

RadCube apply_doppler_mask(const RadCube& cube, const DopplerMask& mask) {
    if (mask.rows != cube.r || mask.cols != cube.a) {
        throw DimensionError("doppler mask: shape does not match cube");
    }
    RadCube out = cube;
    for (int r = 0; r < cube.r; ++r) {
        for (int a = 0; a < cube.a; ++a) {
            if (mask.at(r, a)) continue;
            for (int d = 0; d < cube.d; ++d) {
                out.at(r, a, d) = {0.0f, 0.0f};
            }
        }
    }
    return out;
}

MotionDescriptors global_descriptors(const VelocityField& field,
                                     const DopplerMask& mask) {
    if (mask.rows != field.rows || mask.cols != field.cols) {
        throw DimensionError("descriptors: mask shape does not match field");
    }
    MotionDescriptors d;
    const std::size_t n = field.v.size();
    std::size_t count = 0;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!mask.bits[i]) continue;
        ++count;
        sum += field.v[i];
        d.vmax_g = std::max(d.vmax_g, std::abs(field.v[i]));
    }
    if (count == 0) {
        return MotionDescriptors{};
    }
    d.mu_g = sum / static_cast<double>(count);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!mask.bits[i]) continue;
        const double dv = field.v[i] - d.mu_g;
        acc += dv * dv;
    }
    d.sigma_g = std::sqrt(acc / static_cast<double>(count));
    return d;
}

}  // namespace rpe
