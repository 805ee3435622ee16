#include "rpe/radar.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rpe/det_math.hpp"
#include "rpe/errors.hpp"

namespace rpe {

RadarConfig RadarConfig::basic() {
    RadarConfig cfg;
    cfg.f_c = 77.0e9;
    cfg.b = 3.6e9;
    cfg.t_chirp = 200.0e-6;
    cfg.t_idle = 34.0e-6;
    cfg.f_s = 1.28e6;
    cfg.n_s = 256;
    cfg.n_d = 16;
    cfg.n_a = 64;
    cfg.spacing = kSpeedOfLight / (2.0 * cfg.f_c);  // lambda / 2
    return cfg;
}

void validate(const RadarConfig& cfg) {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ConfigError(std::string("radar config: ") + name +
                              " must be positive and finite");
        }
    };
    positive(cfg.f_c, "f_c");
    positive(cfg.b, "b");
    positive(cfg.t_chirp, "t_chirp");
    positive(cfg.t_idle, "t_idle");
    positive(cfg.f_s, "f_s");
    positive(cfg.spacing, "spacing");
    auto pow2 = [](int v, const char* name) {
        if (v <= 0 || !is_pow2(static_cast<std::size_t>(v))) {
            throw ConfigError(std::string("radar config: ") + name +
                              " must be a positive power of two");
        }
    };
    pow2(cfg.n_s, "n_s");
    pow2(cfg.n_d, "n_d");
    pow2(cfg.n_a, "n_a");
    if (static_cast<double>(cfg.n_s) / cfg.f_s > cfg.t_chirp * (1.0 + 1e-12)) {
        throw ConfigError("radar config: n_s samples at f_s do not fit inside t_chirp");
    }
}

DerivedParams derive_params(const RadarConfig& cfg) {
    validate(cfg);
    DerivedParams p;
    p.lambda = kSpeedOfLight / cfg.f_c;
    p.slope = cfg.b / cfg.t_chirp;
    p.t_r = cfg.t_chirp + cfg.t_idle;
    p.range_res = kSpeedOfLight / (2.0 * cfg.b);
    p.v_amb = p.lambda / (4.0 * p.t_r);
    return p;
}

AxisMaps build_axis_maps(const RadarConfig& cfg, const DerivedParams& p,
                         int range_bins) {
    if (range_bins < 1 || range_bins > cfg.n_s) {
        throw DimensionError("axis maps: range_bins must be in [1, n_s]");
    }
    AxisMaps m;
    m.d_of_r.resize(range_bins);
    for (int r = 0; r < range_bins; ++r) {
        m.d_of_r[r] = static_cast<double>(r) * p.range_res;
    }

    const int a_bins = cfg.n_a;
    const double half_a = static_cast<double>(a_bins) / 2.0;
    // sin(theta) = (lambda / (2 l)) * (a - A/2) / (A/2); clamp covers
    // spacings wider than lambda/2 where edge bins exceed +-90 deg.
    const double sin_scale = p.lambda / (2.0 * cfg.spacing);
    m.theta_of_a.resize(a_bins);
    for (int a = 0; a < a_bins; ++a) {
        double u = sin_scale * (static_cast<double>(a) - half_a) / half_a;
        u = std::clamp(u, -1.0, 1.0);
        m.theta_of_a[a] = det_asin(u);
    }

    const int d_bins = cfg.n_d;
    const double half_d = static_cast<double>(d_bins) / 2.0;
    m.v_of_d.resize(d_bins);
    for (int d = 0; d < d_bins; ++d) {
        m.v_of_d[d] = p.v_amb * (static_cast<double>(d) - half_d) / half_d;
    }
    return m;
}

RawCube make_raw_cube(const RadarConfig& cfg) {
    RawCube raw;
    raw.n_s = cfg.n_s;
    raw.n_d = cfg.n_d;
    raw.n_a = cfg.n_a;
    raw.data.assign(static_cast<std::size_t>(cfg.n_s) * cfg.n_d * cfg.n_a,
                    {0.0, 0.0});
    return raw;
}

RadCube fft_chain(const RawCube& raw, const RadarConfig& cfg, int range_bins,
                  Window window) {
    const DerivedParams p = derive_params(cfg);
    if (raw.n_s != cfg.n_s || raw.n_d != cfg.n_d || raw.n_a != cfg.n_a) {
        throw DimensionError("fft_chain: raw cube dims do not match config");
    }
    if (range_bins < 1 || range_bins > cfg.n_s) {
        throw DimensionError("fft_chain: range_bins must be in [1, n_s]");
    }
    const int ns = cfg.n_s, nd = cfg.n_d, na = cfg.n_a;

    std::vector<std::complex<double>> work(raw.data);
    if (window == Window::hann) {
        for (int n = 0; n < ns; ++n) {
            const double w =
                0.5 - 0.5 * cos_turns(static_cast<double>(n) / ns);
            const std::size_t base = static_cast<std::size_t>(n) * nd * na;
            for (std::size_t i = 0; i < static_cast<std::size_t>(nd) * na; ++i) {
                work[base + i] *= w;
            }
        }
    }

    std::vector<std::complex<double>> scratch(
        static_cast<std::size_t>(std::max({ns, nd, na})));

    // Fast time: n -> range bin, stride nd*na.
    const std::size_t n_stride = static_cast<std::size_t>(nd) * na;
    for (std::size_t col = 0; col < n_stride; ++col) {
        for (int n = 0; n < ns; ++n) {
            scratch[n] = work[static_cast<std::size_t>(n) * n_stride + col];
        }
        fft(scratch.data(), ns, FftNorm::forward);
        for (int n = 0; n < ns; ++n) {
            work[static_cast<std::size_t>(n) * n_stride + col] = scratch[n];
        }
    }

    // Elements: m -> angle bin (shifted), contiguous along m.
    for (int r = 0; r < range_bins; ++r) {
        for (int k = 0; k < nd; ++k) {
            std::complex<double>* row =
                work.data() + (static_cast<std::size_t>(r) * nd + k) * na;
            fft(row, na, FftNorm::forward);
            fft_shift(row, na);
        }
    }

    // Slow time: k -> Doppler bin (shifted), stride na.
    for (int r = 0; r < range_bins; ++r) {
        for (int m = 0; m < na; ++m) {
            const std::size_t base = static_cast<std::size_t>(r) * nd * na + m;
            for (int k = 0; k < nd; ++k) {
                scratch[k] = work[base + static_cast<std::size_t>(k) * na];
            }
            fft(scratch.data(), nd, FftNorm::forward);
            fft_shift(scratch.data(), nd);
            for (int k = 0; k < nd; ++k) {
                work[base + static_cast<std::size_t>(k) * na] = scratch[k];
            }
        }
    }

    RadCube cube;
    cube.r = range_bins;
    cube.a = na;
    cube.d = nd;
    cube.axes = build_axis_maps(cfg, p, range_bins);
    cube.data.resize(static_cast<std::size_t>(range_bins) * na * nd);
    for (int r = 0; r < range_bins; ++r) {
        for (int a = 0; a < na; ++a) {
            for (int d = 0; d < nd; ++d) {
                const std::complex<double> z =
                    work[(static_cast<std::size_t>(r) * nd + d) * na + a];
                cube.at(r, a, d) = {static_cast<float>(z.real()),
                                    static_cast<float>(z.imag())};
            }
        }
    }
    return cube;
}

}  // namespace rpe
