#pragma once

// FMCW front-end geometry: chirp parameters, the derived resolutions, and
// the physical meaning of every cube axis.
//
// Conventions used throughout:
//   - range bin r       <-> distance d_of_r[r] = r * range_res
//   - Doppler bin d     <-> radial velocity, bin D/2 = 0, positive bins are
//                           approaching targets
//   - angle bin a       <-> azimuth, bin A/2 = boresight
// All spectra are half-spectrum shifted accordingly.

#include <complex>
#include <vector>

#include "rpe/fft.hpp"

namespace rpe {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr int kDefaultRangeBins = 64;

struct RadarConfig {
    double f_c = 0;      // carrier frequency, Hz
    double b = 0;        // sweep bandwidth, Hz
    double t_chirp = 0;  // active chirp duration, s
    double t_idle = 0;   // inter-chirp idle, s
    double f_s = 0;      // IF sample rate, Hz
    int n_s = 0;         // samples per chirp (power of two)
    int n_d = 0;         // chirps per frame = Doppler bins (power of two)
    int n_a = 0;         // virtual antenna elements = angle bins (power of two)
    double spacing = 0;  // element spacing, m

    // 77 GHz / 3.6 GHz sweep, 256 samples x 16 chirps x 64 elements.
    // The chirp timing is chosen so that f_s * t_chirp == n_s (the sampled
    // window spans the full sweep) and the ambiguous velocity (~4.16 m/s)
    // comfortably covers human limb speeds.
    static RadarConfig basic();
};

struct DerivedParams {
    double lambda = 0;     // carrier wavelength, m
    double slope = 0;      // chirp slope b / t_chirp, Hz/s
    double t_r = 0;        // chirp repetition interval t_chirp + t_idle, s
    double range_res = 0;  // c / (2 b), m per range bin
    double v_amb = 0;      // lambda / (4 t_r), m/s; velocities alias beyond this
};

// Throws ConfigError if any field is out of range.
void validate(const RadarConfig& cfg);

// Validates, then evaluates the closed forms above.
DerivedParams derive_params(const RadarConfig& cfg);

// Physical coordinates of each cube axis.
struct AxisMaps {
    std::vector<double> d_of_r;      // m
    std::vector<double> theta_of_a;  // rad, arcsin-spaced, antisymmetric about A/2
    std::vector<double> v_of_d;      // m/s, linear, v_of_d[D/2] == 0

    int range_bins() const { return static_cast<int>(d_of_r.size()); }
    int angle_bins() const { return static_cast<int>(theta_of_a.size()); }
    int doppler_bins() const { return static_cast<int>(v_of_d.size()); }
};

// range_bins must be in [1, cfg.n_s].
AxisMaps build_axis_maps(const RadarConfig& cfg, const DerivedParams& p,
                         int range_bins);

// Raw ADC frame, complex baseband, layout [sample n][chirp k][element m].
struct RawCube {
    int n_s = 0;
    int n_d = 0;
    int n_a = 0;
    std::vector<std::complex<double>> data;

    std::complex<double>& at(int n, int k, int m) {
        return data[static_cast<std::size_t>((n * n_d + k)) * n_a + m];
    }
    const std::complex<double>& at(int n, int k, int m) const {
        return data[static_cast<std::size_t>((n * n_d + k)) * n_a + m];
    }
};

RawCube make_raw_cube(const RadarConfig& cfg);

// Range-angle-Doppler cube, layout [r][a][d], float storage (matches the
// on-disk format).  Axis maps travel with the data.
struct RadCube {
    int r = 0;
    int a = 0;
    int d = 0;
    std::vector<std::complex<float>> data;
    AxisMaps axes;

    std::complex<float>& at(int ri, int ai, int di) {
        return data[static_cast<std::size_t>((ri * a + ai)) * d + di];
    }
    const std::complex<float>& at(int ri, int ai, int di) const {
        return data[static_cast<std::size_t>((ri * a + ai)) * d + di];
    }
    std::size_t size() const { return data.size(); }
};

enum class Window {
    rect,  // no taper
    hann,  // fast-time taper; trades range sidelobes for main-lobe width
};

// Raw frame -> RAD cube: FFT over fast time (keep the first range_bins
// bins), over elements (shifted, boresight at A/2), over slow time
// (shifted, zero velocity at D/2).  Each axis transform is 1/N-normalized
// so a unit-amplitude point target keeps unit peak magnitude.  Internals
// run in double; the result is rounded to float once at the end.
RadCube fft_chain(const RawCube& raw, const RadarConfig& cfg,
                  int range_bins = kDefaultRangeBins,
                  Window window = Window::rect);

}  // namespace rpe
