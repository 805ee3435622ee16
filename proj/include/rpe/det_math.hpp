#pragma once

// Deterministic scalar math.
//
// libm's sin/cos/log/asin are not pinned to the last ulp across
// implementations (glibc vs musl vs Apple), which would leak into cube
// values, masks and feature records.  Everything here uses only IEEE-754
// +,-,*,/ and sqrt (all correctly rounded), fixed-length polynomial
// evaluation and exact integer steps, so any two conforming platforms
// produce identical bit patterns.
//
// Angles are passed in *turns* (1 turn = 2*pi rad).  Phase accumulators in
// the signal model are naturally rational in turns, so range reduction is an
// exact floor() instead of a multiple of pi.

#include <cstdint>

namespace rpe {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// sin/cos of (turns * 2*pi).  |error| < 4 ulp over all finite inputs that
// survive the exact mod-1 reduction.
void sincos_turns(double turns, double& s, double& c) noexcept;
double sin_turns(double turns) noexcept;
double cos_turns(double turns) noexcept;

// asin in radians, |x| <= 1 required (caller clamps).
double det_asin(double x) noexcept;

// Natural log, x > 0 required.
double det_log(double x) noexcept;

// Natural exp for |x| <= ~700 (no overflow handling beyond IEEE inf).
double det_exp(double x) noexcept;

// SplitMix64 (Steele, Lea, Flood 2014).  64-bit state, 64-bit output,
// full-period, trivially seedable.  Used everywhere randomness is needed so
// streams are reproducible from a single u64 seed.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed = 0) noexcept : state(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53 random bits.
    double next_double() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform in (0, 1]; safe as a log() argument.
    double next_open() noexcept {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    // Uniform in [lo, hi).
    double next_in(double lo, double hi) noexcept {
        return lo + (hi - lo) * next_double();
    }
};

// One Box-Muller pair of independent standard normals.
struct GaussPair {
    double z0;
    double z1;
};
GaussPair gaussian_pair(SplitMix64& rng) noexcept;

// Derives an independent per-frame stream from a base seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace rpe
