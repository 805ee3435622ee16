#pragma once

// Iterative radix-2 decimation-in-time FFT, power-of-two lengths only.
// Twiddles come from the deterministic trig kernel with exact rational
// arguments (k/N is exact for power-of-two N), so transforms are
// reproducible bit-for-bit across platforms.

#include <complex>
#include <cstddef>
#include <vector>

namespace rpe {

enum class FftNorm {
    none,      // plain DFT sum
    unitary,   // 1/sqrt(N); preserves energy
    forward,   // 1/N; a pure tone of amplitude a peaks at magnitude a
};

bool is_pow2(std::size_t n) noexcept;

// In-place forward FFT (kernel exp(-2*pi*i*k*n/N)).  n must be a power of
// two.  Throws std::invalid_argument otherwise.
void fft(std::complex<double>* data, std::size_t n, FftNorm norm);

inline void fft(std::vector<std::complex<double>>& v, FftNorm norm) {
    fft(v.data(), v.size(), norm);
}

// Swaps halves so index n/2 becomes the DC bin (n even).
void fft_shift(std::complex<double>* data, std::size_t n);

}  // namespace rpe
