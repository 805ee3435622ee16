#include "rpe/fft.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rpe/det_math.hpp"

namespace rpe {

bool is_pow2(std::size_t n) noexcept {
    return n != 0 && (n & (n - 1)) == 0;
}

void fft(std::complex<double>* data, std::size_t n, FftNorm norm) {
    if (!is_pow2(n)) {
        throw std::invalid_argument("fft: length must be a power of two");
    }
    if (n == 1) {
        return;
    }

    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) {
            j ^= bit;
        }
        j ^= bit;
        if (i < j) {
            std::swap(data[i], data[j]);
        }
    }

    // Twiddle table W[k] = exp(-2*pi*i*k/n), k < n/2.  k/n is exact.
    const std::size_t half = n / 2;
    std::vector<std::complex<double>> w(half);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < half; ++k) {
        double s, c;
        sincos_turns(-static_cast<double>(k) * inv_n, s, c);
        w[k] = {c, s};
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t step = n / len;  // stride into the full-size table
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double>& a = data[i + k];
                std::complex<double>& b = data[i + k + len / 2];
                const std::complex<double> t = b * w[k * step];
                b = a - t;
                a += t;
            }
        }
    }

    if (norm == FftNorm::unitary) {
        const double f = 1.0 / std::sqrt(static_cast<double>(n));
        for (std::size_t i = 0; i < n; ++i) {
            data[i] *= f;
        }
    } else if (norm == FftNorm::forward) {
        const double f = 1.0 / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            data[i] *= f;
        }
    }
}

void fft_shift(std::complex<double>* data, std::size_t n) {
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) {
        std::swap(data[i], data[i + half]);
    }
}

}  // namespace rpe
