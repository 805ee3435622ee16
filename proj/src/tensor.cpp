#include "rpe/tensor.hpp"

#include <cmath>

namespace rpe {

RealCube magnitude(const RadCube& cube) {
    RealCube out(1, cube.r, cube.a, cube.d);
    const std::size_t n = cube.data.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double re = cube.data[i].real();
        const double im = cube.data[i].imag();
        out.data[i] = std::sqrt(re * re + im * im);
    }
    return out;
}

}  // namespace rpe
