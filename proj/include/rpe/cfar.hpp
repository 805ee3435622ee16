#pragma once

// Classical detection baseline: Doppler-collapsed energy map, cell-averaging
// CFAR, binary morphology cleanup, and a compact detection feature vector.
// Exists to give the learned pipeline something honest to beat.

#include "rpe/hmsf.hpp"
#include "rpe/radar.hpp"
#include "rpe/tensor.hpp"

namespace rpe {

// Energy map sum |z|^2 over Doppler, returned as a (1, R, A, 1) tensor.
RealCube collapse_doppler(const RadCube& cube);

struct CfarParams {
    int guard = 1;      // guard cells per side
    int train = 4;      // training cells per side beyond the guards
    double p_fa = 1e-3; // design false-alarm rate per cell

    bool operator==(const CfarParams&) const = default;
};

// 2D cell-averaging CFAR over the energy map.  The training set is the
// square ring between Chebyshev radius guard and guard+train, clipped at
// the borders (the threshold factor is recomputed from the actual count N
// as alpha = N * (p_fa^(-1/N) - 1), exact for exponential noise).  A cell
// detects iff value > alpha * mean(training).  Throws ConfigError when the
// map is no larger than the window.
BitGrid ca_cfar_2d(const RealCube& energy, const CfarParams& params);

// Opening then closing with a 3x3 all-ones structuring element.  Cells
// outside the grid count as background for erosion; dilation only reaches
// cells inside the grid.
BitGrid morph_open_close(const BitGrid& detections);

// Detection-masked energy average-pooled to (g_r, g_a) blocks (same floor
// rule as the feature grid), flattened row-major, with the detection count
// appended.  Length g_r * g_a + 1.
FeatureVector featurize_detections(const BitGrid& detections,
                                   const RealCube& energy, int g_r, int g_a);

}  // namespace rpe
