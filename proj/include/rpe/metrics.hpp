#pragma once

// Pose error metrics, in millimeters.

#include <vector>

#include "rpe/tensor.hpp"

namespace rpe {

// Mean Euclidean joint distance for one frame.
double frame_majpe(const Pose& pred, const Pose& gt);

// Mean over frames of frame_majpe.  Sequences must be non-empty and
// shape-matched.
double majpe(const std::vector<Pose>& pred, const std::vector<Pose>& gt);

// Best similarity transform (rotation + isotropic scale + translation, no
// reflection) of pred onto gt in the least-squares sense, returned as the
// transformed prediction.  Degenerate point sets (prediction collapsed to a
// point) fall back to translation-only alignment.
Pose similarity_align(const Pose& pred, const Pose& gt);

// majpe after per-frame similarity alignment.
double pa_majpe(const std::vector<Pose>& pred, const std::vector<Pose>& gt);

}  // namespace rpe
