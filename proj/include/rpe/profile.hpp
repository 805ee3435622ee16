#pragma once

// Named hyperparameter bundles covering the accuracy/cost trade-off, plus a
// plain-text `key = value` file format for them.  Angles live in degrees at
// this layer (the file format and the shipped tables use degrees); they are
// converted to radians only when a spatial mask is built.

#include <string>
#include <vector>

#include "rpe/cfar.hpp"
#include "rpe/hmsf.hpp"
#include "rpe/mcp.hpp"
#include "rpe/ssp.hpp"

namespace rpe {

struct Profile {
    std::string name;

    // ssp
    double d_min = 0;          // m
    double d_max = 0;          // m
    double theta_min_deg = 0;  // deg
    double theta_max_deg = 0;  // deg

    // mcp
    DopplerThresholds thresholds;
    int window_radius = 2;

    // hmsf
    PoolSpec pool;
    FeatureGrid grid;

    // regressor hidden widths
    int h1 = 512;
    int h2 = 512;

    CfarParams cfar;

    SpatialBounds spatial_bounds() const;

    bool operator==(const Profile&) const = default;
};

// The five shipped operating points, ordered cheapest to most thorough.
extern const char* const kBuiltinProfileNames[5];

// Throws ConfigError for unknown names.
Profile builtin_profile(const std::string& name);

// `key = value` lines, '#' comments.  parse(emit(p)) == p exactly.
std::string emit_profile(const Profile& p);
Profile parse_profile(const std::string& text);

// Builtin name first, else a path to a profile file.
Profile load_profile(const std::string& name_or_path);

}  // namespace rpe
