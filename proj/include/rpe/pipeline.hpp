#pragma once

// End-to-end assembly: spatial gate -> motion gate -> multi-scale fusion ->
// pose regression, with per-stage wall time, an analytic flop model, and a
// file-driven latency benchmark.

#include <cstdint>
#include <string>
#include <vector>

#include "rpe/hmsf.hpp"
#include "rpe/io.hpp"
#include "rpe/mcp.hpp"
#include "rpe/mlp.hpp"
#include "rpe/profile.hpp"
#include "rpe/radar.hpp"
#include "rpe/ssp.hpp"
#include "rpe/tensor.hpp"

namespace rpe {

// Every report carries exactly these stages, in this order.  io covers
// cube deserialization and is zero when the pipeline runs on an in-memory
// cube; prn is the regressor forward pass.
extern const char* const kStageNames[5];

struct StageStat {
    std::string name;
    double seconds = 0;
    double pct = 0;          // share of the report's total time; sums to 100
    std::int64_t flops = 0;  // analytic estimate for this stage (not measured)
    std::int64_t bytes = 0;  // peak working-set estimate for this stage
};

struct StageReport {
    std::vector<StageStat> stages;
    double total_seconds = 0;

    // Throws ConfigError for names outside the fixed stage set.
    const StageStat& stage(const std::string& name) const;
};

struct PipelineOptions {
    // Pool each fused channel to a single cell (feature length 6) instead
    // of the profile's feature grid.
    bool single_cell_pooling = false;
};

// Everything the front end produces for one frame.
struct FrontEnd {
    SpatialMask spatial;
    DopplerMask motion;  // doppler mask restricted to the spatial gate
    MotionDescriptors descriptors;
    FeatureVector features;
};

// SSP -> MCP -> magnitude -> pooling pyramid -> feature vector.  Exactly
// the public stage functions called in sequence; no hidden rescaling.
FrontEnd extract_features(const RadCube& cube, const Profile& profile,
                          const PipelineOptions& opts = {});

struct PipelineOutput {
    Pose pose;
    FrontEnd front;
    StageReport report;
};

// extract_features + prn_forward with per-stage timing.  Numerically
// identical to calling the stages by hand.
PipelineOutput run_pipeline(const RadCube& cube, const Profile& profile,
                            const MlpWeights& weights,
                            const PipelineOptions& opts = {});

// ---------------------------------------------------------------------------
// Analytic cost model.  Counts are closed-form in the cube dims (R, A, D),
// the profile, and roi = the number of range-angle cells inside the
// profile's spatial bounds (roi = R*A when the bounds cover the whole
// grid).  Per-term accounting, flops:
//   ssp   mask build      R*A           one bounds test per cell
//         mask apply      2*roi*D       one complex multiply per kept cell
//   mcp   argmax          3*roi*D       |z|^2 = 2 mul + 1 add per kept cell
//         local stats     2*roi*(2w+1)^2  mean + variance passes
//         thresholds      4*roi         four compares per cell
//         descriptors     3*roi         mean/var/max accumulation
//   hmsf  magnitude       4*roi*D       re^2 + im^2 + add + sqrt
//         pooling         2*covered(s_c) + 2*covered(s_m)
//                                       multiply-add per covered input cell,
//                                       covered(k) = prod(floor(dim/k)*k)
//         upsampling      16*R*A*D*2    8 MACs per output cell, two scales
//         feature grid    2*covered(grid kernels)*3 channels
//   prn   forward         2*param_count(shape)
// Working-set bytes per stage are the sizes of that stage's live buffers.
struct FlopBreakdown {
    std::int64_t ssp = 0;
    std::int64_t mcp = 0;
    std::int64_t hmsf = 0;
    std::int64_t prn = 0;

    std::int64_t total() const { return ssp + mcp + hmsf + prn; }
};

FlopBreakdown flop_breakdown(const Profile& profile, const AxisMaps& axes,
                             const PipelineOptions& opts = {});
std::int64_t flop_estimate(const Profile& profile, const AxisMaps& axes,
                           const PipelineOptions& opts = {});

// Per-stage working-set estimates (bytes) for a cube of the given dims.
std::int64_t stage_bytes(const std::string& stage, const Profile& profile,
                         int r, int a, int d,
                         const PipelineOptions& opts = {});

// ---------------------------------------------------------------------------
// Pseudo range-angle-Doppler cube from two marginal heat maps: each range
// row of the range-Doppler map is normalized to sum 1 (all-zero rows stay
// zero) and multiplied into the range-angle map.  Inputs are (1, R, A, 1)
// and (1, R, 1, D); output is (1, R, A, D).  Throws DimensionError on
// shape mismatch and ConfigError on negative inputs.
RealCube build_pseudo_rad(const RealCube& h_ra, const RealCube& h_rd);

// ---------------------------------------------------------------------------
// Latency harness: runs the full pipeline over recorded cube files,
// repetitions times after one untimed warm-up pass, single-threaded.
// io measures deserialization.  Cube files carry no physical axis maps, so
// the radar config that produced them is needed to rebuild the axes.
// Returns per-stage mean/std across the timed repetitions plus the
// flop/bytes estimates for the first cube.
struct BenchStage {
    std::string name;
    double mean_ms = 0;
    double std_ms = 0;
    double pct = 0;  // of mean total, sums to 100
    std::int64_t flops = 0;
    std::int64_t bytes = 0;
};

struct BenchResult {
    std::vector<BenchStage> stages;
    double mean_total_ms = 0;
    int repetitions = 0;
    int frames = 0;
};

BenchResult bench(const std::vector<std::string>& cube_paths,
                  const Profile& profile, const MlpWeights& weights,
                  const RadarConfig& cfg, int repetitions,
                  const PipelineOptions& opts = {});

// One record per stage in the tensor_io record format.
std::vector<Record> bench_records(const BenchResult& r,
                                  const std::string& profile_name);

}  // namespace rpe
