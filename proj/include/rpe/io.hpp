#pragma once

// On-disk formats.  Everything is little-endian and fixed-layout; files
// written on any platform read back bit-identically on any other.
//
// Cube file ("RADC"):   magic[4] version u32 | R u32 | A u32 | D u32 |
//                       R*A*D complex cells as (re, im) float32 pairs,
//                       row-major r, a, d.
// Pose file ("POSE"):   magic[4] version u32 | frames u32 | joints u32 |
//                       coords u32 (= 3) | frames*joints*3 float32, mm.
// Metric/feature records: newline-delimited text, one record per line,
// space-separated key=value fields.  Keys match [a-z_]+; values are
// decimal literals or double-quoted strings (no embedded quotes).

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "rpe/radar.hpp"
#include "rpe/tensor.hpp"

namespace rpe {

inline constexpr std::uint32_t kCubeFormatVersion = 1;
inline constexpr std::uint32_t kPoseFormatVersion = 1;

void write_cube(const std::string& path, const RadCube& cube);

// Axis maps are not stored in the file; the overload taking a config
// rebuilds them (and checks the stored dims against it).
RadCube read_cube(const std::string& path);
RadCube read_cube(const std::string& path, const RadarConfig& cfg);

void write_poses(const std::string& path, const std::vector<Pose>& poses);
std::vector<Pose> read_poses(const std::string& path);

// One record = ordered key/value fields.
struct Record {
    std::vector<std::pair<std::string, std::string>> fields;

    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, double value);
    void add(const std::string& key, std::int64_t value);
    // Throws IoError if the key is absent.
    const std::string& get(const std::string& key) const;
    bool has(const std::string& key) const;
    double get_double(const std::string& key) const;
    std::int64_t get_int(const std::string& key) const;
};

// Exact decimal form of a double: round-trips through parse_record.
std::string format_double(double v);

std::string emit_record(const Record& rec);
Record parse_record(const std::string& line);

void write_records(const std::string& path, const std::vector<Record>& recs);
std::vector<Record> read_records(const std::string& path);

}  // namespace rpe
