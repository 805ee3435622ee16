#include "rpe/io.hpp"

#include <cctype>
#include <cinttypes>
#include <cstdio>
#include <cstring>

#include "rpe/detail/bytes.hpp"
#include "rpe/errors.hpp"

namespace rpe {
namespace {

using detail::ByteReader;
using detail::check_magic;
using detail::put_f32;
using detail::put_u32;
using detail::read_file;
using detail::write_file;

// Guards R*A*D*(bytes per cell) against overflow and absurd sizes.
std::size_t checked_cells(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                          const std::string& path) {
    constexpr std::uint64_t kMaxCells = 1ull << 32;
    if (a == 0 || b == 0 || c == 0) {
        throw DimensionError(path + ": zero dimension in header");
    }
    if (a > kMaxCells || b > kMaxCells || c > kMaxCells ||
        a * b / a != b || (a * b) * c / (a * b) != c || a * b * c > kMaxCells) {
        throw DimensionError(path + ": dimension overflow in header");
    }
    return static_cast<std::size_t>(a * b * c);
}

bool needs_quotes(const std::string& v) {
    if (v.empty()) return true;
    for (char ch : v) {
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == '"') {
            return true;
        }
    }
    return false;
}

void check_key(const std::string& k) {
    if (k.empty()) {
        throw IoError("record: empty key");
    }
    for (char ch : k) {
        if (!((ch >= 'a' && ch <= 'z') || ch == '_')) {
            throw IoError("record: key '" + k + "' must match [a-z_]+");
        }
    }
}

}  // namespace

void write_cube(const std::string& path, const RadCube& cube) {
    std::string buf;
    buf.reserve(20 + cube.data.size() * 8);
    buf.append("RADC", 4);
    put_u32(buf, kCubeFormatVersion);
    put_u32(buf, static_cast<std::uint32_t>(cube.r));
    put_u32(buf, static_cast<std::uint32_t>(cube.a));
    put_u32(buf, static_cast<std::uint32_t>(cube.d));
    for (const auto& z : cube.data) {
        put_f32(buf, z.real());
        put_f32(buf, z.imag());
    }
    write_file(path, buf);
}

RadCube read_cube(const std::string& path) {
    const std::string buf = read_file(path);
    ByteReader r{buf, 0, path};
    check_magic(r, "RADC");
    const std::uint32_t version = r.u32();
    if (version != kCubeFormatVersion) {
        throw IoError(path + ": unsupported cube version");
    }
    const std::uint32_t R = r.u32();
    const std::uint32_t A = r.u32();
    const std::uint32_t D = r.u32();
    const std::size_t cells = checked_cells(R, A, D, path);
    if (buf.size() < r.pos + cells * 8) {
        throw TruncatedError(path + ": truncated payload");
    }
    if (buf.size() > r.pos + cells * 8) {
        throw IoError(path + ": trailing bytes after payload");
    }
    RadCube cube;
    cube.r = static_cast<int>(R);
    cube.a = static_cast<int>(A);
    cube.d = static_cast<int>(D);
    cube.data.resize(cells);
    for (std::size_t i = 0; i < cells; ++i) {
        const float re = r.f32();
        const float im = r.f32();
        cube.data[i] = {re, im};
    }
    return cube;
}

RadCube read_cube(const std::string& path, const RadarConfig& cfg) {
    RadCube cube = read_cube(path);
    if (cube.a != cfg.n_a || cube.d != cfg.n_d || cube.r > cfg.n_s) {
        throw DimensionError(path + ": cube dims do not match radar config");
    }
    cube.axes = build_axis_maps(cfg, derive_params(cfg), cube.r);
    return cube;
}

void write_poses(const std::string& path, const std::vector<Pose>& poses) {
    const int joints = poses.empty() ? 0 : poses.front().joint_count();
    for (const auto& p : poses) {
        if (p.joint_count() != joints) {
            throw DimensionError(path + ": inconsistent joint counts");
        }
    }
    std::string buf;
    buf.reserve(20 + poses.size() * static_cast<std::size_t>(joints) * 12);
    buf.append("POSE", 4);
    put_u32(buf, kPoseFormatVersion);
    put_u32(buf, static_cast<std::uint32_t>(poses.size()));
    put_u32(buf, static_cast<std::uint32_t>(joints));
    put_u32(buf, 3);
    for (const auto& p : poses) {
        for (const auto& j : p.joints) {
            put_f32(buf, j[0]);
            put_f32(buf, j[1]);
            put_f32(buf, j[2]);
        }
    }
    write_file(path, buf);
}

std::vector<Pose> read_poses(const std::string& path) {
    const std::string buf = read_file(path);
    ByteReader r{buf, 0, path};
    check_magic(r, "POSE");
    const std::uint32_t version = r.u32();
    if (version != kPoseFormatVersion) {
        throw IoError(path + ": unsupported pose version");
    }
    const std::uint32_t frames = r.u32();
    const std::uint32_t joints = r.u32();
    const std::uint32_t coords = r.u32();
    if (coords != 3) {
        throw IoError(path + ": expected 3 coordinates per joint");
    }
    std::size_t values = 0;
    if (frames != 0) {
        values = checked_cells(frames, joints, coords, path);
    }
    if (buf.size() < r.pos + values * 4) {
        throw TruncatedError(path + ": truncated payload");
    }
    if (buf.size() > r.pos + values * 4) {
        throw IoError(path + ": trailing bytes after payload");
    }
    std::vector<Pose> poses(frames, Pose(static_cast<int>(joints)));
    for (auto& p : poses) {
        for (auto& j : p.joints) {
            j[0] = r.f32();
            j[1] = r.f32();
            j[2] = r.f32();
        }
    }
    return poses;
}

void Record::add(const std::string& key, const std::string& value) {
    check_key(key);
    fields.emplace_back(key, value);
}

void Record::add(const std::string& key, double value) {
    add(key, format_double(value));
}

void Record::add(const std::string& key, std::int64_t value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%" PRId64, value);
    add(key, std::string(buf));
}

const std::string& Record::get(const std::string& key) const {
    for (const auto& [k, v] : fields) {
        if (k == key) return v;
    }
    throw IoError("record: missing key '" + key + "'");
}

bool Record::has(const std::string& key) const {
    for (const auto& [k, v] : fields) {
        if (k == key) return true;
    }
    return false;
}

double Record::get_double(const std::string& key) const {
    const std::string& v = get(key);
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0') {
        throw IoError("record: field '" + key + "' is not a number");
    }
    return x;
}

std::int64_t Record::get_int(const std::string& key) const {
    const std::string& v = get(key);
    char* end = nullptr;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0') {
        throw IoError("record: field '" + key + "' is not an integer");
    }
    return static_cast<std::int64_t>(x);
}

std::string format_double(double v) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return std::string(buf);
}

std::string emit_record(const Record& rec) {
    std::string line;
    bool first = true;
    for (const auto& [k, v] : rec.fields) {
        check_key(k);
        if (!first) line.push_back(' ');
        first = false;
        line += k;
        line.push_back('=');
        if (needs_quotes(v)) {
            if (v.find('"') != std::string::npos) {
                throw IoError("record: value for '" + k + "' contains a quote");
            }
            line.push_back('"');
            line += v;
            line.push_back('"');
        } else {
            line += v;
        }
    }
    return line;
}

Record parse_record(const std::string& line) {
    Record rec;
    std::size_t i = 0;
    const std::size_t n = line.size();
    while (i < n) {
        while (i < n && line[i] == ' ') ++i;
        if (i >= n) break;
        const std::size_t eq = line.find('=', i);
        if (eq == std::string::npos) {
            throw IoError("record: field without '='");
        }
        std::string key = line.substr(i, eq - i);
        check_key(key);
        i = eq + 1;
        std::string value;
        if (i < n && line[i] == '"') {
            const std::size_t close = line.find('"', i + 1);
            if (close == std::string::npos) {
                throw IoError("record: unterminated quoted value");
            }
            value = line.substr(i + 1, close - i - 1);
            i = close + 1;
        } else {
            std::size_t end = line.find(' ', i);
            if (end == std::string::npos) end = n;
            value = line.substr(i, end - i);
            i = end;
        }
        rec.fields.emplace_back(std::move(key), std::move(value));
    }
    if (rec.fields.empty()) {
        throw IoError("record: empty line");
    }
    return rec;
}

void write_records(const std::string& path, const std::vector<Record>& recs) {
    std::string buf;
    for (const auto& r : recs) {
        buf += emit_record(r);
        buf.push_back('\n');
    }
    write_file(path, buf);
}

std::vector<Record> read_records(const std::string& path) {
    const std::string buf = read_file(path);
    std::vector<Record> recs;
    std::size_t start = 0;
    while (start < buf.size()) {
        std::size_t end = buf.find('\n', start);
        if (end == std::string::npos) end = buf.size();
        if (end > start) {
            recs.push_back(parse_record(buf.substr(start, end - start)));
        }
        start = end + 1;
    }
    return recs;
}

}  // namespace rpe
