#include "rpe/profile.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "rpe/errors.hpp"
#include "rpe/io.hpp"

namespace rpe {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kInf = std::numeric_limits<double>::infinity();

Profile make(const std::string& name, double d_min, double d_max,
             double theta_deg, double v_min, double v_max, double sigma_min,
             int k_coarse, int k_medium) {
    Profile p;
    p.name = name;
    p.d_min = d_min;
    p.d_max = d_max;
    p.theta_min_deg = -theta_deg;
    p.theta_max_deg = theta_deg;
    p.thresholds.v_min = v_min;
    p.thresholds.v_max = v_max;
    p.thresholds.sigma_min = sigma_min;
    p.thresholds.sigma_max = kInf;
    p.pool.s_c = k_coarse;
    p.pool.s_m = k_medium;
    return p;
}

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double to_double(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0') {
        throw ConfigError("profile: bad number for '" + key + "': " + v);
    }
    return x;
}

int to_int(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0') {
        throw ConfigError("profile: bad integer for '" + key + "': " + v);
    }
    return static_cast<int>(x);
}

}  // namespace

SpatialBounds Profile::spatial_bounds() const {
    return SpatialBounds{d_min, d_max, theta_min_deg * kDegToRad,
                         theta_max_deg * kDegToRad};
}

const char* const kBuiltinProfileNames[5] = {
    "ultra-light", "light", "balanced", "high-precision", "ultra-precision",
};

Profile builtin_profile(const std::string& name) {
    if (name == "ultra-light") {
        return make(name, 0.5, 2.0, 40.0, 0.3, 2.0, 0.5, 3, 5);
    }
    if (name == "light") {
        return make(name, 0.4, 2.5, 50.0, 0.2, 2.5, 0.4, 3, 5);
    }
    if (name == "balanced") {
        return make(name, 0.3, 3.0, 60.0, 0.1, 3.0, 0.3, 5, 9);
    }
    if (name == "high-precision") {
        return make(name, 0.2, 3.5, 70.0, 0.05, 3.5, 0.2, 7, 13);
    }
    if (name == "ultra-precision") {
        return make(name, 0.1, 4.0, 80.0, 0.05, 4.0, 0.1, 7, 13);
    }
    throw ConfigError("unknown builtin profile: " + name);
}

std::string emit_profile(const Profile& p) {
    std::ostringstream out;
    out << "# preprocessing profile\n";
    out << "name = " << p.name << "\n";
    out << "ssp.d_min = " << format_double(p.d_min) << "\n";
    out << "ssp.d_max = " << format_double(p.d_max) << "\n";
    out << "ssp.theta_min = " << format_double(p.theta_min_deg) << "\n";
    out << "ssp.theta_max = " << format_double(p.theta_max_deg) << "\n";
    out << "mcp.v_min = " << format_double(p.thresholds.v_min) << "\n";
    out << "mcp.v_max = " << format_double(p.thresholds.v_max) << "\n";
    out << "mcp.sigma_min = " << format_double(p.thresholds.sigma_min) << "\n";
    out << "mcp.sigma_max = " << format_double(p.thresholds.sigma_max) << "\n";
    out << "mcp.window_radius = " << p.window_radius << "\n";
    out << "hmsf.kernel_coarse = " << p.pool.s_c << "\n";
    out << "hmsf.kernel_medium = " << p.pool.s_m << "\n";
    out << "hmsf.grid_r = " << p.grid.g_r << "\n";
    out << "hmsf.grid_a = " << p.grid.g_a << "\n";
    out << "hmsf.grid_d = " << p.grid.g_d << "\n";
    out << "mlp.h1 = " << p.h1 << "\n";
    out << "mlp.h2 = " << p.h2 << "\n";
    out << "cfar.guard = " << p.cfar.guard << "\n";
    out << "cfar.train = " << p.cfar.train << "\n";
    out << "cfar.p_fa = " << format_double(p.cfar.p_fa) << "\n";
    return out.str();
}

Profile parse_profile(const std::string& text) {
    Profile p;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("profile: expected 'key = value', got: " + line);
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty()) {
            throw ConfigError("profile: empty key or value in: " + line);
        }
        if (key == "name") {
            p.name = val;
        } else if (key == "ssp.d_min") {
            p.d_min = to_double(key, val);
        } else if (key == "ssp.d_max") {
            p.d_max = to_double(key, val);
        } else if (key == "ssp.theta_min") {
            p.theta_min_deg = to_double(key, val);
        } else if (key == "ssp.theta_max") {
            p.theta_max_deg = to_double(key, val);
        } else if (key == "mcp.v_min") {
            p.thresholds.v_min = to_double(key, val);
        } else if (key == "mcp.v_max") {
            p.thresholds.v_max = to_double(key, val);
        } else if (key == "mcp.sigma_min") {
            p.thresholds.sigma_min = to_double(key, val);
        } else if (key == "mcp.sigma_max") {
            p.thresholds.sigma_max = to_double(key, val);
        } else if (key == "mcp.window_radius") {
            p.window_radius = to_int(key, val);
        } else if (key == "hmsf.kernel_coarse") {
            p.pool.s_c = to_int(key, val);
        } else if (key == "hmsf.kernel_medium") {
            p.pool.s_m = to_int(key, val);
        } else if (key == "hmsf.grid_r") {
            p.grid.g_r = to_int(key, val);
        } else if (key == "hmsf.grid_a") {
            p.grid.g_a = to_int(key, val);
        } else if (key == "hmsf.grid_d") {
            p.grid.g_d = to_int(key, val);
        } else if (key == "mlp.h1") {
            p.h1 = to_int(key, val);
        } else if (key == "mlp.h2") {
            p.h2 = to_int(key, val);
        } else if (key == "cfar.guard") {
            p.cfar.guard = to_int(key, val);
        } else if (key == "cfar.train") {
            p.cfar.train = to_int(key, val);
        } else if (key == "cfar.p_fa") {
            p.cfar.p_fa = to_double(key, val);
        } else {
            throw ConfigError("profile: unknown key '" + key + "'");
        }
    }
    return p;
}

Profile load_profile(const std::string& name_or_path) {
    for (const char* builtin : kBuiltinProfileNames) {
        if (name_or_path == builtin) return builtin_profile(name_or_path);
    }
    std::ifstream in(name_or_path, std::ios::binary);
    if (!in) {
        throw ConfigError("no builtin profile or readable file named '" +
                          name_or_path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_profile(buf.str());
}

}  // namespace rpe
