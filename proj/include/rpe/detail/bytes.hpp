#pragma once

// Little-endian byte packing shared by the binary file formats.

#include <bit>
#include <cstdint>
#include <fstream>
#include <string>

#include "rpe/errors.hpp"

namespace rpe::detail {

inline void put_u32(std::string& buf, std::uint32_t v) {
    buf.push_back(static_cast<char>(v & 0xff));
    buf.push_back(static_cast<char>((v >> 8) & 0xff));
    buf.push_back(static_cast<char>((v >> 16) & 0xff));
    buf.push_back(static_cast<char>((v >> 24) & 0xff));
}

inline void put_f32(std::string& buf, float v) {
    put_u32(buf, std::bit_cast<std::uint32_t>(v));
}

struct ByteReader {
    const std::string& buf;
    std::size_t pos = 0;
    const std::string& path;

    std::uint32_t u32() {
        if (pos + 4 > buf.size()) {
            throw TruncatedError(path + ": truncated header");
        }
        std::uint32_t v = 0;
        v |= static_cast<std::uint8_t>(buf[pos]);
        v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(buf[pos + 1])) << 8;
        v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(buf[pos + 2])) << 16;
        v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(buf[pos + 3])) << 24;
        pos += 4;
        return v;
    }
    float f32() { return std::bit_cast<float>(u32()); }
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(path + ": cannot open for reading");
    }
    std::string buf((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
    return buf;
}

inline void write_file(const std::string& path, const std::string& buf) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(path + ": cannot open for writing");
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) {
        throw IoError(path + ": write failed");
    }
}

inline void check_magic(ByteReader& r, const char* magic) {
    if (r.buf.size() < 4 ||
        r.buf.compare(0, 4, magic, 4) != 0) {
        throw BadMagicError(r.path + ": bad magic");
    }
    r.pos = 4;
}

}  // namespace rpe::detail
