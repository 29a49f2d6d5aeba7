#pragma once

// Netpbm PGM (P2 ASCII / P5 binary) reading and writing, the raw float64
// sidecar format, and the gray-centered display mapping for texture layers.
//
// .f64 layout: uint32 LE height, uint32 LE width, then height*width IEEE-754
// doubles, little-endian, row-major.

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "texdecomp/field.hpp"

namespace texdecomp {

using Bytes = std::vector<std::uint8_t>;

class PgmError : public std::runtime_error {
public:
    enum class Kind { MalformedHeader, TruncatedData, UnsupportedMaxval };

    PgmError(Kind kind, std::size_t offset, const std::string& detail)
        : std::runtime_error(std::string(kind_name(kind)) + " at byte " + std::to_string(offset) + ": " + detail),
          kind_(kind), offset_(offset) {}

    Kind kind() const noexcept { return kind_; }
    std::size_t offset() const noexcept { return offset_; }

    static const char* kind_name(Kind k) {
        switch (k) {
            case Kind::MalformedHeader: return "MalformedHeader";
            case Kind::TruncatedData: return "TruncatedData";
            case Kind::UnsupportedMaxval: return "UnsupportedMaxval";
        }
        return "PgmError";
    }

private:
    Kind kind_;
    std::size_t offset_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

class PgmCursor {
public:
    explicit PgmCursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::size_t offset() const noexcept { return pos_; }
    bool at_end() const noexcept { return pos_ >= bytes_.size(); }
    std::uint8_t peek() const noexcept { return bytes_[pos_]; }
    std::span<const std::uint8_t> rest() const noexcept { return bytes_.subspan(pos_); }
    void advance(std::size_t n) noexcept { pos_ += n; }

    void skip_space_and_comments() {
        while (!at_end()) {
            if (peek() == '#') {
                while (!at_end() && peek() != '\n' && peek() != '\r') ++pos_;
            } else if (std::isspace(peek())) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    /// Unsigned decimal token; `kind` is reported on failure.
    unsigned long read_uint(PgmError::Kind kind, const char* what) {
        skip_space_and_comments();
        const std::size_t start = pos_;
        if (at_end()) throw PgmError(kind, start, std::string("unexpected end of data reading ") + what);
        unsigned long value = 0;
        while (!at_end() && std::isdigit(peek())) {
            value = value * 10 + static_cast<unsigned long>(peek() - '0');
            if (value > std::numeric_limits<std::uint32_t>::max()) {
                throw PgmError(PgmError::Kind::MalformedHeader, start, std::string(what) + " out of range");
            }
            ++pos_;
        }
        if (pos_ == start) throw PgmError(kind, start, std::string("expected a decimal ") + what);
        if (!at_end() && !std::isspace(peek()) && peek() != '#') {
            throw PgmError(kind, pos_, std::string("unexpected character after ") + what);
        }
        return value;
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parse a P2 or P5 image, mapping samples to [0,1] by value / maxval.
inline ScalarField read_pgm(std::span<const std::uint8_t> bytes) {
    using Kind = PgmError::Kind;
    detail::PgmCursor cur(bytes);
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
        throw PgmError(Kind::MalformedHeader, 0, "missing P2/P5 magic number");
    }
    const bool binary = bytes[1] == '5';
    cur.advance(2);
    if (!cur.at_end() && !std::isspace(cur.peek()) && cur.peek() != '#') {
        throw PgmError(Kind::MalformedHeader, 2, "magic number not followed by whitespace");
    }

    const unsigned long width = cur.read_uint(Kind::MalformedHeader, "width");
    cur.skip_space_and_comments();
    const std::size_t height_offset = cur.offset();
    const unsigned long height = cur.read_uint(Kind::MalformedHeader, "height");
    if (width == 0 || height == 0) throw PgmError(Kind::MalformedHeader, height_offset, "zero image dimension");
    cur.skip_space_and_comments();
    const std::size_t maxval_offset = cur.offset();
    const unsigned long maxval = cur.read_uint(Kind::MalformedHeader, "maxval");
    if (maxval == 0 || maxval > 65535) {
        throw PgmError(Kind::UnsupportedMaxval, maxval_offset, "maxval " + std::to_string(maxval) + " not in [1, 65535]");
    }

    const std::size_t count = std::size_t(width) * std::size_t(height);
    std::vector<double> data(count);
    const double scale = 1.0 / double(maxval);

    if (binary) {
        // Exactly one whitespace byte separates maxval from the raster.
        if (cur.at_end() || !std::isspace(cur.peek())) {
            throw PgmError(Kind::MalformedHeader, cur.offset(), "expected a single whitespace before raster");
        }
        cur.advance(1);
        const std::size_t bps = maxval > 255 ? 2 : 1;
        const auto raster = cur.rest();
        if (raster.size() < count * bps) {
            throw PgmError(Kind::TruncatedData, cur.offset() + raster.size(),
                           "raster needs " + std::to_string(count * bps) + " bytes, found " +
                               std::to_string(raster.size()));
        }
        for (std::size_t k = 0; k < count; ++k) {
            const unsigned value = bps == 1 ? raster[k] : (unsigned(raster[2 * k]) << 8) | raster[2 * k + 1];
            if (value > maxval) {
                throw PgmError(Kind::MalformedHeader, cur.offset() + k * bps, "sample exceeds maxval");
            }
            data[k] = double(value) * scale;
        }
    } else {
        for (std::size_t k = 0; k < count; ++k) {
            const std::size_t at = cur.offset();
            cur.skip_space_and_comments();
            if (cur.at_end()) {
                throw PgmError(Kind::TruncatedData, cur.offset(),
                               "expected " + std::to_string(count) + " samples, found " + std::to_string(k));
            }
            const unsigned long value = cur.read_uint(Kind::TruncatedData, "sample");
            if (value > maxval) throw PgmError(Kind::MalformedHeader, at, "sample exceeds maxval");
            data[k] = double(value) * scale;
        }
    }
    return ScalarField(height, width, std::move(data));
}

inline ScalarField read_pgm(const std::string& bytes) {
    return read_pgm(std::span(reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()));
}

/// P5 encoding with values clamped to [0,1] and quantized round-half-up.
inline Bytes write_pgm(const ScalarField& field, unsigned maxval = 255) {
    if (maxval == 0 || maxval > 65535) throw ParameterError("write_pgm: maxval must lie in [1, 65535]");
    const std::string header =
        "P5\n" + std::to_string(field.width()) + " " + std::to_string(field.height()) + "\n" + std::to_string(maxval) + "\n";
    const std::size_t bps = maxval > 255 ? 2 : 1;
    Bytes out(header.begin(), header.end());
    out.reserve(header.size() + field.size() * bps);
    for (double x : field) {
        const double c = std::isnan(x) ? 0.0 : std::clamp(x, 0.0, 1.0);
        const auto q = static_cast<unsigned>(std::floor(c * double(maxval) + 0.5));
        if (bps == 2) out.push_back(static_cast<std::uint8_t>(q >> 8));
        out.push_back(static_cast<std::uint8_t>(q & 0xFF));
    }
    return out;
}

/// Display mapping for signed texture layers: clamp(v + 0.5, 0, 1).
inline ScalarField visualize_texture(const ScalarField& v) {
    ScalarField out = v;
    for (double& x : out) x = std::clamp(x + 0.5, 0.0, 1.0);
    return out;
}

inline Bytes write_f64(const ScalarField& field) {
    static_assert(sizeof(double) == 8 && std::numeric_limits<double>::is_iec559);
    Bytes out;
    out.reserve(8 + 8 * field.size());
    auto put = [&out](std::uint64_t bits, int n) {
        for (int b = 0; b < n; ++b) out.push_back(static_cast<std::uint8_t>(bits >> (8 * b)));
    };
    put(static_cast<std::uint32_t>(field.height()), 4);
    put(static_cast<std::uint32_t>(field.width()), 4);
    for (double x : field) put(std::bit_cast<std::uint64_t>(x), 8);
    return out;
}

inline ScalarField read_f64(std::span<const std::uint8_t> bytes) {
    auto get = [&bytes](std::size_t at, int n) {
        std::uint64_t v = 0;
        for (int b = 0; b < n; ++b) v |= std::uint64_t(bytes[at + b]) << (8 * b);
        return v;
    };
    if (bytes.size() < 8) throw IoError("f64: missing 8-byte header");
    const std::size_t h = get(0, 4), w = get(4, 4);
    if (h == 0 || w == 0) throw IoError("f64: zero dimension");
    if (bytes.size() != 8 + 8 * h * w) {
        throw IoError("f64: expected " + std::to_string(8 + 8 * h * w) + " bytes, found " + std::to_string(bytes.size()));
    }
    std::vector<double> data(h * w);
    for (std::size_t k = 0; k < data.size(); ++k) data[k] = std::bit_cast<double>(get(8 + 8 * k, 8));
    return ScalarField(h, w, std::move(data));
}

inline Bytes read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("error reading '" + path + "'");
    return data;
}

inline void write_file(const std::string& path, std::span<const std::uint8_t> data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) throw IoError("error writing '" + path + "'");
}

}  // namespace texdecomp
