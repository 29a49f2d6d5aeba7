#pragma once

// Synthetic cartoon + texture test images: a bright disk on a gray
// background plus a vertical-stripe sinusoid.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "texdecomp/field.hpp"

namespace texdecomp {

struct SyntheticSpec {
    std::size_t height = 64;
    std::size_t width = 64;
    double disk_radius_frac = 0.3;  // fraction of min(height, width), in (0, 0.5)
    double texture_freq = 8.0;      // cycles per image width
    double texture_amp = 0.2;       // <= 0.5
    double noise_sigma = 0.0;       // optional uniform noise half-width, drawn from `seed`
    std::uint64_t seed = 0;
};

struct SyntheticImage {
    ScalarField f;
    ScalarField cartoon;
    ScalarField texture;
};

inline SyntheticImage generate_synthetic(const SyntheticSpec& spec) {
    if (!(spec.disk_radius_frac >= 0.0 && spec.disk_radius_frac < 0.5)) {
        throw ParameterError("generate_synthetic: disk_radius_frac must lie in [0, 0.5)");
    }
    if (!(std::abs(spec.texture_amp) <= 0.5)) throw ParameterError("generate_synthetic: texture_amp must be <= 0.5");

    const std::size_t h = spec.height, w = spec.width;
    SyntheticImage img{ScalarField(h, w), ScalarField(h, w), ScalarField(h, w)};
    const double ci = 0.5 * double(h - 1), cj = 0.5 * double(w - 1);
    const double r = spec.disk_radius_frac * double(std::min(h, w));

    std::mt19937_64 rng(spec.seed);
    for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t j = 0; j < w; ++j) {
            const double di = double(i) - ci, dj = double(j) - cj;
            const bool inside = r > 0.0 && di * di + dj * dj <= r * r;
            const double cartoon = 0.25 + (inside ? 0.5 : 0.0);
            const double texture =
                spec.texture_amp * std::sin(2.0 * std::numbers::pi * spec.texture_freq * double(j) / double(w));
            double noise = 0.0;
            if (spec.noise_sigma > 0.0) {
                // Mapped by hand so the stream is identical across standard libraries.
                const double unit = double(rng() >> 11) * 0x1.0p-53;
                noise = spec.noise_sigma * (2.0 * unit - 1.0);
            }
            img.cartoon(i, j) = cartoon;
            img.texture(i, j) = texture;
            img.f(i, j) = std::clamp(cartoon + texture + noise, 0.0, 1.0);
        }
    }
    return img;
}

}  // namespace texdecomp
