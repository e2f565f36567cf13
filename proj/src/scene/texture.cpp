#include "randgrasp/scene/texture.hpp"

#include <cmath>

#include "randgrasp/core/errors.hpp"
#include "randgrasp/core/rng.hpp"
#include "randgrasp/scene/perlin.hpp"

namespace randgrasp::scene {

Color TextureMap::sample(double u, double v) const {
    const int n = resolution;
    int x = static_cast<int>(std::floor(u * n)) % n;
    int y = static_cast<int>(std::floor(v * n)) % n;
    if (x < 0) x += n;
    if (y < 0) y += n;
    const std::size_t idx = 3 * (static_cast<std::size_t>(y) * n + x);
    return Color(pixels[idx] / 255.0, pixels[idx + 1] / 255.0, pixels[idx + 2] / 255.0);
}

TextureMap TextureMap::solid(int resolution, const Color& c) {
    TextureMap t;
    t.resolution = resolution;
    t.pixels.resize(static_cast<std::size_t>(resolution) * resolution * 3);
    const auto r = static_cast<std::uint8_t>(std::lround(std::clamp(c.x(), 0.0, 1.0) * 255.0));
    const auto g = static_cast<std::uint8_t>(std::lround(std::clamp(c.y(), 0.0, 1.0) * 255.0));
    const auto b = static_cast<std::uint8_t>(std::lround(std::clamp(c.z(), 0.0, 1.0) * 255.0));
    for (std::size_t i = 0; i < t.pixels.size(); i += 3) {
        t.pixels[i] = r;
        t.pixels[i + 1] = g;
        t.pixels[i + 2] = b;
    }
    return t;
}

namespace {

double compose(Composition g, double n, double sine_scale, double sine_shift) {
    switch (g) {
        case Composition::kIdentity: return n;
        case Composition::kSine: return std::sin(sine_scale * n + sine_shift);
        case Composition::kAbsolute: return 2.0 * std::abs(n) - 1.0;
        case Composition::kRidge: return 1.0 - 2.0 * std::abs(n);
    }
    return n;
}

}  // namespace

TextureMap synthesize_texture(const TextureParams& params, std::uint64_t seed, int resolution) {
    if (resolution < 16) throw core::InvariantViolation("synthesize_texture: resolution must be >= 16");

    core::Rng rng(core::derive_seed(seed, 0x7e47));
    const Color palette_a(rng.uniform01(), rng.uniform01(), rng.uniform01());
    const Color palette_b(rng.uniform01(), rng.uniform01(), rng.uniform01());
    const auto g = params.forced_composition >= 0
                       ? static_cast<Composition>(params.forced_composition)
                       : static_cast<Composition>(rng.uniform_index(kNumCompositions));
    const double sine_scale = rng.uniform(2.0, 8.0);
    const double sine_shift = rng.uniform(0.0, 2.0 * M_PI);

    const PerlinField field(core::derive_seed(seed, 0xf1e1d));

    TextureMap t;
    t.resolution = resolution;
    t.seed = seed;
    t.pixels.resize(static_cast<std::size_t>(resolution) * resolution * 3);
    std::size_t idx = 0;
    for (int y = 0; y < resolution; ++y) {
        for (int x = 0; x < resolution; ++x) {
            const double u = (x + 0.5) / resolution;
            const double v = (y + 0.5) / resolution;
            const double n = field.fbm(u, v, params.octaves, params.base_freq);
            const double s = 0.5 * (compose(g, n, sine_scale, sine_shift) + 1.0);
            const Color c = palette_a + s * (palette_b - palette_a);
            for (int ch = 0; ch < 3; ++ch)
                t.pixels[idx++] =
                    static_cast<std::uint8_t>(std::lround(std::clamp(c[ch], 0.0, 1.0) * 255.0));
        }
    }
    return t;
}

}  // namespace randgrasp::scene
