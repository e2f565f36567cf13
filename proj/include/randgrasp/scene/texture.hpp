#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace randgrasp::scene {

using Color = Eigen::Vector3d;  // rgb in [0, 1]

// Noise-to-value compositions applied to the blended octaves.
enum class Composition : int { kIdentity = 0, kSine = 1, kAbsolute = 2, kRidge = 3 };
inline constexpr int kNumCompositions = 4;

struct TextureParams {
    int octaves = 3;
    double base_freq = 4.0;
    int forced_composition = -1;  // -1: sample from the composition set
};

struct TextureMap {
    int resolution = 0;
    std::vector<std::uint8_t> pixels;  // rgb, row-major, resolution x resolution
    std::uint64_t seed = 0;

    // Nearest-texel lookup with wrapping, uv in texture units.
    Color sample(double u, double v) const;

    static TextureMap solid(int resolution, const Color& c);
};

// Procedural texture: palette(g(fbm(x, y))) with a two-color palette and the
// composition g drawn from the fixed set above. Bit-identical per (params,
// seed, resolution).
TextureMap synthesize_texture(const TextureParams& params, std::uint64_t seed, int resolution);

}  // namespace randgrasp::scene
