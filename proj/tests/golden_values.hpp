// Frozen determinism golden values, recorded on the reference toolchain
// (gcc, x86-64-v3, -ffp-contract=off). A mismatch means the engine's output
// bytes changed, which invalidates reproducibility of existing artifacts.
#pragma once

#include <cstdint>

namespace golden {

// fnv1a64 of synthesize_texture(defaults, seed=42, resolution=64).pixels
inline constexpr std::uint64_t kTextureSeed42Hash = 17843603100010824801ULL;

// image_hash of the canonical render: sample_scene(default cfg, seed=7),
// reference arm at reference_home)
inline constexpr std::uint64_t kRenderSeed7Hash = 7260870842122120706ULL;

// perlin(1.375, 2.9125, seed=42, octaves=4, base_freq=3.0)
inline constexpr double kPerlinProbe = 0.1501566524812151;

}  // namespace golden
