#pragma once

#include <array>
#include <cstdint>

namespace randgrasp::scene {

// Seeded 2D gradient noise. Pure integer/multiply-add math, so values are
// bit-identical across platforms.
class PerlinField {
  public:
    explicit PerlinField(std::uint64_t seed);

    // Single octave; zero at integer lattice points, range [-1, 1].
    double sample(double x, double y) const;

    // Octave blend with per-octave lattice offsets; range [-1, 1].
    double fbm(double x, double y, int octaves, double base_freq) const;

  private:
    std::array<std::uint8_t, 512> perm_;
    std::array<double, 64> octave_offsets_;  // 2 per octave, up to 32 octaves
};

// value in [-1, 1]; continuous in (x, y); deterministic in (seed, octaves, base_freq)
double perlin(double x, double y, std::uint64_t seed, int octaves, double base_freq);

}  // namespace randgrasp::scene
