#include "randgrasp/scene/perlin.hpp"

#include <cmath>

#include "randgrasp/core/errors.hpp"
#include "randgrasp/core/rng.hpp"

namespace randgrasp::scene {

namespace {

// 8 unit-ish gradient directions; diagonal entries are normalized so every
// gradient has length 1, which bounds the single-octave output by sqrt(2)/2.
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kGradients[8][2] = {
    {1, 0}, {-1, 0}, {0, 1}, {0, -1},
    {kInvSqrt2, kInvSqrt2}, {-kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}, {-kInvSqrt2, -kInvSqrt2},
};

double fade(double t) { return t * t * t * (t * (t * 6.0 - 15.0) + 10.0); }

double lerp(double a, double b, double t) { return a + t * (b - a); }

}  // namespace

PerlinField::PerlinField(std::uint64_t seed) {
    core::Rng rng(core::derive_seed(seed, 0x9e71))
        ;
    std::array<std::uint8_t, 256> table;
    for (int i = 0; i < 256; ++i) table[i] = static_cast<std::uint8_t>(i);
    for (int i = 255; i > 0; --i) {
        const auto j = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(i) + 1));
        std::swap(table[i], table[j]);
    }
    for (int i = 0; i < 512; ++i) perm_[i] = table[i & 255];

    core::Rng offs(core::derive_seed(seed, 0x0ff5));
    octave_offsets_[0] = 0.0;  // octave 0 keeps the raw lattice (zeros at integers)
    octave_offsets_[1] = 0.0;
    for (std::size_t i = 2; i < octave_offsets_.size(); ++i) octave_offsets_[i] = offs.uniform(0.0, 256.0);
}

double PerlinField::sample(double x, double y) const {
    const double fx = std::floor(x);
    const double fy = std::floor(y);
    const int xi = static_cast<int>(fx) & 255;
    const int yi = static_cast<int>(fy) & 255;
    const double dx = x - fx;
    const double dy = y - fy;

    auto grad = [&](int cx, int cy, double gx, double gy) {
        const int h = perm_[perm_[cx & 255] + (cy & 255)] & 7;
        return kGradients[h][0] * gx + kGradients[h][1] * gy;
    };

    const double n00 = grad(xi, yi, dx, dy);
    const double n10 = grad(xi + 1, yi, dx - 1.0, dy);
    const double n01 = grad(xi, yi + 1, dx, dy - 1.0);
    const double n11 = grad(xi + 1, yi + 1, dx - 1.0, dy - 1.0);

    const double u = fade(dx);
    const double v = fade(dy);
    const double value = lerp(lerp(n00, n10, u), lerp(n01, n11, u), v);
    // max |value| for unit gradients is sqrt(2)/2; rescale to [-1, 1]
    return value * (2.0 * kInvSqrt2);
}

double PerlinField::fbm(double x, double y, int octaves, double base_freq) const {
    if (octaves < 1) throw core::InvariantViolation("perlin: octaves must be >= 1");
    octaves = std::min<int>(octaves, static_cast<int>(octave_offsets_.size() / 2));

    double sum = 0.0;
    double amp = 1.0;
    double amp_total = 0.0;
    double freq = base_freq;
    for (int o = 0; o < octaves; ++o) {
        sum += amp * sample(x * freq + octave_offsets_[2 * o], y * freq + octave_offsets_[2 * o + 1]);
        amp_total += amp;
        amp *= 0.5;
        freq *= 2.0;
    }
    return sum / amp_total;
}

double perlin(double x, double y, std::uint64_t seed, int octaves, double base_freq) {
    return PerlinField(seed).fbm(x, y, octaves, base_freq);
}

}  // namespace randgrasp::scene
