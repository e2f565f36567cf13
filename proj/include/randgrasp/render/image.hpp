#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "randgrasp/scene/texture.hpp"

namespace randgrasp::render {

using scene::Color;

// 8-bit rgb framebuffer, row-major.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    Image() = default;
    Image(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3, 0) {}

    std::size_t index(int x, int y) const { return 3 * (static_cast<std::size_t>(y) * width + x); }

    void set(int x, int y, const Color& c) {
        const std::size_t i = index(x, y);
        for (int ch = 0; ch < 3; ++ch)
            pixels[i + ch] = static_cast<std::uint8_t>(std::lround(std::clamp(c[ch], 0.0, 1.0) * 255.0));
    }

    Color get(int x, int y) const {
        const std::size_t i = index(x, y);
        return Color(pixels[i] / 255.0, pixels[i + 1] / 255.0, pixels[i + 2] / 255.0);
    }

    bool operator==(const Image& o) const {
        return width == o.width && height == o.height && pixels == o.pixels;
    }
};

std::uint64_t image_hash(const Image& img);

// Binary PPM (P6) export/import.
void write_ppm(const Image& img, const std::string& path);
Image read_ppm(const std::string& path);

}  // namespace randgrasp::render
