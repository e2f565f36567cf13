#include "randgrasp/render/image.hpp"

#include <fstream>

#include "randgrasp/core/errors.hpp"
#include "randgrasp/core/hash.hpp"

namespace randgrasp::render {

std::uint64_t image_hash(const Image& img) {
    core::Fnv1a64 h;
    const std::uint32_t w = static_cast<std::uint32_t>(img.width);
    const std::uint32_t ht = static_cast<std::uint32_t>(img.height);
    h.update(&w, sizeof(w));
    h.update(&ht, sizeof(ht));
    h.update(img.pixels.data(), img.pixels.size());
    return h.digest();
}

void write_ppm(const Image& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw core::IoFailure("cannot write image: " + path);
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
    if (!out) throw core::IoFailure("failed writing image: " + path);
}

Image read_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw core::IoFailure("cannot open image: " + path);
    std::string magic;
    int w = 0, h = 0, maxval = 0;
    in >> magic >> w >> h >> maxval;
    if (magic != "P6" || maxval != 255 || w <= 0 || h <= 0)
        throw core::CorruptData("not a supported P6 ppm: " + path);
    in.get();  // single whitespace after the header
    Image img(w, h);
    in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
    if (!in) throw core::CorruptData("truncated ppm: " + path);
    return img;
}

}  // namespace randgrasp::render
