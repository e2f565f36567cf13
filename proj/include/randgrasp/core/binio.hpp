#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <ostream>
#include <istream>
#include <string>
#include <vector>

#include "randgrasp/core/errors.hpp"

namespace randgrasp::core {

static_assert(std::endian::native == std::endian::little,
              "file formats are little-endian; big-endian hosts are unsupported");

// Thin little-endian writer over an ostream.
class BinWriter {
  public:
    explicit BinWriter(std::ostream& out) : out_(out) {}

    void bytes(const void* data, std::size_t n) {
        out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
        offset_ += n;
    }

    void u8(std::uint8_t v) { bytes(&v, 1); }
    void u32(std::uint32_t v) { bytes(&v, 4); }
    void u64(std::uint64_t v) { bytes(&v, 8); }
    void f64(double v) { bytes(&v, 8); }

    void f64s(const double* v, std::size_t n) { bytes(v, n * sizeof(double)); }

    std::uint64_t offset() const { return offset_; }
    bool ok() const { return static_cast<bool>(out_); }

  private:
    std::ostream& out_;
    std::uint64_t offset_ = 0;
};

class BinReader {
  public:
    explicit BinReader(std::istream& in, std::string what = "stream")
        : in_(in), what_(std::move(what)) {}

    void bytes(void* data, std::size_t n) {
        in_.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
        if (!in_) throw CorruptData(what_ + ": unexpected end of data");
        offset_ += n;
    }

    std::uint8_t u8() { std::uint8_t v; bytes(&v, 1); return v; }
    std::uint32_t u32() { std::uint32_t v; bytes(&v, 4); return v; }
    std::uint64_t u64() { std::uint64_t v; bytes(&v, 8); return v; }
    double f64() { double v; bytes(&v, 8); return v; }

    void f64s(double* v, std::size_t n) { bytes(v, n * sizeof(double)); }

    std::uint64_t offset() const { return offset_; }

  private:
    std::istream& in_;
    std::string what_;
    std::uint64_t offset_ = 0;
};

}  // namespace randgrasp::core
