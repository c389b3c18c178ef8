#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "longiprog/tensor.hpp"

namespace longiprog {

enum class Laterality { kLeft, kRight };

Laterality laterality_from_string(const std::string& s);
std::string to_string(Laterality lat);

// 8-bit RGB image, row-major H x W x 3.
struct RawImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;
  Laterality laterality = Laterality::kLeft;

  static RawImage blank(int width, int height, std::uint8_t value = 0);

  std::uint8_t& at(int y, int x, int c) {
    return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }
  std::uint8_t at(int y, int x, int c) const {
    return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }
  void validate() const;
};

// Binary PPM (P6, maxval 255). The writer emits a canonical header so
// regeneration is byte-exact.
RawImage read_ppm(const std::string& path);
void write_ppm(const std::string& path, const RawImage& image);

// Tensor [H,W,C] with values clamped to [0,1] and rounded to 8 bits; C
// must be 1 (replicated to gray RGB) or 3.
RawImage tensor_to_image(const Tensor& t);

}  // namespace longiprog
