#include "longiprog/image.hpp"

#include <cctype>
#include <cmath>
#include <fstream>

#include "longiprog/errors.hpp"

namespace longiprog {

Laterality laterality_from_string(const std::string& s) {
  if (s == "left") return Laterality::kLeft;
  if (s == "right") return Laterality::kRight;
  throw InputError("unknown laterality '" + s + "' (expected left|right)");
}

std::string to_string(Laterality lat) {
  return lat == Laterality::kLeft ? "left" : "right";
}

RawImage RawImage::blank(int width, int height, std::uint8_t value) {
  RawImage img;
  img.width = width;
  img.height = height;
  img.data.assign(static_cast<std::size_t>(width) * height * 3, value);
  return img;
}

void RawImage::validate() const {
  if (width < 16 || height < 16) {
    throw InputError("image dimensions must be >= 16, got " + std::to_string(width) + "x" +
                     std::to_string(height));
  }
  if (data.size() != static_cast<std::size_t>(width) * height * 3) {
    throw InputError("image buffer size does not match dimensions");
  }
}

namespace {
int read_ppm_int(std::istream& in, const std::string& path) {
  // Skips whitespace and '#' comments per the PPM grammar.
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (!std::isspace(c)) {
      break;
    }
    c = in.get();
  }
  if (c == EOF || !std::isdigit(c)) throw IoError("malformed PPM header in " + path);
  int value = 0;
  while (c != EOF && std::isdigit(c)) {
    value = value * 10 + (c - '0');
    c = in.get();
  }
  return value;
}
}  // namespace

RawImage read_ppm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open image " + path);
  char magic[2];
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || magic[1] != '6') {
    throw IoError("not a binary PPM (P6) file: " + path);
  }
  RawImage img;
  img.width = read_ppm_int(in, path);
  img.height = read_ppm_int(in, path);
  const int maxval = read_ppm_int(in, path);
  if (maxval != 255) throw IoError("unsupported PPM maxval " + std::to_string(maxval) + " in " + path);
  if (img.width <= 0 || img.height <= 0) throw IoError("bad PPM dimensions in " + path);
  img.data.resize(static_cast<std::size_t>(img.width) * img.height * 3);
  in.read(reinterpret_cast<char*>(img.data.data()), static_cast<std::streamsize>(img.data.size()));
  if (!in) throw IoError("truncated PPM payload in " + path);
  return img;
}

void write_ppm(const std::string& path, const RawImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write image " + path);
  out << "P6\n" << image.width << " " << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.data.data()),
            static_cast<std::streamsize>(image.data.size()));
  if (!out) throw IoError("failed writing image payload to " + path);
}

RawImage tensor_to_image(const Tensor& t) {
  if (t.rank() != 3 || (t.dim(2) != 1 && t.dim(2) != 3)) {
    throw InputError("tensor_to_image: expected [H,W,1|3], got " + t.shape_str());
  }
  RawImage img = RawImage::blank(t.dim(1), t.dim(0));
  const int channels = t.dim(2);
  for (int y = 0; y < t.dim(0); ++y) {
    for (int x = 0; x < t.dim(1); ++x) {
      for (int c = 0; c < 3; ++c) {
        const double v = t.at3(y, x, channels == 3 ? c : 0);
        const double clamped = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
        img.at(y, x, c) = static_cast<std::uint8_t>(std::lround(clamped * 255.0));
      }
    }
  }
  return img;
}

}  // namespace longiprog
