#pragma once

#include <array>
#include <string>
#include <vector>

#include "longiprog/image.hpp"
#include "longiprog/manifest.hpp"
#include "longiprog/tensor.hpp"

namespace longiprog {

struct PreprocessConfig {
  double crop_offset = 0.04;  // content threshold above background, in [0,1]
  int target_size = 64;

  void validate() const;
};

// Half-open crop window [x0, x1) x [y0, y1).
struct CropBox {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  int width() const { return x1 - x0; }
  int height() const { return y1 - y0; }
};

// Everything needed to replay the geometric part of preprocessing on an
// aligned auxiliary image (e.g. a ground-truth mask).
struct PreprocessTransform {
  CropBox crop;
  int target_size = 0;
  bool flipped = false;
};

// Per-channel median over the four 4x4 corner patches.
std::array<double, 3> estimate_background(const RawImage& image);

CropBox content_bounding_box(const RawImage& image, const PreprocessConfig& config);
RawImage crop_to_content(const RawImage& image, const PreprocessConfig& config);

// Exact value/255 mapping to [H,W,3] doubles.
Tensor rescale_intensity(const RawImage& image);

// Bilinear resize with half-pixel centers to target x target.
Tensor resize_bilinear(const Tensor& image, int target_size);

Tensor flip_horizontal(const Tensor& image);
Tensor flip_if_right(const Tensor& image, Laterality laterality);

// Full pipeline: crop -> rescale -> resize -> flip-if-right. When
// transform_out is given it receives the applied geometry.
Tensor preprocess_image(const RawImage& image, const PreprocessConfig& config,
                        PreprocessTransform* transform_out = nullptr);

// Replays crop/resize/flip on an image aligned with the original (masks).
Tensor apply_transform(const RawImage& aligned, const PreprocessTransform& transform);

struct Exclusion {
  std::string id;
  std::string reason;
};

struct EligibilityResult {
  std::vector<SequenceRecord> eligible;
  std::vector<Exclusion> excluded;
};

// Keeps sequences with exactly required_visits observed visits, none of
// them already at the advanced stage. Exclusion is logged, not an error.
EligibilityResult filter_eligible(const std::vector<SequenceRecord>& records,
                                  int required_visits = 3);

}  // namespace longiprog
