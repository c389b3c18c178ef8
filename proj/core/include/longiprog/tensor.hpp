#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace longiprog {

// Dense row-major tensor of 64-bit reals. All training math runs in
// doubles; 32-bit narrowing exists only as a checkpoint storage mode.
struct Tensor {
  std::vector<int> shape;
  std::vector<double> data;

  Tensor() = default;
  explicit Tensor(std::vector<int> shape_in);  // zero-filled
  Tensor(std::vector<int> shape_in, std::vector<double> data_in);

  static Tensor zeros(std::vector<int> shape_in) { return Tensor(std::move(shape_in)); }
  static Tensor scalar(double v) { return Tensor({1}, {v}); }
  static Tensor full(std::vector<int> shape_in, double v);

  std::int64_t numel() const { return static_cast<std::int64_t>(data.size()); }
  int rank() const { return static_cast<int>(shape.size()); }
  int dim(int i) const { return shape[static_cast<std::size_t>(i)]; }

  double& operator[](std::int64_t i) { return data[static_cast<std::size_t>(i)]; }
  double operator[](std::int64_t i) const { return data[static_cast<std::size_t>(i)]; }

  // Strided accessors for the ranks the layers use.
  double& at2(int i, int j) { return data[static_cast<std::size_t>(i) * shape[1] + j]; }
  double at2(int i, int j) const { return data[static_cast<std::size_t>(i) * shape[1] + j]; }
  double& at3(int i, int j, int k) {
    return data[(static_cast<std::size_t>(i) * shape[1] + j) * shape[2] + k];
  }
  double at3(int i, int j, int k) const {
    return data[(static_cast<std::size_t>(i) * shape[1] + j) * shape[2] + k];
  }
  double& at4(int i, int j, int k, int l) {
    return data[((static_cast<std::size_t>(i) * shape[1] + j) * shape[2] + k) * shape[3] + l];
  }
  double at4(int i, int j, int k, int l) const {
    return data[((static_cast<std::size_t>(i) * shape[1] + j) * shape[2] + k) * shape[3] + l];
  }

  bool same_shape(const Tensor& other) const { return shape == other.shape; }
  bool all_finite() const;
  void fill(double v);

  std::string shape_str() const;  // "[3x4x5]" for diagnostics
};

std::int64_t shape_numel(const std::vector<int>& shape);

}  // namespace longiprog
