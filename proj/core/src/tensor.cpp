#include "longiprog/tensor.hpp"

#include <cmath>
#include <sstream>

#include "longiprog/errors.hpp"

namespace longiprog {

std::int64_t shape_numel(const std::vector<int>& shape) {
  std::int64_t n = 1;
  for (int d : shape) {
    if (d <= 0) throw InputError("tensor dimension must be positive, got " + std::to_string(d));
    n *= d;
  }
  return n;
}

Tensor::Tensor(std::vector<int> shape_in) : shape(std::move(shape_in)) {
  data.assign(static_cast<std::size_t>(shape_numel(shape)), 0.0);
}

Tensor::Tensor(std::vector<int> shape_in, std::vector<double> data_in)
    : shape(std::move(shape_in)), data(std::move(data_in)) {
  if (shape_numel(shape) != static_cast<std::int64_t>(data.size())) {
    throw InputError("tensor data length " + std::to_string(data.size()) +
                     " does not match shape " + shape_str());
  }
}

Tensor Tensor::full(std::vector<int> shape_in, double v) {
  Tensor t(std::move(shape_in));
  t.fill(v);
  return t;
}

bool Tensor::all_finite() const {
  for (double v : data) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void Tensor::fill(double v) {
  for (double& x : data) x = v;
}

std::string Tensor::shape_str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) os << "x";
    os << shape[i];
  }
  os << "]";
  return os.str();
}

}  // namespace longiprog
