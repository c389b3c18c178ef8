#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "longiprog/tensor.hpp"

namespace longiprog {

struct AdamConfig {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Per-parameter-tensor moment estimates. step_count advances by exactly
// one per adam_update call.
struct AdamState {
  AdamConfig config;
  std::int64_t step_count = 0;
  std::vector<Tensor> first_moment;
  std::vector<Tensor> second_moment;

  static AdamState init(const std::vector<Tensor>& params, AdamConfig config);
};

// Bias-corrected Adam rule applied elementwise to every tensor. Throws
// NumericError naming the offending tensor on non-finite gradients.
// Single-writer: callers must not run two updates concurrently.
void adam_update(std::vector<Tensor*>& params, const std::vector<Tensor>& grads, AdamState& state,
                 const std::vector<std::string>& names = {});

}  // namespace longiprog
