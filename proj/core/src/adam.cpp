#include "longiprog/adam.hpp"

#include <cmath>

#include "longiprog/errors.hpp"

namespace longiprog {

AdamState AdamState::init(const std::vector<Tensor>& params, AdamConfig config) {
  AdamState s;
  s.config = config;
  s.first_moment.reserve(params.size());
  s.second_moment.reserve(params.size());
  for (const auto& p : params) {
    s.first_moment.push_back(Tensor::zeros(p.shape));
    s.second_moment.push_back(Tensor::zeros(p.shape));
  }
  return s;
}

void adam_update(std::vector<Tensor*>& params, const std::vector<Tensor>& grads, AdamState& state,
                 const std::vector<std::string>& names) {
  if (params.size() != grads.size() || params.size() != state.first_moment.size()) {
    throw InputError("adam_update: parameter/gradient/state counts disagree");
  }
  auto tensor_name = [&](std::size_t i) {
    return i < names.size() ? names[i] : "tensor#" + std::to_string(i);
  };
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!params[i]->same_shape(grads[i])) {
      throw InputError("adam_update: gradient shape " + grads[i].shape_str() +
                       " does not match parameter " + tensor_name(i) + " " +
                       params[i]->shape_str());
    }
    if (!grads[i].all_finite()) {
      throw NumericError("adam_update: non-finite gradient for " + tensor_name(i));
    }
  }

  state.step_count += 1;
  const auto& c = state.config;
  const double t = static_cast<double>(state.step_count);
  const double bc1 = 1.0 - std::pow(c.beta1, t);
  const double bc2 = 1.0 - std::pow(c.beta2, t);

  for (std::size_t i = 0; i < params.size(); ++i) {
    Tensor& p = *params[i];
    const Tensor& g = grads[i];
    Tensor& m = state.first_moment[i];
    Tensor& v = state.second_moment[i];
    for (std::int64_t j = 0; j < p.numel(); ++j) {
      m[j] = c.beta1 * m[j] + (1.0 - c.beta1) * g[j];
      v[j] = c.beta2 * v[j] + (1.0 - c.beta2) * g[j] * g[j];
      const double m_hat = m[j] / bc1;
      const double v_hat = v[j] / bc2;
      p[j] -= c.lr * m_hat / (std::sqrt(v_hat) + c.epsilon);
    }
  }
}

}  // namespace longiprog
