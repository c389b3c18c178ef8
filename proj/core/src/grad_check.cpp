#include "longiprog/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "longiprog/errors.hpp"

namespace longiprog {

namespace {
double eval_scalar(const ScalarBuilder& build, const std::vector<Tensor>& inputs, int which,
                   std::int64_t element, double delta) {
  Graph g;
  std::vector<Graph::NodeId> ids;
  ids.reserve(inputs.size());
  for (int i = 0; i < static_cast<int>(inputs.size()); ++i) {
    if (i == which) {
      Tensor perturbed = inputs[static_cast<std::size_t>(i)];
      perturbed[element] += delta;
      ids.push_back(g.input(std::move(perturbed)));
    } else {
      ids.push_back(g.input(inputs[static_cast<std::size_t>(i)]));
    }
  }
  const auto out = build(g, ids);
  const Tensor& v = g.value(out);
  if (v.numel() != 1) throw InputError("grad_check: builder must produce a scalar");
  if (!std::isfinite(v[0])) {
    throw NumericError("grad_check: non-finite value at input " + std::to_string(which) +
                       " element " + std::to_string(element));
  }
  return v[0];
}
}  // namespace

GradCheckReport grad_check(const ScalarBuilder& build, const std::vector<Tensor>& inputs,
                           double delta) {
  if (delta < 1e-7 || delta > 1e-3) {
    throw InputError("grad_check: delta must lie in [1e-7, 1e-3]");
  }

  Graph g;
  std::vector<Graph::NodeId> ids;
  ids.reserve(inputs.size());
  for (const auto& t : inputs) ids.push_back(g.input(t));
  const auto out = build(g, ids);
  g.backward(out);

  GradCheckReport report;
  for (int i = 0; i < static_cast<int>(inputs.size()); ++i) {
    const Tensor& analytic = g.grad(ids[static_cast<std::size_t>(i)]);
    for (std::int64_t e = 0; e < analytic.numel(); ++e) {
      const double plus = eval_scalar(build, inputs, i, e, delta);
      const double minus = eval_scalar(build, inputs, i, e, -delta);
      const double numeric = (plus - minus) / (2.0 * delta);
      const double a = analytic[e];
      if (!std::isfinite(numeric) || !std::isfinite(a)) {
        throw NumericError("grad_check: non-finite gradient at input " + std::to_string(i) +
                           " element " + std::to_string(e));
      }
      const double rel = std::fabs(a - numeric) / std::max(1.0, std::fabs(a) + std::fabs(numeric));
      if (rel > report.max_rel_error) {
        report.max_rel_error = rel;
        report.worst_input = i;
        report.worst_element = e;
        report.analytic = a;
        report.numeric = numeric;
      }
    }
  }
  return report;
}

}  // namespace longiprog
