#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "longiprog/graph.hpp"

namespace longiprog {

// Builds a scalar output node from the given input leaves.
using ScalarBuilder =
    std::function<Graph::NodeId(Graph&, const std::vector<Graph::NodeId>&)>;

struct GradCheckReport {
  double max_rel_error = 0.0;
  int worst_input = -1;        // which input tensor
  std::int64_t worst_element = -1;
  double analytic = 0.0;
  double numeric = 0.0;
};

// Compares reverse-mode gradients against central finite differences for
// every element of every input. Relative error per element is
// |a - n| / max(1, |a| + |n|). delta must lie in [1e-7, 1e-3].
GradCheckReport grad_check(const ScalarBuilder& build, const std::vector<Tensor>& inputs,
                           double delta);

}  // namespace longiprog
