#pragma once

#include <functional>
#include <vector>

#include "longiprog/tensor.hpp"

namespace longiprog {

enum class Padding { kValid, kSame };

// Reverse-mode tape. Ops append nodes as they execute, so node creation
// order is already a topological order (a node's parents always have
// smaller ids, which also rules out cycles by construction). backward()
// walks ids in reverse, giving a fixed accumulation order and therefore
// bit-reproducible gradients.
class Graph {
 public:
  using NodeId = int;

  NodeId input(Tensor value);
  NodeId input(const Tensor& value);

  const Tensor& value(NodeId id) const { return nodes_[static_cast<std::size_t>(id)].value; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }

  // Gradient of the last backward() root w.r.t. node id. Nodes the root
  // does not depend on report all-zero gradients.
  const Tensor& grad(NodeId id);

  // Seeds d(root)/d(root) = 1 and accumulates gradients into every
  // ancestor. root must be scalar.
  void backward(NodeId root);

  // Elementwise.
  NodeId add(NodeId a, NodeId b);
  NodeId mul(NodeId a, NodeId b);
  NodeId one_minus(NodeId a);
  NodeId scale(NodeId a, double factor);
  NodeId relu(NodeId a);
  NodeId sigmoid(NodeId a);
  NodeId tanh(NodeId a);

  // out_j = sum_i x_i * w_ij for x: [n], w: [n, m].
  NodeId matvec(NodeId x, NodeId w);
  // x^T w + b.
  NodeId dense(NodeId x, NodeId w, NodeId b);

  // input: [H, W, Cin], kernels: [k, k, Cin, Cout].
  NodeId conv2d(NodeId in, NodeId kernels, int stride, Padding padding);
  // Adds bias b: [C] to every spatial position of in: [H, W, C].
  NodeId channel_bias(NodeId in, NodeId b);
  // [H, W, C] -> [C] per-channel spatial mean.
  NodeId global_avg_pool(NodeId in);

  // Binary cross-entropy of a scalar probability against label {0,1}.
  // p is clamped to [kBceEps, 1-kBceEps] before the logs; positives are
  // weighted by pos_weight (1 = the plain unweighted loss).
  NodeId bce_loss(NodeId p, int label, double pos_weight = 1.0);

  // Mean of scalar nodes (batch loss).
  NodeId mean_of(const std::vector<NodeId>& xs);

  // Fixed-weight contraction to a scalar; weights are constants, not
  // parameters. Used to reduce tensor-valued ops for gradient checks.
  NodeId dot_const(NodeId x, Tensor weights);

  static constexpr double kBceEps = 1e-7;

 private:
  struct Node {
    Tensor value;
    std::vector<NodeId> parents;
    std::function<void(Graph&, NodeId)> back;  // accumulates into parent grads
  };

  NodeId emplace(Tensor value, std::vector<NodeId> parents,
                 std::function<void(Graph&, NodeId)> back);
  Tensor& grad_ref(NodeId id);

  std::vector<Node> nodes_;
  std::vector<Tensor> grads_;
};

// Output spatial extent of a convolution along one axis.
int conv_output_extent(int input, int kernel, int stride, Padding padding);

// Stable logistic function; also exposed value-level since several
// modules need it outside a tape.
double sigmoid(double x);

}  // namespace longiprog
