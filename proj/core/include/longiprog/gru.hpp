#pragma once

#include "longiprog/graph.hpp"
#include "longiprog/tensor.hpp"

namespace longiprog {

// Gated recurrent unit parameters. Gate convention used throughout:
//   z = sigmoid(x W_z + h U_z + b_z)        update gate
//   r = sigmoid(x W_r + h U_r + b_r)        reset gate
//   c = tanh(x W_c + (r*h) U_c + b_c)       candidate state
//   h' = (1 - z)*h + z*c
// so z -> 0 carries the previous state through unchanged.
struct GruParams {
  Tensor w_update, w_reset, w_cand;  // [F, H]
  Tensor u_update, u_reset, u_cand;  // [H, H]
  Tensor b_update, b_reset, b_cand;  // [H]

  static GruParams zeros(int input_size, int hidden_size);

  int input_size() const { return w_update.dim(0); }
  int hidden_size() const { return w_update.dim(1); }
  void validate() const;
};

// Node handles for one set of GRU parameters inserted into a tape.
struct GruNodes {
  Graph::NodeId w_update, w_reset, w_cand;
  Graph::NodeId u_update, u_reset, u_cand;
  Graph::NodeId b_update, b_reset, b_cand;
};

GruNodes insert_gru(Graph& g, const GruParams& params);

// One recurrence step on the tape; x: [F], h_prev: [H] -> [H].
Graph::NodeId gru_step(Graph& g, Graph::NodeId x, Graph::NodeId h_prev, const GruNodes& p);

// Value-level convenience wrapper (builds a throwaway tape).
Tensor gru_step(const Tensor& x, const Tensor& h_prev, const GruParams& params);

}  // namespace longiprog
