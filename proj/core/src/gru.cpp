#include "longiprog/gru.hpp"

#include "longiprog/errors.hpp"

namespace longiprog {

GruParams GruParams::zeros(int input_size, int hidden_size) {
  GruParams p;
  p.w_update = Tensor({input_size, hidden_size});
  p.w_reset = Tensor({input_size, hidden_size});
  p.w_cand = Tensor({input_size, hidden_size});
  p.u_update = Tensor({hidden_size, hidden_size});
  p.u_reset = Tensor({hidden_size, hidden_size});
  p.u_cand = Tensor({hidden_size, hidden_size});
  p.b_update = Tensor({hidden_size});
  p.b_reset = Tensor({hidden_size});
  p.b_cand = Tensor({hidden_size});
  return p;
}

void GruParams::validate() const {
  const int f = input_size();
  const int h = hidden_size();
  auto check = [&](const Tensor& t, int d0, int d1, const char* name) {
    if (t.rank() != 2 || t.dim(0) != d0 || t.dim(1) != d1) {
      throw InputError(std::string("gru: ") + name + " has shape " + t.shape_str() +
                       ", expected [" + std::to_string(d0) + "x" + std::to_string(d1) + "]");
    }
  };
  auto check_vec = [&](const Tensor& t, const char* name) {
    if (t.rank() != 1 || t.dim(0) != h) {
      throw InputError(std::string("gru: ") + name + " has shape " + t.shape_str() +
                       ", expected [" + std::to_string(h) + "]");
    }
  };
  check(w_reset, f, h, "w_reset");
  check(w_cand, f, h, "w_cand");
  check(u_update, h, h, "u_update");
  check(u_reset, h, h, "u_reset");
  check(u_cand, h, h, "u_cand");
  check_vec(b_update, "b_update");
  check_vec(b_reset, "b_reset");
  check_vec(b_cand, "b_cand");
}

GruNodes insert_gru(Graph& g, const GruParams& params) {
  params.validate();
  GruNodes n;
  n.w_update = g.input(params.w_update);
  n.w_reset = g.input(params.w_reset);
  n.w_cand = g.input(params.w_cand);
  n.u_update = g.input(params.u_update);
  n.u_reset = g.input(params.u_reset);
  n.u_cand = g.input(params.u_cand);
  n.b_update = g.input(params.b_update);
  n.b_reset = g.input(params.b_reset);
  n.b_cand = g.input(params.b_cand);
  return n;
}

Graph::NodeId gru_step(Graph& g, Graph::NodeId x, Graph::NodeId h_prev, const GruNodes& p) {
  const auto z = g.sigmoid(g.add(g.add(g.matvec(x, p.w_update), g.matvec(h_prev, p.u_update)),
                                 p.b_update));
  const auto r = g.sigmoid(g.add(g.add(g.matvec(x, p.w_reset), g.matvec(h_prev, p.u_reset)),
                                 p.b_reset));
  const auto cand = g.tanh(g.add(
      g.add(g.matvec(x, p.w_cand), g.matvec(g.mul(r, h_prev), p.u_cand)), p.b_cand));
  return g.add(g.mul(g.one_minus(z), h_prev), g.mul(z, cand));
}

Tensor gru_step(const Tensor& x, const Tensor& h_prev, const GruParams& params) {
  Graph g;
  const auto nodes = insert_gru(g, params);
  const auto out = gru_step(g, g.input(x), g.input(h_prev), nodes);
  return g.value(out);
}

}  // namespace longiprog
