#include "longiprog/graph.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <utility>

#include "longiprog/errors.hpp"

namespace longiprog {

double sigmoid(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

int conv_output_extent(int input, int kernel, int stride, Padding padding) {
  if (stride < 1) throw ConfigError("conv2d stride must be >= 1, got " + std::to_string(stride));
  if (padding == Padding::kValid) {
    if (kernel > input) {
      throw ConfigError("conv2d kernel " + std::to_string(kernel) + " exceeds input extent " +
                        std::to_string(input) + " with valid padding");
    }
    return (input - kernel) / stride + 1;
  }
  return (input + stride - 1) / stride;  // ceil(input / stride)
}

Graph::NodeId Graph::emplace(Tensor value, std::vector<NodeId> parents,
                             std::function<void(Graph&, NodeId)> back) {
  const NodeId id = static_cast<NodeId>(nodes_.size());
  for (NodeId p : parents) {
    if (p < 0 || p >= id) throw Error("graph parent id out of order (internal)");
  }
  nodes_.push_back(Node{std::move(value), std::move(parents), std::move(back)});
  return id;
}

Graph::NodeId Graph::input(Tensor value) { return emplace(std::move(value), {}, nullptr); }

Graph::NodeId Graph::input(const Tensor& value) { return emplace(value, {}, nullptr); }

Tensor& Graph::grad_ref(NodeId id) {
  auto& g = grads_[static_cast<std::size_t>(id)];
  if (g.data.empty()) g = Tensor::zeros(nodes_[static_cast<std::size_t>(id)].value.shape);
  return g;
}

const Tensor& Graph::grad(NodeId id) { return grad_ref(id); }

void Graph::backward(NodeId root) {
  const Tensor& rv = value(root);
  if (rv.numel() != 1) {
    throw InputError("backward root must be scalar, got shape " + rv.shape_str());
  }
  if (!rv.all_finite()) throw NumericError("backward root value is not finite");
  grads_.assign(nodes_.size(), Tensor{});
  grad_ref(root).data[0] = 1.0;
  for (NodeId id = root; id >= 0; --id) {
    auto& node = nodes_[static_cast<std::size_t>(id)];
    if (!node.back) continue;
    auto& g = grads_[static_cast<std::size_t>(id)];
    if (g.data.empty()) continue;  // root does not depend on this node
    node.back(*this, id);
  }
}

// ---------------------------------------------------------------------------
// elementwise ops

namespace {
void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (!a.same_shape(b)) {
    throw InputError(std::string(op) + ": shape mismatch " + a.shape_str() + " vs " +
                     b.shape_str());
  }
}
}  // namespace

Graph::NodeId Graph::add(NodeId a, NodeId b) {
  require_same_shape(value(a), value(b), "add");
  Tensor out = value(a);
  const Tensor& vb = value(b);
  for (std::int64_t i = 0; i < out.numel(); ++i) out[i] += vb[i];
  return emplace(std::move(out), {a, b}, [a, b](Graph& g, NodeId self) {
    const Tensor& up = g.grad_ref(self);
    Tensor& ga = g.grad_ref(a);
    Tensor& gb = g.grad_ref(b);
    for (std::int64_t i = 0; i < up.numel(); ++i) {
      ga[i] += up[i];
      gb[i] += up[i];
    }
  });
}

Graph::NodeId Graph::mul(NodeId a, NodeId b) {
  require_same_shape(value(a), value(b), "mul");
  Tensor out = value(a);
  const Tensor& vb = value(b);
  for (std::int64_t i = 0; i < out.numel(); ++i) out[i] *= vb[i];
  return emplace(std::move(out), {a, b}, [a, b](Graph& g, NodeId self) {
    const Tensor& up = g.grad_ref(self);
    const Tensor& va = g.value(a);
    const Tensor& vb2 = g.value(b);
    Tensor& ga = g.grad_ref(a);
    Tensor& gb = g.grad_ref(b);
    for (std::int64_t i = 0; i < up.numel(); ++i) {
      ga[i] += up[i] * vb2[i];
      gb[i] += up[i] * va[i];
    }
  });
}

Graph::NodeId Graph::one_minus(NodeId a) {
  Tensor out = value(a);
  for (double& v : out.data) v = 1.0 - v;
  return emplace(std::move(out), {a}, [a](Graph& g, NodeId self) {
    const Tensor& up = g.grad_ref(self);
    Tensor& ga = g.grad_ref(a);
    for (std::int64_t i = 0; i < up.numel(); ++i) ga[i] -= up[i];
  });
}

Graph::NodeId Graph::scale(NodeId a, double factor) {
  Tensor out = value(a);
  for (double& v : out.data) v *= factor;
  return emplace(std::move(out), {a}, [a, factor](Graph& g, NodeId self) {
    const Tensor& up = g.grad_ref(self);
    Tensor& ga = g.grad_ref(a);
    for (std::int64_t i = 0; i < up.numel(); ++i) ga[i] += factor * up[i];
  });
}

Graph::NodeId Graph::relu(NodeId a) {
  Tensor out = value(a);
  for (double& v : out.data) v = v > 0.0 ? v : 0.0;
  return emplace(std::move(out), {a}, [a](Graph& g, NodeId self) {
    const Tensor& up = g.grad_ref(self);
    const Tensor& va = g.value(a);
    Tensor& ga = g.grad_ref(a);
    for (std::int64_t i = 0; i < up.numel(); ++i) {
      if (va[i] > 0.0) ga[i] += up[i];
    }
  });
}

Graph::NodeId Graph::sigmoid(NodeId a) {
  Tensor out = value(a);
  for (double& v : out.data) v = longiprog::sigmoid(v);
  return emplace(std::move(out), {a}, [a](Graph& g, NodeId self) {
    const Tensor& up = g.grad_ref(self);
    const Tensor& vo = g.value(self);
    Tensor& ga = g.grad_ref(a);
    for (std::int64_t i = 0; i < up.numel(); ++i) ga[i] += up[i] * vo[i] * (1.0 - vo[i]);
  });
}

Graph::NodeId Graph::tanh(NodeId a) {
  Tensor out = value(a);
  for (double& v : out.data) v = std::tanh(v);
  return emplace(std::move(out), {a}, [a](Graph& g, NodeId self) {
    const Tensor& up = g.grad_ref(self);
    const Tensor& vo = g.value(self);
    Tensor& ga = g.grad_ref(a);
    for (std::int64_t i = 0; i < up.numel(); ++i) ga[i] += up[i] * (1.0 - vo[i] * vo[i]);
  });
}

// ---------------------------------------------------------------------------
// linear algebra

Graph::NodeId Graph::matvec(NodeId x, NodeId w) {
  const Tensor& vx = value(x);
  const Tensor& vw = value(w);
  if (vx.rank() != 1 || vw.rank() != 2 || vx.dim(0) != vw.dim(0)) {
    throw InputError("matvec: incompatible shapes " + vx.shape_str() + " and " + vw.shape_str());
  }
  const int n = vw.dim(0);
  const int m = vw.dim(1);
  Tensor out({m});
  for (int i = 0; i < n; ++i) {
    const double xi = vx[i];
    const double* wrow = vw.data.data() + static_cast<std::size_t>(i) * m;
    for (int j = 0; j < m; ++j) out[j] += xi * wrow[j];
  }
  return emplace(std::move(out), {x, w}, [x, w, n, m](Graph& g, NodeId self) {
    const Tensor& up = g.grad_ref(self);
    const Tensor& vx2 = g.value(x);
    const Tensor& vw2 = g.value(w);
    Tensor& gx = g.grad_ref(x);
    Tensor& gw = g.grad_ref(w);
    for (int i = 0; i < n; ++i) {
      const double* wrow = vw2.data.data() + static_cast<std::size_t>(i) * m;
      double* gwrow = gw.data.data() + static_cast<std::size_t>(i) * m;
      double acc = 0.0;
      const double xi = vx2[i];
      for (int j = 0; j < m; ++j) {
        acc += up[j] * wrow[j];
        gwrow[j] += xi * up[j];
      }
      gx[i] += acc;
    }
  });
}

Graph::NodeId Graph::dense(NodeId x, NodeId w, NodeId b) {
  const Tensor& vb = value(b);
  const Tensor& vw = value(w);
  if (vb.rank() != 1 || vb.dim(0) != vw.dim(1)) {
    throw InputError("dense: bias shape " + vb.shape_str() + " does not match weights " +
                     vw.shape_str());
  }
  return add(matvec(x, w), b);
}

// ---------------------------------------------------------------------------
// convolution

namespace {
struct ConvDims {
  int in_h, in_w, cin, k, cout, out_h, out_w, pad_top, pad_left;
};

ConvDims conv_dims(const Tensor& in, const Tensor& kernels, int stride, Padding padding) {
  if (in.rank() != 3 || kernels.rank() != 4) {
    throw InputError("conv2d: expected input [H,W,Cin] and kernels [k,k,Cin,Cout], got " +
                     in.shape_str() + " and " + kernels.shape_str());
  }
  ConvDims d{};
  d.in_h = in.dim(0);
  d.in_w = in.dim(1);
  d.cin = in.dim(2);
  d.k = kernels.dim(0);
  d.cout = kernels.dim(3);
  if (kernels.dim(1) != d.k) {
    throw ConfigError("conv2d: kernels must be square, got " + kernels.shape_str());
  }
  if (kernels.dim(2) != d.cin) {
    throw ConfigError("conv2d: kernel channels " + std::to_string(kernels.dim(2)) +
                      " do not match input channels " + std::to_string(d.cin));
  }
  d.out_h = conv_output_extent(d.in_h, d.k, stride, padding);
  d.out_w = conv_output_extent(d.in_w, d.k, stride, padding);
  if (padding == Padding::kSame) {
    const int pad_h = std::max((d.out_h - 1) * stride + d.k - d.in_h, 0);
    const int pad_w = std::max((d.out_w - 1) * stride + d.k - d.in_w, 0);
    d.pad_top = pad_h / 2;
    d.pad_left = pad_w / 2;
  }
  return d;
}
}  // namespace

Graph::NodeId Graph::conv2d(NodeId in, NodeId kernels, int stride, Padding padding) {
  const ConvDims d = conv_dims(value(in), value(kernels), stride, padding);
  const Tensor& vin = value(in);
  const Tensor& vk = value(kernels);
  Tensor out({d.out_h, d.out_w, d.cout});
  for (int oy = 0; oy < d.out_h; ++oy) {
    for (int ox = 0; ox < d.out_w; ++ox) {
      double* opx = out.data.data() + (static_cast<std::size_t>(oy) * d.out_w + ox) * d.cout;
      for (int ky = 0; ky < d.k; ++ky) {
        const int iy = oy * stride + ky - d.pad_top;
        if (iy < 0 || iy >= d.in_h) continue;
        for (int kx = 0; kx < d.k; ++kx) {
          const int ix = ox * stride + kx - d.pad_left;
          if (ix < 0 || ix >= d.in_w) continue;
          const double* ipx =
              vin.data.data() + (static_cast<std::size_t>(iy) * d.in_w + ix) * d.cin;
          const double* krow =
              vk.data.data() + (static_cast<std::size_t>(ky) * d.k + kx) * d.cin * d.cout;
          for (int ci = 0; ci < d.cin; ++ci) {
            const double v = ipx[ci];
            const double* wrow = krow + static_cast<std::size_t>(ci) * d.cout;
            for (int co = 0; co < d.cout; ++co) opx[co] += v * wrow[co];
          }
        }
      }
    }
  }
  return emplace(std::move(out), {in, kernels}, [in, kernels, stride, d](Graph& g, NodeId self) {
    const Tensor& up = g.grad_ref(self);
    const Tensor& vin2 = g.value(in);
    const Tensor& vk2 = g.value(kernels);
    Tensor& gin = g.grad_ref(in);
    Tensor& gk = g.grad_ref(kernels);
    for (int oy = 0; oy < d.out_h; ++oy) {
      for (int ox = 0; ox < d.out_w; ++ox) {
        const double* upx = up.data.data() + (static_cast<std::size_t>(oy) * d.out_w + ox) * d.cout;
        for (int ky = 0; ky < d.k; ++ky) {
          const int iy = oy * stride + ky - d.pad_top;
          if (iy < 0 || iy >= d.in_h) continue;
          for (int kx = 0; kx < d.k; ++kx) {
            const int ix = ox * stride + kx - d.pad_left;
            if (ix < 0 || ix >= d.in_w) continue;
            const std::size_t ibase = (static_cast<std::size_t>(iy) * d.in_w + ix) * d.cin;
            const std::size_t kbase = (static_cast<std::size_t>(ky) * d.k + kx) * d.cin * d.cout;
            for (int ci = 0; ci < d.cin; ++ci) {
              const double v = vin2.data[ibase + ci];
              const double* wrow = vk2.data.data() + kbase + static_cast<std::size_t>(ci) * d.cout;
              double* gwrow = gk.data.data() + kbase + static_cast<std::size_t>(ci) * d.cout;
              double acc = 0.0;
              for (int co = 0; co < d.cout; ++co) {
                acc += upx[co] * wrow[co];
                gwrow[co] += v * upx[co];
              }
              gin.data[ibase + ci] += acc;
            }
          }
        }
      }
    }
  });
}

Graph::NodeId Graph::channel_bias(NodeId in, NodeId b) {
  const Tensor& vin = value(in);
  const Tensor& vb = value(b);
  if (vin.rank() != 3 || vb.rank() != 1 || vb.dim(0) != vin.dim(2)) {
    throw InputError("channel_bias: bias " + vb.shape_str() + " does not match input " +
                     vin.shape_str());
  }
  const int hw = vin.dim(0) * vin.dim(1);
  const int c = vin.dim(2);
  Tensor out = vin;
  for (int p = 0; p < hw; ++p) {
    double* px = out.data.data() + static_cast<std::size_t>(p) * c;
    for (int j = 0; j < c; ++j) px[j] += vb[j];
  }
  return emplace(std::move(out), {in, b}, [in, b, hw, c](Graph& g, NodeId self) {
    const Tensor& up = g.grad_ref(self);
    Tensor& gin = g.grad_ref(in);
    Tensor& gb = g.grad_ref(b);
    for (std::int64_t i = 0; i < up.numel(); ++i) gin[i] += up[i];
    for (int p = 0; p < hw; ++p) {
      const double* upx = up.data.data() + static_cast<std::size_t>(p) * c;
      for (int j = 0; j < c; ++j) gb[j] += upx[j];
    }
  });
}

Graph::NodeId Graph::global_avg_pool(NodeId in) {
  const Tensor& vin = value(in);
  if (vin.rank() != 3) {
    throw InputError("global_avg_pool: expected [H,W,C], got " + vin.shape_str());
  }
  const int hw = vin.dim(0) * vin.dim(1);
  const int c = vin.dim(2);
  Tensor out({c});
  for (int p = 0; p < hw; ++p) {
    const double* px = vin.data.data() + static_cast<std::size_t>(p) * c;
    for (int j = 0; j < c; ++j) out[j] += px[j];
  }
  const double inv = 1.0 / hw;
  for (double& v : out.data) v *= inv;
  return emplace(std::move(out), {in}, [in, hw, c, inv](Graph& g, NodeId self) {
    const Tensor& up = g.grad_ref(self);
    Tensor& gin = g.grad_ref(in);
    for (int p = 0; p < hw; ++p) {
      double* gpx = gin.data.data() + static_cast<std::size_t>(p) * c;
      for (int j = 0; j < c; ++j) gpx[j] += up[j] * inv;
    }
  });
}

// ---------------------------------------------------------------------------
// loss and reductions

Graph::NodeId Graph::bce_loss(NodeId p, int label, double pos_weight) {
  if (label != 0 && label != 1) {
    throw InputError("bce_loss: label must be 0 or 1, got " + std::to_string(label));
  }
  const Tensor& vp = value(p);
  if (vp.numel() != 1) {
    throw InputError("bce_loss: probability must be scalar, got " + vp.shape_str());
  }
  const double raw = vp[0];
  const double pc = std::min(std::max(raw, kBceEps), 1.0 - kBceEps);
  const double w = label == 1 ? pos_weight : 1.0;
  const double loss = w * (label == 1 ? -std::log(pc) : -std::log(1.0 - pc));
  const bool clamped = raw < kBceEps || raw > 1.0 - kBceEps;
  return emplace(Tensor::scalar(loss), {p}, [p, label, pc, w, clamped](Graph& g, NodeId self) {
    if (clamped) return;  // flat inside the clamp region
    const double up = g.grad_ref(self)[0];
    const double d = label == 1 ? -1.0 / pc : 1.0 / (1.0 - pc);
    g.grad_ref(p)[0] += up * w * d;
  });
}

Graph::NodeId Graph::mean_of(const std::vector<NodeId>& xs) {
  if (xs.empty()) throw InputError("mean_of: empty node list");
  double total = 0.0;
  for (NodeId x : xs) {
    const Tensor& v = value(x);
    if (v.numel() != 1) throw InputError("mean_of: all terms must be scalar");
    total += v[0];
  }
  const double inv = 1.0 / static_cast<double>(xs.size());
  return emplace(Tensor::scalar(total * inv), xs, [xs, inv](Graph& g, NodeId self) {
    const double up = g.grad_ref(self)[0];
    for (NodeId x : xs) g.grad_ref(x)[0] += up * inv;
  });
}

Graph::NodeId Graph::dot_const(NodeId x, Tensor weights) {
  const Tensor& vx = value(x);
  if (!vx.same_shape(weights)) {
    throw InputError("dot_const: weight shape " + weights.shape_str() + " does not match " +
                     vx.shape_str());
  }
  double acc = 0.0;
  for (std::int64_t i = 0; i < vx.numel(); ++i) acc += vx[i] * weights[i];
  auto w = std::make_shared<Tensor>(std::move(weights));
  return emplace(Tensor::scalar(acc), {x}, [x, w](Graph& g, NodeId self) {
    const double up = g.grad_ref(self)[0];
    Tensor& gx = g.grad_ref(x);
    for (std::int64_t i = 0; i < gx.numel(); ++i) gx[i] += up * (*w)[i];
  });
}

}  // namespace longiprog
