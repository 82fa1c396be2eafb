#include "unionsub/layers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace unionsub {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

void require_table(const Graph& g, const CoefficientTable& coeffs) {
  require(coeffs.matches(g), "coefficient table does not match the graph");
}

void add_into(DenseTensor& dst, const DenseTensor& src) {
  auto& d = dst.data();
  for (std::size_t i = 0; i < d.size(); ++i) d[i] += src.data()[i];
}

}  // namespace

// --- Trans ------------------------------------------------------------------

Trans::Trans(std::size_t channels, std::mt19937_64& rng, std::size_t hidden) : mlp_({1, hidden, channels}, rng) {}

DenseTensor Trans::forward(const Graph& g, const CoefficientTable& coeffs, Tape* tape) const {
  require_table(g, coeffs);
  require(mlp_.in_dim() == 1, "Trans: MLP input must be 1-dimensional");
  DenseTensor x(g.num_pairs(), 1, coeffs.normalized);
  DenseTensor z = mlp_.forward(x, tape ? &tape->mlp : nullptr);
  const std::size_t d = z.cols();
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const std::size_t begin = g.pair_begin(v), end = g.pair_end(v);
    if (begin == end) continue;
    for (std::size_t c = 0; c < d; ++c) {
      double mx = z(begin, c);
      for (std::size_t p = begin + 1; p < end; ++p) mx = std::max(mx, z(p, c));
      double sum = 0.0;
      for (std::size_t p = begin; p < end; ++p) sum += (z(p, c) = std::exp(z(p, c) - mx));
      for (std::size_t p = begin; p < end; ++p) z(p, c) /= sum;
    }
  }
  if (tape) tape->weights = z;
  return z;
}

void Trans::backward(const Graph& g, const Tape& tape, const DenseTensor& grad_weights) {
  const DenseTensor& t = tape.weights;
  DenseTensor dz(t.rows(), t.cols());
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const std::size_t begin = g.pair_begin(v), end = g.pair_end(v);
    for (std::size_t c = 0; c < t.cols(); ++c) {
      double dot = 0.0;
      for (std::size_t p = begin; p < end; ++p) dot += t(p, c) * grad_weights(p, c);
      for (std::size_t p = begin; p < end; ++p) dz(p, c) = t(p, c) * (grad_weights(p, c) - dot);
    }
  }
  mlp_.backward(tape.mlp, dz);
}

// --- UnionLayer -------------------------------------------------------------

UnionLayer::UnionLayer(Mlp m, Trans t) : mlp1(std::move(m)), trans(std::move(t)) {
  require(trans.channels() == mlp1.in_dim(), "UnionLayer: Trans channels must equal the MLP input dim");
}

UnionLayer::UnionLayer(std::size_t in, std::size_t out, std::mt19937_64& rng)
    : mlp1({in, out, out}, rng), trans(in, rng) {}

DenseTensor UnionLayer::forward(const Graph& g, const DenseTensor& h, const CoefficientTable& coeffs,
                                Tape* tape) const {
  require(h.rows() == g.num_nodes(), "UnionLayer: feature rows != num_nodes");
  require(h.cols() == mlp1.in_dim() && h.cols() == trans.channels(), "UnionLayer: feature dim mismatch");
  Trans::Tape ttape;
  const DenseTensor t = trans.forward(g, coeffs, tape ? &tape->trans : &ttape);
  const double self = 1.0 + epsilon.value(0, 0);
  DenseTensor agg(h.rows(), h.cols());
  const auto targets = g.neighbor_targets();
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    for (std::size_t c = 0; c < h.cols(); ++c) agg(v, c) = self * h(v, c);
    for (std::size_t p = g.pair_begin(v); p < g.pair_end(v); ++p)
      for (std::size_t c = 0; c < h.cols(); ++c) agg(v, c) += t(p, c) * h(targets[p], c);
  }
  if (tape) {
    tape->t = t;
    tape->agg = agg;
  }
  return mlp1.forward(agg, tape ? &tape->mlp : nullptr);
}

DenseTensor UnionLayer::backward(const Graph& g, const DenseTensor& h, const Tape& tape,
                                 const DenseTensor& grad_out) {
  const DenseTensor ga = mlp1.backward(tape.mlp, grad_out);
  const double self = 1.0 + epsilon.value(0, 0);
  DenseTensor dh(h.rows(), h.cols());
  DenseTensor dt(tape.t.rows(), tape.t.cols());
  const auto targets = g.neighbor_targets();
  double deps = 0.0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    for (std::size_t c = 0; c < h.cols(); ++c) {
      deps += ga(v, c) * h(v, c);
      dh(v, c) += self * ga(v, c);
    }
    for (std::size_t p = g.pair_begin(v); p < g.pair_end(v); ++p) {
      const NodeId u = targets[p];
      for (std::size_t c = 0; c < h.cols(); ++c) {
        dt(p, c) = ga(v, c) * h(u, c);
        dh(u, c) += tape.t(p, c) * ga(v, c);
      }
    }
  }
  epsilon.grad(0, 0) += deps;
  trans.backward(g, tape.trans, dt);
  return dh;
}

void UnionLayer::append_parameters(NamedParameters& out, const std::string& prefix) {
  out.emplace_back(prefix + ".eps", &epsilon);
  mlp1.append_parameters(out, prefix + ".mlp1");
  trans.append_parameters(out, prefix + ".trans");
}

// --- PluginLayer ------------------------------------------------------------

PluginLayer::PluginLayer(PluginBase b, bool use, Mlp p, Trans t)
    : base(b), use_coefficients(use), post(std::move(p)), trans(std::move(t)) {
  require(!use || trans.channels() == post.in_dim(), "PluginLayer: Trans channels must equal the input dim");
}

PluginLayer::PluginLayer(PluginBase b, bool use, std::size_t in, std::size_t out, std::mt19937_64& rng)
    : base(b), use_coefficients(use) {
  post = b == PluginBase::GCNLike ? Mlp({in, out}, rng) : Mlp({in, out, out}, rng);
  if (use) trans = Trans(in, rng);
}

double PluginLayer::self_weight(const Graph& g, NodeId v) const {
  if (base == PluginBase::GCNLike) return 1.0 / static_cast<double>(g.degree(v) + 1);
  return 1.0 + epsilon.value(0, 0);
}

double PluginLayer::edge_weight(const Graph& g, NodeId v, NodeId u) const {
  if (base == PluginBase::GCNLike) {
    return 1.0 / std::sqrt(static_cast<double>((g.degree(v) + 1) * (g.degree(u) + 1)));
  }
  return 1.0 / static_cast<double>(g.degree(v));
}

DenseTensor PluginLayer::forward(const Graph& g, const DenseTensor& h, const CoefficientTable& coeffs,
                                 Tape* tape) const {
  require(h.rows() == g.num_nodes(), "PluginLayer: feature rows != num_nodes");
  require(h.cols() == post.in_dim(), "PluginLayer: feature dim mismatch");
  DenseTensor t;
  if (use_coefficients) {
    require(trans.channels() == h.cols(), "PluginLayer: Trans channels must equal the feature dim");
    Trans::Tape ttape;
    t = trans.forward(g, coeffs, tape ? &tape->trans : &ttape);
  }
  DenseTensor agg(h.rows(), h.cols());
  const auto targets = g.neighbor_targets();
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const double sw = self_weight(g, v);
    for (std::size_t c = 0; c < h.cols(); ++c) agg(v, c) = sw * h(v, c);
    const double deg = static_cast<double>(g.degree(v));
    for (std::size_t p = g.pair_begin(v); p < g.pair_end(v); ++p) {
      const NodeId u = targets[p];
      const double w = edge_weight(g, v, u);
      for (std::size_t c = 0; c < h.cols(); ++c) {
        const double scale = use_coefficients ? deg * t(p, c) : 1.0;
        agg(v, c) += w * scale * h(u, c);
      }
    }
  }
  Mlp::Tape mtape;
  DenseTensor out = post.forward(agg, tape ? &tape->mlp : &mtape);
  if (tape) {
    tape->t = std::move(t);
    tape->agg = agg;
  }
  if (base == PluginBase::GCNLike) {
    if (tape) tape->pre = out;
    for (double& x : out.data()) x = x > 0.0 ? x : 0.0;
  }
  return out;
}

DenseTensor PluginLayer::backward(const Graph& g, const DenseTensor& h, const Tape& tape,
                                  const DenseTensor& grad_out) {
  DenseTensor go = grad_out;
  if (base == PluginBase::GCNLike) {
    for (std::size_t i = 0; i < go.size(); ++i)
      if (tape.pre.data()[i] <= 0.0) go.data()[i] = 0.0;
  }
  const DenseTensor ga = post.backward(tape.mlp, go);
  DenseTensor dh(h.rows(), h.cols());
  DenseTensor dt(use_coefficients ? tape.t.rows() : 0, use_coefficients ? tape.t.cols() : 0);
  const auto targets = g.neighbor_targets();
  double deps = 0.0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const double sw = self_weight(g, v);
    for (std::size_t c = 0; c < h.cols(); ++c) {
      deps += ga(v, c) * h(v, c);
      dh(v, c) += sw * ga(v, c);
    }
    const double deg = static_cast<double>(g.degree(v));
    for (std::size_t p = g.pair_begin(v); p < g.pair_end(v); ++p) {
      const NodeId u = targets[p];
      const double w = edge_weight(g, v, u);
      for (std::size_t c = 0; c < h.cols(); ++c) {
        const double scale = use_coefficients ? deg * tape.t(p, c) : 1.0;
        dh(u, c) += w * scale * ga(v, c);
        if (use_coefficients) dt(p, c) = w * deg * ga(v, c) * h(u, c);
      }
    }
  }
  if (base == PluginBase::GINLike) epsilon.grad(0, 0) += deps;
  if (use_coefficients) trans.backward(g, tape.trans, dt);
  return dh;
}

void PluginLayer::append_parameters(NamedParameters& out, const std::string& prefix) {
  if (base == PluginBase::GINLike) out.emplace_back(prefix + ".eps", &epsilon);
  post.append_parameters(out, prefix + ".post");
  if (use_coefficients) trans.append_parameters(out, prefix + ".trans");
}

// --- AttentionBias ----------------------------------------------------------

AttentionBias::AttentionBias(Parameter q, Parameter k, Trans t)
    : wq(std::move(q)), wk(std::move(k)), trans(std::move(t)) {}

AttentionBias::AttentionBias(std::size_t d, std::mt19937_64& rng)
    : wq(DenseTensor::glorot(d, d, rng)), wk(DenseTensor::glorot(d, d, rng)), trans(d, rng) {}

DenseTensor AttentionBias::forward(const Graph& g, const DenseTensor& h, const CoefficientTable& coeffs,
                                   Tape* tape) const {
  const std::size_t d = h.cols();
  require(h.rows() == g.num_nodes(), "AttentionBias: feature rows != num_nodes");
  require(wq.value.rows() == d && wq.value.cols() == d && wk.value.rows() == d && wk.value.cols() == d,
          "AttentionBias: W_Q and W_K must be d x d");
  Trans::Tape ttape;
  const DenseTensor t = trans.forward(g, coeffs, tape ? &tape->trans : &ttape);
  DenseTensor q = matmul(h, wq.value);
  DenseTensor k = matmul(h, wk.value);
  DenseTensor a = matmul_nt(q, k);
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
  for (double& x : a.data()) x *= inv_sqrt_d;
  const auto targets = g.neighbor_targets();
  const double inv_ch = 1.0 / static_cast<double>(t.cols());
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    for (std::size_t p = g.pair_begin(v); p < g.pair_end(v); ++p) {
      double mean = 0.0;
      for (std::size_t c = 0; c < t.cols(); ++c) mean += t(p, c);
      a(v, targets[p]) += mean * inv_ch;
    }
  }
  if (tape) {
    tape->q = std::move(q);
    tape->k = std::move(k);
  }
  return a;
}

DenseTensor AttentionBias::backward(const Graph& g, const DenseTensor& h, const Tape& tape,
                                    const DenseTensor& grad_out) {
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(h.cols()));
  DenseTensor dq = matmul(grad_out, tape.k);
  DenseTensor dk = matmul_tn(grad_out, tape.q);
  for (double& x : dq.data()) x *= inv_sqrt_d;
  for (double& x : dk.data()) x *= inv_sqrt_d;
  add_into(wq.grad, matmul_tn(h, dq));
  add_into(wk.grad, matmul_tn(h, dk));
  DenseTensor dh = matmul_nt(dq, wq.value);
  add_into(dh, matmul_nt(dk, wk.value));

  const std::size_t ch = trans.channels();
  DenseTensor dt(g.num_pairs(), ch);
  const auto targets = g.neighbor_targets();
  for (NodeId v = 0; v < g.num_nodes(); ++v)
    for (std::size_t p = g.pair_begin(v); p < g.pair_end(v); ++p)
      for (std::size_t c = 0; c < ch; ++c) dt(p, c) = grad_out(v, targets[p]) / static_cast<double>(ch);
  trans.backward(g, tape.trans, dt);
  return dh;
}

void AttentionBias::append_parameters(NamedParameters& out, const std::string& prefix) {
  out.emplace_back(prefix + ".wq", &wq);
  out.emplace_back(prefix + ".wk", &wk);
  trans.append_parameters(out, prefix + ".trans");
}

// --- free functions ---------------------------------------------------------

DenseTensor trans_forward(const Mlp& params, const CoefficientTable& coeffs, const Graph& g) {
  return Trans(params).forward(g, coeffs);
}

DenseTensor unionsnn_layer_forward(const UnionLayer& params, const Graph& g, const DenseTensor& h,
                                   const CoefficientTable& coeffs) {
  return params.forward(g, h, coeffs);
}

DenseTensor plugin_mpnn_forward(const PluginLayer& params, const Graph& g, const DenseTensor& h,
                                const CoefficientTable& coeffs) {
  return params.forward(g, h, coeffs);
}

DenseTensor attention_bias_forward(const Graph& g, const DenseTensor& h, const CoefficientTable& coeffs,
                                   const DenseTensor& wq, const DenseTensor& wk, const Mlp& trans) {
  return AttentionBias(Parameter(wq), Parameter(wk), Trans(trans)).forward(g, h, coeffs);
}

double pooled_mse(const DenseTensor& out, const DenseTensor& target, DenseTensor* grad) {
  require(target.rows() == 1 && target.cols() == out.cols(), "pooled_mse: target must be 1 x cols");
  require(out.rows() > 0, "pooled_mse: empty output");
  const double n = static_cast<double>(out.rows());
  const double d = static_cast<double>(out.cols());
  double loss = 0.0;
  std::vector<double> diff(out.cols());
  for (std::size_t c = 0; c < out.cols(); ++c) {
    double mean = 0.0;
    for (std::size_t r = 0; r < out.rows(); ++r) mean += out(r, c);
    diff[c] = mean / n - target(0, c);
    loss += diff[c] * diff[c];
  }
  if (grad) {
    *grad = DenseTensor(out.rows(), out.cols());
    for (std::size_t r = 0; r < out.rows(); ++r)
      for (std::size_t c = 0; c < out.cols(); ++c) (*grad)(r, c) = 2.0 * diff[c] / (d * n);
  }
  return loss / d;
}

double grad_check(const std::vector<Parameter*>& params, const std::function<DenseTensor()>& forward,
                  const std::function<void(const DenseTensor&)>& backward, const DenseTensor& target,
                  double step) {
  for (Parameter* p : params) p->zero_grad();
  DenseTensor gout;
  pooled_mse(forward(), target, &gout);
  backward(gout);

  double worst = 0.0;
  for (Parameter* p : params) {
    if (!p->grad.all_finite()) throw std::domain_error("grad_check: non-finite analytic gradient");
    auto& x = p->value.data();
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double saved = x[i];
      x[i] = saved + step;
      const double up = pooled_mse(forward(), target);
      x[i] = saved - step;
      const double down = pooled_mse(forward(), target);
      x[i] = saved;
      const double fd = (up - down) / (2.0 * step);
      const double ga = p->grad.data()[i];
      if (!std::isfinite(fd)) throw std::domain_error("grad_check: non-finite finite-difference gradient");
      worst = std::max(worst, std::abs(ga - fd) / std::max({1.0, std::abs(ga), std::abs(fd)}));
    }
  }
  return worst;
}

}  // namespace unionsub
