#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "unionsub/coefficients.hpp"
#include "unionsub/graph.hpp"
#include "unionsub/mlp.hpp"

namespace unionsub {

/// Maps each normalized coefficient ã^{vu} to d channel weights with an MLP,
/// then softmaxes each channel across the neighbours of v. The output has
/// one row per CSR pair of the graph.
class Trans {
 public:
  struct Tape {
    Mlp::Tape mlp;
    DenseTensor weights;  // softmax output, num_pairs x d
  };

  Trans() = default;
  explicit Trans(Mlp mlp) : mlp_(std::move(mlp)) {}
  /// 1 -> hidden -> channels with ReLU.
  Trans(std::size_t channels, std::mt19937_64& rng, std::size_t hidden = 16);

  std::size_t channels() const { return mlp_.out_dim(); }
  Mlp& mlp() { return mlp_; }
  const Mlp& mlp() const { return mlp_; }

  DenseTensor forward(const Graph& g, const CoefficientTable& coeffs, Tape* tape = nullptr) const;
  void backward(const Graph& g, const Tape& tape, const DenseTensor& grad_weights);
  void append_parameters(NamedParameters& out, const std::string& prefix) { mlp_.append_parameters(out, prefix); }

 private:
  Mlp mlp_;
};

/// h'_v = MLP_1((1 + ε) h_v + Σ_{u ∈ N(v)} t(v, u) ⊙ h_u).
class UnionLayer {
 public:
  struct Tape {
    Trans::Tape trans;
    DenseTensor t;
    DenseTensor agg;
    Mlp::Tape mlp;
  };

  UnionLayer() = default;
  UnionLayer(Mlp mlp1, Trans trans);
  /// mlp1 = in -> out -> out; Trans channels = in.
  UnionLayer(std::size_t in, std::size_t out, std::mt19937_64& rng);

  Parameter epsilon{DenseTensor(1, 1)};
  Mlp mlp1;
  Trans trans;

  DenseTensor forward(const Graph& g, const DenseTensor& h, const CoefficientTable& coeffs,
                      Tape* tape = nullptr) const;
  /// Accumulates parameter gradients, returns dL/dh.
  DenseTensor backward(const Graph& g, const DenseTensor& h, const Tape& tape, const DenseTensor& grad_out);
  void append_parameters(NamedParameters& out, const std::string& prefix);
};

enum class PluginBase { GCNLike, GINLike };

/// A base message-passing layer whose neighbour messages are optionally
/// rescaled by deg(v) * t(v, u). The scale is 1 when t is uniform, so
/// constant coefficients leave the base layer unchanged.
///
///   GCNLike: ReLU([h_v / (d_v + 1) + Σ s_vu h_u / sqrt((d_v + 1)(d_u + 1))] W + b)
///   GINLike: MLP((1 + ε) h_v + Σ s_vu h_u / d_v)
class PluginLayer {
 public:
  struct Tape {
    Trans::Tape trans;
    DenseTensor t;  // empty when coefficients are off
    DenseTensor agg;
    Mlp::Tape mlp;
    DenseTensor pre;  // GCN pre-activation
  };

  PluginLayer() = default;
  PluginLayer(PluginBase base, bool use_coefficients, Mlp post, Trans trans);
  /// GCN: single linear in -> out. GIN: in -> out -> out. Trans channels = in.
  PluginLayer(PluginBase base, bool use_coefficients, std::size_t in, std::size_t out, std::mt19937_64& rng);

  PluginBase base = PluginBase::GCNLike;
  bool use_coefficients = true;
  Parameter epsilon{DenseTensor(1, 1)};  // GIN only
  Mlp post;
  Trans trans;

  DenseTensor forward(const Graph& g, const DenseTensor& h, const CoefficientTable& coeffs,
                      Tape* tape = nullptr) const;
  DenseTensor backward(const Graph& g, const DenseTensor& h, const Tape& tape, const DenseTensor& grad_out);
  void append_parameters(NamedParameters& out, const std::string& prefix);

 private:
  double self_weight(const Graph& g, NodeId v) const;
  double edge_weight(const Graph& g, NodeId v, NodeId u) const;
};

/// Global attention logits A_vu = (h_v W_Q)(h_u W_K)ᵀ / sqrt(d), plus the
/// channel mean of Trans(ã^{vu}) on adjacent pairs (0 elsewhere).
class AttentionBias {
 public:
  struct Tape {
    Trans::Tape trans;
    DenseTensor q, k;
  };

  AttentionBias() = default;
  AttentionBias(Parameter wq, Parameter wk, Trans trans);
  AttentionBias(std::size_t d, std::mt19937_64& rng);

  Parameter wq, wk;
  Trans trans;

  DenseTensor forward(const Graph& g, const DenseTensor& h, const CoefficientTable& coeffs,
                      Tape* tape = nullptr) const;
  DenseTensor backward(const Graph& g, const DenseTensor& h, const Tape& tape, const DenseTensor& grad_out);
  void append_parameters(NamedParameters& out, const std::string& prefix);
};

DenseTensor trans_forward(const Mlp& params, const CoefficientTable& coeffs, const Graph& g);
DenseTensor unionsnn_layer_forward(const UnionLayer& params, const Graph& g, const DenseTensor& h,
                                   const CoefficientTable& coeffs);
DenseTensor plugin_mpnn_forward(const PluginLayer& params, const Graph& g, const DenseTensor& h,
                                const CoefficientTable& coeffs);
DenseTensor attention_bias_forward(const Graph& g, const DenseTensor& h, const CoefficientTable& coeffs,
                                   const DenseTensor& wq, const DenseTensor& wk, const Mlp& trans);

/// Loss used by grad_check: mean over columns of (mean over rows of out - target)².
double pooled_mse(const DenseTensor& out, const DenseTensor& target, DenseTensor* grad = nullptr);

/// Compares analytic gradients against central differences. `forward`
/// evaluates the layer with the current parameter values; `backward`
/// receives dL/d(out) and must accumulate into each Parameter::grad.
/// Returns max |g_a - g_fd| / max(1, |g_a|, |g_fd|) over all entries.
double grad_check(const std::vector<Parameter*>& params, const std::function<DenseTensor()>& forward,
                  const std::function<void(const DenseTensor&)>& backward, const DenseTensor& target,
                  double step = 1e-5);

}  // namespace unionsub
