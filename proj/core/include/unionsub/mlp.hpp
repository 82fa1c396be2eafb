#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "unionsub/dense.hpp"

namespace unionsub {

/// A trainable tensor and its accumulated gradient (same shape).
struct Parameter {
  DenseTensor value;
  DenseTensor grad;

  Parameter() = default;
  explicit Parameter(DenseTensor v) : value(std::move(v)), grad(value.rows(), value.cols()) {}
  void zero_grad() { grad.fill(0.0); }
};

using NamedParameters = std::vector<std::pair<std::string, Parameter*>>;

/// Rows are samples: y = x W + b per layer, ReLU between layers (not after
/// the last one).
class Mlp {
 public:
  /// Intermediates kept for the backward pass.
  struct Tape {
    std::vector<DenseTensor> inputs;  // input of each layer (post-activation)
    std::vector<DenseTensor> pre;     // pre-activation output of each layer
  };

  Mlp() = default;
  /// dims = {in, hidden..., out}; Glorot weights, zero biases.
  Mlp(const std::vector<std::size_t>& dims, std::mt19937_64& rng);
  /// One layer with W = I, b = 0.
  static Mlp identity(std::size_t dim);

  std::size_t in_dim() const { return weights_.front().value.rows(); }
  std::size_t out_dim() const { return weights_.back().value.cols(); }
  std::size_t num_layers() const { return weights_.size(); }

  Parameter& weight(std::size_t l) { return weights_.at(l); }
  Parameter& bias(std::size_t l) { return biases_.at(l); }
  const Parameter& weight(std::size_t l) const { return weights_.at(l); }
  const Parameter& bias(std::size_t l) const { return biases_.at(l); }

  DenseTensor forward(const DenseTensor& x, Tape* tape = nullptr) const;
  /// Accumulates parameter gradients and returns dL/dx.
  DenseTensor backward(const Tape& tape, const DenseTensor& grad_out);

  void append_parameters(NamedParameters& out, const std::string& prefix);

 private:
  std::vector<Parameter> weights_;  // in x out
  std::vector<Parameter> biases_;   // 1 x out
};

}  // namespace unionsub
