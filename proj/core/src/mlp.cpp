#include "unionsub/mlp.hpp"

#include <stdexcept>

namespace unionsub {

Mlp::Mlp(const std::vector<std::size_t>& dims, std::mt19937_64& rng) {
  if (dims.size() < 2) throw std::invalid_argument("Mlp: need at least input and output dims");
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    if (dims[l] == 0 || dims[l + 1] == 0) throw std::invalid_argument("Mlp: zero-width layer");
    weights_.emplace_back(DenseTensor::glorot(dims[l], dims[l + 1], rng));
    biases_.emplace_back(DenseTensor(1, dims[l + 1]));
  }
}

Mlp Mlp::identity(std::size_t dim) {
  Mlp m;
  m.weights_.emplace_back(DenseTensor::identity(dim));
  m.biases_.emplace_back(DenseTensor(1, dim));
  return m;
}

DenseTensor Mlp::forward(const DenseTensor& x, Tape* tape) const {
  if (weights_.empty()) throw std::logic_error("Mlp: no layers");
  if (x.cols() != in_dim()) {
    throw std::invalid_argument("Mlp: input has " + std::to_string(x.cols()) + " columns, expected " +
                                std::to_string(in_dim()));
  }
  if (tape) {
    tape->inputs.clear();
    tape->pre.clear();
  }
  DenseTensor cur = x;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    if (tape) tape->inputs.push_back(cur);
    DenseTensor z = matmul(cur, weights_[l].value);
    const auto& b = biases_[l].value;
    for (std::size_t r = 0; r < z.rows(); ++r)
      for (std::size_t c = 0; c < z.cols(); ++c) z(r, c) += b(0, c);
    if (tape) tape->pre.push_back(z);
    if (l + 1 < weights_.size()) {
      for (double& v : z.data()) v = v > 0.0 ? v : 0.0;
    }
    cur = std::move(z);
  }
  return cur;
}

DenseTensor Mlp::backward(const Tape& tape, const DenseTensor& grad_out) {
  DenseTensor g = grad_out;
  for (std::size_t l = weights_.size(); l-- > 0;) {
    if (l + 1 < weights_.size()) {
      const auto& z = tape.pre[l];
      for (std::size_t i = 0; i < g.size(); ++i)
        if (z.data()[i] <= 0.0) g.data()[i] = 0.0;
    }
    const DenseTensor dw = matmul_tn(tape.inputs[l], g);
    auto& wg = weights_[l].grad.data();
    for (std::size_t i = 0; i < wg.size(); ++i) wg[i] += dw.data()[i];
    auto& bg = biases_[l].grad;
    for (std::size_t r = 0; r < g.rows(); ++r)
      for (std::size_t c = 0; c < g.cols(); ++c) bg(0, c) += g(r, c);
    g = matmul_nt(g, weights_[l].value);
  }
  return g;
}

void Mlp::append_parameters(NamedParameters& out, const std::string& prefix) {
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    out.emplace_back(prefix + ".w" + std::to_string(l), &weights_[l]);
    out.emplace_back(prefix + ".b" + std::to_string(l), &biases_[l]);
  }
}

}  // namespace unionsub
