#pragma once

// Finite-difference checks for every layer on one random graph. Layers are
// redrawn while any ReLU input sits within kKinkMargin of zero, where a
// central difference with step 1e-5 would straddle the kink.
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "unionsub/layers.hpp"

namespace gradcheck {

using namespace unionsub;

inline constexpr double kKinkMargin = 1e-4;

inline double relu_margin(const Mlp::Tape& t) {
  double m = std::numeric_limits<double>::infinity();
  // The last layer has no ReLU after it.
  for (std::size_t l = 0; l + 1 < t.pre.size(); ++l)
    for (double x : t.pre[l].data()) m = std::min(m, std::abs(x));
  return m;
}

inline double abs_min(const DenseTensor& x) {
  double m = std::numeric_limits<double>::infinity();
  for (double v : x.data()) m = std::min(m, std::abs(v));
  return m;
}

inline DenseTensor normal(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::normal_distribution<double> z(0.0, 1.0);
  DenseTensor t(r, c);
  for (double& x : t.data()) x = z(rng);
  return t;
}

inline std::vector<Parameter*> params_of(const NamedParameters& named) {
  std::vector<Parameter*> out;
  for (const auto& [name, p] : named) out.push_back(p);
  return out;
}

struct Report {
  std::map<std::string, double> error;  // per layer
  int redraws = 0;
};

/// Checks Trans (through a fixed random mask, since its pooled softmax
/// output is constant), UnionLayer, PluginLayer (GCN and GIN bases) and
/// AttentionBias on `g` with 3 input channels.
inline Report check_all_layers(const Graph& g, const CoefficientTable& coeffs, std::mt19937_64& rng) {
  Report rep;
  const DenseTensor h = normal(g.num_nodes(), 3, rng);

  {
    Trans trans;
    Trans::Tape tape;
    do {
      trans = Trans(3, rng);
      trans.forward(g, coeffs, &tape);
      ++rep.redraws;
    } while (relu_margin(tape.mlp) < kKinkMargin);
    --rep.redraws;
    const DenseTensor mask = normal(coeffs.pairs.size(), 3, rng);
    auto masked = [&](DenseTensor x) {
      for (std::size_t i = 0; i < x.size(); ++i) x.data()[i] *= mask.data()[i];
      return x;
    };
    NamedParameters named;
    trans.append_parameters(named, "trans");
    rep.error["trans"] = grad_check(
        params_of(named), [&] { return masked(trans.forward(g, coeffs)); },
        [&](const DenseTensor& grad) {
          Trans::Tape t;
          trans.forward(g, coeffs, &t);
          trans.backward(g, t, masked(grad));
        },
        normal(1, 3, rng));
  }
  {
    UnionLayer layer;
    UnionLayer::Tape tape;
    do {
      layer = UnionLayer(3, 4, rng);
      layer.epsilon.value(0, 0) = 0.1;
      layer.forward(g, h, coeffs, &tape);
      ++rep.redraws;
    } while (std::min(relu_margin(tape.trans.mlp), relu_margin(tape.mlp)) < kKinkMargin);
    --rep.redraws;
    NamedParameters named;
    layer.append_parameters(named, "union");
    rep.error["union"] = grad_check(
        params_of(named), [&] { return layer.forward(g, h, coeffs); },
        [&](const DenseTensor& grad) {
          UnionLayer::Tape t;
          layer.forward(g, h, coeffs, &t);
          layer.backward(g, h, t, grad);
        },
        normal(1, 4, rng));
  }
  for (PluginBase base : {PluginBase::GCNLike, PluginBase::GINLike}) {
    PluginLayer layer;
    PluginLayer::Tape tape;
    for (;;) {
      layer = PluginLayer(base, true, 3, 4, rng);
      layer.forward(g, h, coeffs, &tape);
      double m = std::min(relu_margin(tape.trans.mlp), relu_margin(tape.mlp));
      if (base == PluginBase::GCNLike) m = std::min(m, abs_min(tape.pre));
      if (m >= kKinkMargin) break;
      ++rep.redraws;
    }
    NamedParameters named;
    layer.append_parameters(named, "plugin");
    const std::string name = base == PluginBase::GCNLike ? "plugin-gcn" : "plugin-gin";
    rep.error[name] = grad_check(
        params_of(named), [&] { return layer.forward(g, h, coeffs); },
        [&](const DenseTensor& grad) {
          PluginLayer::Tape t;
          layer.forward(g, h, coeffs, &t);
          layer.backward(g, h, t, grad);
        },
        normal(1, 4, rng));
  }
  {
    AttentionBias att;
    AttentionBias::Tape tape;
    do {
      att = AttentionBias(3, rng);
      att.forward(g, h, coeffs, &tape);
      ++rep.redraws;
    } while (relu_margin(tape.trans.mlp) < kKinkMargin);
    --rep.redraws;
    NamedParameters named;
    att.append_parameters(named, "attention");
    rep.error["attention"] = grad_check(
        params_of(named), [&] { return att.forward(g, h, coeffs); },
        [&](const DenseTensor& grad) {
          AttentionBias::Tape t;
          att.forward(g, h, coeffs, &t);
          att.backward(g, h, t, grad);
        },
        normal(1, g.num_nodes(), rng));
  }
  return rep;
}

}  // namespace gradcheck
