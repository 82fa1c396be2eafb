#include "unionsub/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace unionsub {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Gcn: return "gcn";
    case ModelKind::UnionGcn: return "union-gcn";
    case ModelKind::Gin: return "gin";
    case ModelKind::UnionGin: return "union-gin";
    case ModelKind::UnionSnn: return "unionsnn";
  }
  return "?";
}

ModelKind parse_model(const std::string& text) {
  for (ModelKind k : {ModelKind::Gcn, ModelKind::UnionGcn, ModelKind::Gin, ModelKind::UnionGin, ModelKind::UnionSnn}) {
    if (text == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown model '" + text + "' (expected gcn, union-gcn, gin, union-gin, unionsnn)");
}

bool uses_coefficients(ModelKind kind) { return kind != ModelKind::Gcn && kind != ModelKind::Gin; }

// --- GraphClassifier --------------------------------------------------------

GraphClassifier::GraphClassifier(ModelKind kind, std::size_t input_dim, std::size_t hidden, std::uint64_t seed)
    : kind_(kind), input_dim_(input_dim), hidden_(hidden) {
  if (input_dim == 0 || hidden == 0) throw std::invalid_argument("GraphClassifier: zero dimension");
  std::mt19937_64 rng(seed);
  for (std::size_t l = 0; l < 2; ++l) {
    const std::size_t in = l == 0 ? input_dim : hidden;
    switch (kind) {
      case ModelKind::Gcn:
      case ModelKind::UnionGcn:
        layers_.emplace_back(PluginLayer(PluginBase::GCNLike, kind == ModelKind::UnionGcn, in, hidden, rng));
        break;
      case ModelKind::Gin:
      case ModelKind::UnionGin:
        layers_.emplace_back(PluginLayer(PluginBase::GINLike, kind == ModelKind::UnionGin, in, hidden, rng));
        break;
      case ModelKind::UnionSnn:
        layers_.emplace_back(UnionLayer(in, hidden, rng));
        break;
    }
  }
  head_ = Mlp({hidden, 2}, rng);
}

DenseTensor GraphClassifier::forward(const Graph& g, const CoefficientTable& coeffs, Tape* tape) const {
  if (g.num_nodes() == 0) throw std::invalid_argument("GraphClassifier: empty graph");
  if (g.feature_dim() != input_dim_) throw std::invalid_argument("GraphClassifier: feature dim mismatch");
  DenseTensor h(g.num_nodes(), input_dim_);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    auto f = g.features(v);
    std::copy(f.begin(), f.end(), h.row(v).begin());
  }
  if (tape) {
    *tape = Tape{};
    tape->union_tapes.resize(layers_.size());
    tape->plugin_tapes.resize(layers_.size());
  }
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    if (tape) tape->inputs.push_back(h);
    DenseTensor out;
    if (auto* u = std::get_if<UnionLayer>(&layers_[l])) {
      out = u->forward(g, h, coeffs, tape ? &tape->union_tapes[l] : nullptr);
    } else {
      out = std::get<PluginLayer>(layers_[l]).forward(g, h, coeffs, tape ? &tape->plugin_tapes[l] : nullptr);
    }
    for (double& x : out.data()) x = x > 0.0 ? x : 0.0;
    if (tape) tape->outputs.push_back(out);
    h = std::move(out);
  }
  DenseTensor pooled(1, h.cols());
  for (std::size_t r = 0; r < h.rows(); ++r)
    for (std::size_t c = 0; c < h.cols(); ++c) pooled(0, c) += h(r, c);
  for (double& x : pooled.data()) x /= static_cast<double>(h.rows());
  if (tape) tape->pooled = pooled;
  return head_.forward(pooled, tape ? &tape->head : nullptr);
}

void GraphClassifier::backward(const Graph& g, const Tape& tape, const DenseTensor& grad_logits) {
  const DenseTensor dpool = head_.backward(tape.head, grad_logits);
  const std::size_t n = g.num_nodes();
  DenseTensor dh(n, dpool.cols());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < dpool.cols(); ++c) dh(r, c) = dpool(0, c) / static_cast<double>(n);
  for (std::size_t l = layers_.size(); l-- > 0;) {
    const DenseTensor& out = tape.outputs[l];
    for (std::size_t i = 0; i < dh.size(); ++i)
      if (out.data()[i] <= 0.0) dh.data()[i] = 0.0;
    if (auto* u = std::get_if<UnionLayer>(&layers_[l])) {
      dh = u->backward(g, tape.inputs[l], tape.union_tapes[l], dh);
    } else {
      dh = std::get<PluginLayer>(layers_[l]).backward(g, tape.inputs[l], tape.plugin_tapes[l], dh);
    }
  }
}

int GraphClassifier::predict(const Graph& g, const CoefficientTable& coeffs) const {
  const DenseTensor logits = forward(g, coeffs);
  return logits(0, 1) > logits(0, 0) ? 1 : 0;
}

NamedParameters GraphClassifier::parameters() {
  NamedParameters out;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const std::string prefix = "layer" + std::to_string(l);
    std::visit([&](auto& layer) { layer.append_parameters(out, prefix); }, layers_[l]);
  }
  head_.append_parameters(out, "head");
  return out;
}

void GraphClassifier::zero_grad() {
  for (auto& [name, p] : parameters()) p->zero_grad();
}

// --- Adam -------------------------------------------------------------------

Adam::Adam(NamedParameters params, double lr, double beta1, double beta2, double eps)
    : params_(std::move(params)), lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {
  for (auto& [name, p] : params_) {
    m_.emplace_back(p->value.rows(), p->value.cols());
    v_.emplace_back(p->value.rows(), p->value.cols());
  }
}

void Adam::step() {
  ++t_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (std::size_t i = 0; i < params_.size(); ++i) {
    auto& x = params_[i].second->value.data();
    const auto& g = params_[i].second->grad.data();
    auto& m = m_[i].data();
    auto& v = v_[i].data();
    for (std::size_t j = 0; j < x.size(); ++j) {
      m[j] = beta1_ * m[j] + (1.0 - beta1_) * g[j];
      v[j] = beta2_ * v[j] + (1.0 - beta2_) * g[j] * g[j];
      x[j] -= lr_ * (m[j] / c1) / (std::sqrt(v[j] / c2) + eps_);
    }
  }
}

// --- training ---------------------------------------------------------------

std::vector<Example> prepare_examples(const std::vector<LabeledGraph>& data, const TrainConfig& config) {
  std::vector<Example> out;
  out.reserve(data.size());
  for (const auto& item : data) {
    if (item.label != 0 && item.label != 1) {
      throw std::invalid_argument("label " + std::to_string(item.label) + " of '" + item.name +
                                  "' is outside {0, 1}");
    }
    Example ex{item.graph, item.label, {}};
    ex.coeffs = uses_coefficients(config.model)
                    ? coefficient_table(item.graph, config.descriptor, config.encoding)
                    : constant_coefficients(item.graph);
    out.push_back(std::move(ex));
  }
  return out;
}

double softmax_cross_entropy(const DenseTensor& logits, int label, DenseTensor* grad) {
  const double mx = std::max(logits(0, 0), logits(0, 1));
  const double e0 = std::exp(logits(0, 0) - mx);
  const double e1 = std::exp(logits(0, 1) - mx);
  const double p1 = e1 / (e0 + e1);
  const double p0 = e0 / (e0 + e1);
  if (grad) {
    *grad = DenseTensor(1, 2);
    (*grad)(0, 0) = p0 - (label == 0 ? 1.0 : 0.0);
    (*grad)(0, 1) = p1 - (label == 1 ? 1.0 : 0.0);
  }
  return -(logits(0, label) - mx - std::log(e0 + e1));
}

double accuracy(const GraphClassifier& model, const std::vector<Example>& data) {
  if (data.empty()) return 0.0;
  std::size_t correct = 0;
  for (const auto& ex : data) correct += model.predict(ex.graph, ex.coeffs) == ex.label;
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

TrainResult train_classifier(const std::vector<Example>& train, const std::vector<Example>& val,
                             const std::vector<Example>& test, const TrainConfig& config,
                             const std::function<void(const EpochLog&)>& on_epoch) {
  if (train.empty()) throw std::invalid_argument("train_classifier: empty training set");
  if (config.batch_size == 0) throw std::invalid_argument("train_classifier: batch size must be >= 1");
  if (config.epochs < 0) throw std::invalid_argument("train_classifier: negative epoch count");
  TrainResult result;
  result.model = GraphClassifier(config.model, train.front().graph.feature_dim(), config.hidden, config.seed);
  GraphClassifier& model = result.model;
  Adam adam(model.parameters(), config.lr);
  std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);

  std::vector<std::size_t> by_label[2];
  for (std::size_t i = 0; i < train.size(); ++i) by_label[train[i].label].push_back(i);
  std::vector<std::size_t> order;
  GraphClassifier::Tape tape;
  DenseTensor grad;
  GraphClassifier best = model;
  double best_val = -1.0;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    // Class-balanced batches: shuffle each class, then interleave them.
    for (auto& idx : by_label) std::shuffle(idx.begin(), idx.end(), rng);
    order.clear();
    for (std::size_t k = 0; k < std::max(by_label[0].size(), by_label[1].size()); ++k) {
      for (const auto& idx : by_label)
        if (k < idx.size()) order.push_back(idx[k]);
    }
    double total = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      model.zero_grad();
      for (std::size_t i = start; i < end; ++i) {
        const Example& ex = train[order[i]];
        const DenseTensor logits = model.forward(ex.graph, ex.coeffs, &tape);
        total += softmax_cross_entropy(logits, ex.label, &grad);
        for (double& x : grad.data()) x /= static_cast<double>(end - start);
        model.backward(ex.graph, tape, grad);
      }
      adam.step();
    }
    EpochLog entry{epoch, total / static_cast<double>(train.size()), accuracy(model, val)};
    result.report.log.push_back(entry);
    if (on_epoch) on_epoch(entry);
    if (entry.val_acc > best_val) {
      best_val = entry.val_acc;
      best = model;
      result.report.best_epoch = epoch;
    }
  }
  if (result.report.best_epoch > 0) model = best;
  result.report.train_acc = accuracy(model, train);
  result.report.val_acc = accuracy(model, val);
  result.report.test_acc = accuracy(model, test);
  return result;
}

std::string training_log_csv(const TrainReport& report) {
  std::string out = "epoch,train_loss,val_acc\n";
  char buf[96];
  for (const auto& e : report.log) {
    std::snprintf(buf, sizeof buf, "%d,%.10g,%.6g\n", e.epoch, e.train_loss, e.val_acc);
    out += buf;
  }
  return out;
}

std::string checkpoint_to_json(GraphClassifier& model, const TrainConfig& config) {
  nlohmann::ordered_json j;
  j["model"] = to_string(model.kind());
  j["input_dim"] = model.input_dim();
  j["hidden"] = model.hidden();
  j["descriptor"] = to_string(config.descriptor);
  j["encoding"] = to_string(config.encoding);
  auto params = nlohmann::ordered_json::array();
  for (auto& [name, p] : model.parameters()) {
    params.push_back({{"name", name}, {"rows", p->value.rows()}, {"cols", p->value.cols()}, {"data", p->value.data()}});
  }
  j["params"] = std::move(params);
  return j.dump() + "\n";
}

GraphClassifier checkpoint_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("checkpoint: ") + e.what());
  }
  GraphClassifier model(parse_model(j.at("model").get<std::string>()), j.at("input_dim").get<std::size_t>(),
                        j.at("hidden").get<std::size_t>(), 0);
  auto params = model.parameters();
  const auto& saved = j.at("params");
  if (saved.size() != params.size()) throw std::invalid_argument("checkpoint: parameter count mismatch");
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto& s = saved[i];
    Parameter* p = params[i].second;
    if (s.at("name").get<std::string>() != params[i].first || s.at("rows").get<std::size_t>() != p->value.rows() ||
        s.at("cols").get<std::size_t>() != p->value.cols()) {
      throw std::invalid_argument("checkpoint: parameter '" + params[i].first + "' does not match");
    }
    p->value = DenseTensor(p->value.rows(), p->value.cols(), s.at("data").get<std::vector<double>>());
  }
  return model;
}

}  // namespace unionsub
