#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "unionsub/coefficients.hpp"
#include "unionsub/generators.hpp"
#include "unionsub/layers.hpp"

namespace unionsub {

enum class ModelKind { Gcn, UnionGcn, Gin, UnionGin, UnionSnn };

std::string to_string(ModelKind kind);
/// "gcn", "union-gcn", "gin", "union-gin", "unionsnn".
ModelKind parse_model(const std::string& text);
bool uses_coefficients(ModelKind kind);

/// Two message-passing layers, mean pooling and a linear head producing two
/// logits.
class GraphClassifier {
 public:
  struct Tape {
    std::vector<DenseTensor> inputs;  // input to each layer
    std::vector<UnionLayer::Tape> union_tapes;
    std::vector<PluginLayer::Tape> plugin_tapes;
    std::vector<DenseTensor> outputs;  // after the inter-layer ReLU
    DenseTensor pooled;
    Mlp::Tape head;
  };

  GraphClassifier() = default;
  GraphClassifier(ModelKind kind, std::size_t input_dim, std::size_t hidden, std::uint64_t seed);

  ModelKind kind() const { return kind_; }
  std::size_t input_dim() const { return input_dim_; }
  std::size_t hidden() const { return hidden_; }

  /// 1 x 2 logits. `coeffs` is ignored by the plain models.
  DenseTensor forward(const Graph& g, const CoefficientTable& coeffs, Tape* tape = nullptr) const;
  void backward(const Graph& g, const Tape& tape, const DenseTensor& grad_logits);
  int predict(const Graph& g, const CoefficientTable& coeffs) const;

  NamedParameters parameters();
  void zero_grad();

 private:
  using Layer = std::variant<UnionLayer, PluginLayer>;

  ModelKind kind_ = ModelKind::Gcn;
  std::size_t input_dim_ = 1;
  std::size_t hidden_ = 16;
  std::vector<Layer> layers_;
  Mlp head_;
};

class Adam {
 public:
  Adam(NamedParameters params, double lr = 1e-3, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);
  void step();

 private:
  NamedParameters params_;
  double lr_, beta1_, beta2_, eps_;
  long t_ = 0;
  std::vector<DenseTensor> m_, v_;
};

struct TrainConfig {
  ModelKind model = ModelKind::UnionGcn;
  std::size_t hidden = 16;
  int epochs = 50;
  double lr = 1e-3;
  std::size_t batch_size = 32;
  std::uint64_t seed = 1;
  DescriptorKind descriptor = DescriptorKind::union_path();
  EncodingKind encoding = EncodingKind::SvdSum;
};

struct EpochLog {
  int epoch = 0;
  double train_loss = 0.0;
  double val_acc = 0.0;
};

struct TrainReport {
  std::vector<EpochLog> log;
  double train_acc = 0.0;
  double val_acc = 0.0;
  double test_acc = 0.0;
  /// Epoch whose parameters were kept (highest validation accuracy, earliest
  /// on ties); 0 when no epoch ran.
  int best_epoch = 0;
};

struct TrainResult {
  GraphClassifier model;
  TrainReport report;
};

/// A graph with its label and precomputed coefficients.
struct Example {
  Graph graph;
  int label = 0;
  CoefficientTable coeffs;
};

/// Validates labels (must be 0 or 1) and computes coefficients when the
/// model needs them.
std::vector<Example> prepare_examples(const std::vector<LabeledGraph>& data, const TrainConfig& config);

double softmax_cross_entropy(const DenseTensor& logits, int label, DenseTensor* grad = nullptr);
double accuracy(const GraphClassifier& model, const std::vector<Example>& data);

/// Adam on cross-entropy with seeded shuffling; deterministic for a seed.
/// `val` and `test` may be empty. `on_epoch` is called after every epoch.
TrainResult train_classifier(const std::vector<Example>& train, const std::vector<Example>& val,
                             const std::vector<Example>& test, const TrainConfig& config,
                             const std::function<void(const EpochLog&)>& on_epoch = {});

/// "epoch,train_loss,val_acc" rows.
std::string training_log_csv(const TrainReport& report);

std::string checkpoint_to_json(GraphClassifier& model, const TrainConfig& config);
/// Restores a model saved by checkpoint_to_json. Throws std::invalid_argument
/// on shape or name mismatches.
GraphClassifier checkpoint_from_json(const std::string& text);

}  // namespace unionsub
