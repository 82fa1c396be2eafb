// unionsub: coefficient export, expressiveness verdicts, dataset generation,
// preprocessing benchmark and toy training.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "unionsub/bench.hpp"
#include "unionsub/coefficients.hpp"
#include "unionsub/dataset.hpp"
#include "unionsub/generators.hpp"
#include "unionsub/graph.hpp"
#include "unionsub/trainer.hpp"
#include "unionsub/wl.hpp"

namespace fs = std::filesystem;
using namespace unionsub;

namespace {

constexpr int kExitParse = 1;
constexpr int kExitDescriptor = 2;

struct Globals {
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string out;
};

// Thrown for input problems that map to exit code 1.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty() || g.out == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw InputError("cannot write " + g.out);
  f << text;
}

std::size_t env_threads() {
  const char* s = std::getenv("UNIONSUB_THREADS");
  if (!s || !*s) return std::max(1u, std::thread::hardware_concurrency());
  try {
    const long v = std::stol(s);
    if (v >= 1) return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
  }
  throw InputError(std::string("UNIONSUB_THREADS must be a positive integer, got '") + s + "'");
}

Graph load_graph(const std::string& path) {
  try {
    return read_graph_file(path);
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

int cmd_coeffs(const Globals& g, const std::string& file, const std::string& kind_text,
               const std::string& enc_text) {
  const Graph graph = load_graph(file);
  CoefficientTable t;
  try {
    t = coefficient_table(graph, parse_descriptor(kind_text), parse_encoding(enc_text), 1);
  } catch (const std::exception& e) {
    // Unknown or unsupported kinds count as descriptor errors too.
    std::cerr << "unionsub coeffs: " << file << ": " << e.what() << "\n";
    return kExitDescriptor;
  }
  for (const auto& w : t.warnings) std::cerr << "warning: " << w << "\n";
  emit(g, g.format == "csv" ? coefficients_to_csv(t) : coefficients_to_json(t));
  return 0;
}

int cmd_distinguish(const Globals& g, const std::string& f1, const std::string& f2,
                    const std::string& kind_text, const std::string& enc_text) {
  const Graph a = load_graph(f1);
  const Graph b = load_graph(f2);
  DistinguishVerdict v;
  try {
    v = distinguish_pair(a, b, parse_descriptor(kind_text), parse_encoding(enc_text));
  } catch (const std::exception& e) {
    std::cerr << "unionsub distinguish: " << e.what() << "\n";
    return kExitDescriptor;
  }
  emit(g, verdict_to_json(v));
  return 0;
}

std::vector<std::size_t> parse_split(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& part : split_list(text)) {
    try {
      out.push_back(std::stoul(part));
    } catch (const std::exception&) {
      throw InputError("bad --split value '" + text + "'");
    }
  }
  if (out.size() != 3) throw InputError("--split needs three counts: train,val,test");
  return out;
}

int cmd_gen(const Globals& g, const std::string& spec, const std::string& dir, std::size_t count,
            const std::string& split, bool json_files) {
  if (dir.empty()) throw InputError("gen: output directory required (--out)");
  const auto format = json_files ? GraphFileFormat::Json : GraphFileFormat::EdgeList;
  const std::string ext = json_files ? ".json" : ".txt";
  auto rename = [&](std::vector<LabeledGraph>& items) {
    if (!json_files) return;
    for (auto& it : items) it.name = fs::path(it.name).replace_extension(ext).string();
  };

  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  if (head == "bench-corpus") {
    std::size_t n = count ? count : 200;
    if (colon != std::string::npos) n = std::stoul(spec.substr(colon + 1));
    auto items = bench_corpus(n, g.seed);
    rename(items);
    write_dataset(dir, items, format);
    return 0;
  }

  const NamedGraphSpec named = parse_named_spec(spec, g.seed);
  if (const auto* fc = std::get_if<FourCyclePairSpec>(&named); fc && (count || !split.empty())) {
    if (!split.empty()) {
      const auto sizes = parse_split(split);
      const char* names[] = {"train", "val", "test"};
      for (int i = 0; i < 3; ++i) {
        // Each split gets its own stream derived from the seed.
        auto items = cycle_detection_dataset(fc->k, sizes[i], g.seed * 3 + static_cast<std::uint64_t>(i));
        rename(items);
        write_dataset(fs::path(dir) / names[i], items, format);
      }
    } else {
      auto items = cycle_detection_dataset(fc->k, count, g.seed);
      rename(items);
      write_dataset(dir, items, format);
    }
    return 0;
  }

  const auto graphs = generate_named(named);
  const bool labeled_pair = std::holds_alternative<FourCyclePairSpec>(named);
  std::vector<LabeledGraph> items;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "g%05zu%s", i, ext.c_str());
    items.push_back({graphs[i], labeled_pair && i == 0 ? 1 : 0, name});
  }
  write_dataset(dir, items, format);
  return 0;
}

int cmd_bench(const Globals& g, const std::string& dir, const std::string& kinds_text, int repeats,
              bool parallel) {
  std::vector<DescriptorKind> kinds;
  if (kinds_text.empty()) {
    kinds = default_bench_kinds();
  } else {
    for (const auto& k : split_list(kinds_text)) kinds.push_back(parse_descriptor(k));
  }
  std::vector<std::string> unreadable;
  const auto corpus = read_corpus(dir, &unreadable);
  for (const auto& f : unreadable) std::cerr << "skipping " << f << "\n";
  auto report = run_bench(corpus, kinds, repeats, EncodingKind::SvdSum, parallel ? env_threads() : 1);
  for (const auto& f : report.failures) std::cerr << "excluded " << f << "\n";
  report.failures.insert(report.failures.begin(), unreadable.begin(), unreadable.end());
  if (g.format == "csv") {
    std::string out = "kind,median_seconds,edges,per_edge_us\n";
    char buf[160];
    for (const auto& e : report.entries) {
      std::snprintf(buf, sizeof buf, "%s,%.9g,%zu,%.9g\n", to_string(e.kind).c_str(), e.median_seconds, e.edges,
                    e.per_edge_us);
      out += buf;
    }
    emit(g, out);
  } else {
    emit(g, bench_report_to_json(report));
  }
  return 0;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

int cmd_train(const Globals& g, const std::string& dir, TrainConfig config, const std::string& checkpoint,
              const std::string& log_path) {
  config.seed = g.seed;
  std::vector<LabeledGraph> train_raw, val_raw, test_raw;
  auto load = [](const fs::path& p) {
    try {
      return read_dataset(p);
    } catch (const std::exception& e) {
      throw InputError(p.string() + ": " + e.what());
    }
  };
  if (fs::exists(fs::path(dir) / "train" / "labels.csv")) {
    train_raw = load(fs::path(dir) / "train");
    if (fs::exists(fs::path(dir) / "val" / "labels.csv")) val_raw = load(fs::path(dir) / "val");
    if (fs::exists(fs::path(dir) / "test" / "labels.csv")) test_raw = load(fs::path(dir) / "test");
  } else {
    train_raw = load(dir);
  }
  if (train_raw.empty()) throw InputError(dir + ": empty training set");

  std::vector<Example> train, val, test;
  try {
    train = prepare_examples(train_raw, config);
    val = prepare_examples(val_raw, config);
    test = prepare_examples(test_raw, config);
  } catch (const DescriptorError& e) {
    std::cerr << "unionsub train: " << e.what() << "\n";
    return kExitDescriptor;
  }

  auto result = train_classifier(train, val, test, config);
  const auto& r = result.report;
  if (!checkpoint.empty()) write_text(checkpoint, checkpoint_to_json(result.model, config));
  if (!log_path.empty()) write_text(log_path, training_log_csv(r));

  if (g.format == "csv") {
    char buf[256];
    std::snprintf(buf, sizeof buf, "model,epochs,best_epoch,train_acc,val_acc,test_acc\n%s,%d,%d,%.6g,%.6g,%.6g\n",
                  to_string(config.model).c_str(), config.epochs, r.best_epoch, r.train_acc, r.val_acc, r.test_acc);
    emit(g, buf);
  } else {
    nlohmann::ordered_json j;
    j["model"] = to_string(config.model);
    j["descriptor"] = nullptr;
    if (uses_coefficients(config.model)) j["descriptor"] = to_string(config.descriptor);
    j["epochs"] = config.epochs;
    j["best_epoch"] = r.best_epoch;
    j["seed"] = config.seed;
    j["train_size"] = train.size();
    j["val_size"] = val.size();
    j["test_size"] = test.size();
    j["train_acc"] = r.train_acc;
    j["val_acc"] = r.val_acc;
    j["test_acc"] = r.test_acc;
    j["final_loss"] = nullptr;
    if (!r.log.empty()) j["final_loss"] = r.log.back().train_loss;
    j["checkpoint"] = nullptr;
    if (!checkpoint.empty()) j["checkpoint"] = checkpoint;
    j["log"] = nullptr;
    if (!log_path.empty()) j["log"] = log_path;
    emit(g, j.dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Union-subgraph structural coefficients and expressiveness checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--out", g.out, "Output file (directory for gen); default stdout");

  std::string kind = "union", enc = "svd";

  auto* coeffs = app.add_subcommand("coeffs", "Per-edge coefficient table for one graph");
  std::string coeffs_file;
  coeffs->add_option("graph", coeffs_file, "Graph file (edge list or JSON)")->required();
  coeffs->add_option("--kind", kind, "Descriptor kind")->capture_default_str();
  coeffs->add_option("--enc", enc, "Matrix encoding: sum, eigmax, svd")->capture_default_str();

  auto* dist = app.add_subcommand("distinguish", "1-WL vs coefficient-augmented verdict for two graphs");
  std::string f1, f2;
  dist->add_option("graph1", f1)->required();
  dist->add_option("graph2", f2)->required();
  dist->add_option("--kind", kind, "Descriptor kind")->capture_default_str();
  dist->add_option("--enc", enc, "Matrix encoding")->capture_default_str();

  auto* gen = app.add_subcommand("gen", "Write generated graphs and labels.csv to --out");
  std::string spec, split;
  std::size_t count = 0;
  bool json_files = false;
  gen->add_option("spec", spec,
                  "cycle:n, complete:n, path:n, rook4x4, shrikhande, c6-vs-2c3, four-cycle[:k[:n]], "
                  "bench-corpus[:count]")
      ->required();
  gen->add_option("--count", count, "Dataset size for four-cycle / bench-corpus");
  gen->add_option("--split", split, "train,val,test sizes for four-cycle (writes subdirectories)");
  gen->add_flag("--json-files", json_files, "Write graphs in JSON instead of edge lists");

  auto* bench = app.add_subcommand("bench", "Median preprocessing time per descriptor over a corpus");
  std::string corpus, kinds;
  int repeats = 3;
  bool parallel = false;
  bench->add_option("corpus", corpus, "Directory of graph files")->required();
  bench->add_option("--kinds", kinds, "Comma-separated kinds (default: union,betweenness,count-ne,ricci,cycle:6)");
  bench->add_option("--repeats", repeats)->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_flag("--parallel", parallel, "Parallel over edges; threads from UNIONSUB_THREADS");

  auto* train = app.add_subcommand("train", "Train a graph classifier on a labeled dataset");
  std::string data_dir, model = "union-gcn", checkpoint, log_path;
  TrainConfig config;
  config.epochs = 100;
  train->add_option("dataset", data_dir, "Dataset dir (labels.csv, or train/ val/ test/ subdirs)")->required();
  train->add_option("--model", model, "gcn, union-gcn, gin, union-gin, unionsnn")->capture_default_str();
  train->add_option("--epochs", config.epochs)->check(CLI::NonNegativeNumber)->capture_default_str();
  train->add_option("--hidden", config.hidden)->check(CLI::PositiveNumber)->capture_default_str();
  train->add_option("--lr", config.lr)->check(CLI::PositiveNumber)->capture_default_str();
  train->add_option("--batch", config.batch_size)->check(CLI::PositiveNumber)->capture_default_str();
  train->add_option("--kind", kind, "Descriptor for coefficient models")->capture_default_str();
  train->add_option("--enc", enc, "Matrix encoding")->capture_default_str();
  train->add_option("--checkpoint", checkpoint, "Write model JSON here");
  train->add_option("--log", log_path, "Write epoch,train_loss,val_acc CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*coeffs) return cmd_coeffs(g, coeffs_file, kind, enc);
    if (*dist) return cmd_distinguish(g, f1, f2, kind, enc);
    if (*gen) return cmd_gen(g, spec, g.out, count, split, json_files);
    if (*bench) return cmd_bench(g, corpus, kinds, repeats, parallel);
    if (*train) {
      config.model = parse_model(model);
      config.descriptor = parse_descriptor(kind);
      config.encoding = parse_encoding(enc);
      return cmd_train(g, data_dir, config, checkpoint, log_path);
    }
  } catch (const DescriptorError& e) {
    std::cerr << "unionsub: " << e.what() << "\n";
    return kExitDescriptor;
  } catch (const std::exception& e) {
    std::cerr << "unionsub: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitParse;
}
