#include "unionsub/bench.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "unionsub/coefficients.hpp"

namespace unionsub {

const BenchEntry& BenchReport::at(const DescriptorKind& kind) const {
  for (const auto& e : entries)
    if (e.kind == kind) return e;
  throw std::out_of_range("no bench entry for " + to_string(kind));
}

std::vector<DescriptorKind> default_bench_kinds() {
  return {DescriptorKind::union_path(), DescriptorKind::betweenness(), DescriptorKind::count_ne(),
          DescriptorKind::ricci(), DescriptorKind::cycles(6)};
}

std::vector<LabeledGraph> bench_corpus(std::size_t count, std::uint64_t seed, std::size_t n_min,
                                       std::size_t n_max, double avg_degree) {
  if (n_min < 2 || n_max < n_min) throw std::invalid_argument("bench_corpus: bad node range");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(n_min, n_max);
  std::vector<LabeledGraph> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = size(rng);
    const double p = std::min(1.0, avg_degree / static_cast<double>(n - 1));
    char name[32];
    std::snprintf(name, sizeof name, "b%05zu.txt", i);
    out.push_back({erdos_renyi(n, p, rng), 0, name});
  }
  return out;
}

namespace {

// Returns a checksum so the work cannot be optimized away.
double run_kind(const std::vector<const Graph*>& graphs, const DescriptorKind& kind, EncodingKind enc,
                std::size_t threads) {
  double sink = 0.0;
  for (const Graph* g : graphs) {
    if (kind.tag == DescriptorKind::Tag::CycleCount) {
      sink += static_cast<double>(cycle_count(*g, kind.cycle_length));
    } else {
      const auto t = coefficient_table(*g, kind, enc, threads);
      for (double x : t.raw) sink += x;
    }
  }
  return sink;
}

}  // namespace

BenchReport run_bench(const std::vector<LabeledGraph>& corpus, const std::vector<DescriptorKind>& kinds,
                      int repeats, EncodingKind enc, std::size_t threads) {
  if (repeats < 1) throw std::invalid_argument("run_bench: repeats must be >= 1");
  if (kinds.empty()) throw std::invalid_argument("run_bench: no descriptor kinds");
  for (const auto& k : kinds) k.validate();

  BenchReport report;
  report.repeats = repeats;
  report.threads = threads;
  std::vector<const Graph*> graphs;
  for (const auto& item : corpus) {
    std::string reason;
    for (const auto& k : kinds) {
      try {
        run_kind({&item.graph}, k, enc, 1);
      } catch (const std::exception& e) {
        reason = to_string(k) + ": " + e.what();
        break;
      }
    }
    if (reason.empty()) {
      graphs.push_back(&item.graph);
      report.edges += item.graph.num_edges();
    } else {
      report.failures.push_back(item.name + ": " + reason);
    }
  }
  report.graphs = graphs.size();

  for (const auto& k : kinds) report.entries.push_back({k, 0.0, {}, report.edges, 0.0});
  volatile double sink = 0.0;
  for (int r = 0; r < repeats; ++r) {
    for (auto& entry : report.entries) {
      const auto start = std::chrono::steady_clock::now();
      sink = sink + run_kind(graphs, entry.kind, enc, threads);
      const auto stop = std::chrono::steady_clock::now();
      entry.seconds.push_back(std::chrono::duration<double>(stop - start).count());
    }
  }
  for (auto& entry : report.entries) {
    auto sorted = entry.seconds;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    entry.median_seconds = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
    entry.per_edge_us = report.edges ? entry.median_seconds * 1e6 / static_cast<double>(report.edges) : 0.0;
  }
  return report;
}

std::string bench_report_to_json(const BenchReport& report) {
  nlohmann::ordered_json j;
  j["graphs"] = report.graphs;
  j["edges"] = report.edges;
  j["repeats"] = report.repeats;
  j["threads"] = report.threads;
  j["failures"] = report.failures;
  auto kinds = nlohmann::ordered_json::array();
  for (const auto& e : report.entries) {
    kinds.push_back({{"kind", to_string(e.kind)},
                     {"median_seconds", e.median_seconds},
                     {"seconds", e.seconds},
                     {"edges", e.edges},
                     {"per_edge_us", e.per_edge_us}});
  }
  j["kinds"] = std::move(kinds);
  return j.dump(2) + "\n";
}

}  // namespace unionsub
