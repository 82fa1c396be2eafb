#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "unionsub/descriptors.hpp"
#include "unionsub/generators.hpp"

namespace unionsub {

struct BenchEntry {
  DescriptorKind kind;
  double median_seconds = 0.0;
  std::vector<double> seconds;  // one per repeat
  std::size_t edges = 0;
  double per_edge_us = 0.0;
};

struct BenchReport {
  std::size_t graphs = 0;
  std::size_t edges = 0;
  int repeats = 0;
  std::size_t threads = 1;
  std::vector<std::string> failures;  // "name: reason", excluded from every kind
  std::vector<BenchEntry> entries;

  const BenchEntry& at(const DescriptorKind& kind) const;
};

/// The descriptor kinds compared by default: UnionPathSVD, Betweenness,
/// CountNE, RicciCurvature and CycleCount(6).
std::vector<DescriptorKind> default_bench_kinds();

/// Random graphs with n uniform in [n_min, n_max] and expected average
/// degree `avg_degree`.
std::vector<LabeledGraph> bench_corpus(std::size_t count, std::uint64_t seed, std::size_t n_min = 20,
                                       std::size_t n_max = 50, double avg_degree = 3.7);

/// Times each kind over the whole corpus `repeats` times (rounds interleaved
/// across kinds) and reports the median. Per-edge kinds compute a full
/// coefficient table; CycleCount counts cycles once per graph. Any graph
/// that fails for one kind is dropped for all kinds before timing.
BenchReport run_bench(const std::vector<LabeledGraph>& corpus, const std::vector<DescriptorKind>& kinds,
                      int repeats, EncodingKind enc = EncodingKind::SvdSum, std::size_t threads = 1);

std::string bench_report_to_json(const BenchReport& report);

}  // namespace unionsub
