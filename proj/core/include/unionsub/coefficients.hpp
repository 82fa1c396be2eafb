#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "unionsub/descriptors.hpp"
#include "unionsub/graph.hpp"
#include "unionsub/spectral.hpp"

namespace unionsub {

/// A descriptor failure tagged with the edge it happened on.
class DescriptorError : public std::runtime_error {
 public:
  DescriptorError(Edge edge, const std::string& what);
  Edge edge() const noexcept { return edge_; }

 private:
  Edge edge_;
};

/// Raw per-edge coefficients a^{vu} and row-normalized ã^{vu} per directed
/// pair. `raw` follows `edges` (ascending); `normalized` follows `pairs`,
/// which is the graph's CSR pair order (ascending by (v, u)).
struct CoefficientTable {
  DescriptorKind kind;
  EncodingKind encoding = EncodingKind::SvdSum;
  std::vector<Edge> edges;
  std::vector<double> raw;
  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::vector<double> normalized;
  /// Nodes whose neighbour sum was zero and fell back to uniform weights.
  std::vector<std::string> warnings;

  /// Throws std::out_of_range when (v, u) is not an edge.
  double raw_at(NodeId v, NodeId u) const;
  double normalized_at(NodeId v, NodeId u) const;
  /// True when every pair lines up with the CSR pair layout of g.
  bool matches(const Graph& g) const;
};

/// Computes the descriptor on every edge, then normalizes over each node's
/// neighbours. `threads` = 0 means one per hardware thread; the result does
/// not depend on the thread count. Throws DescriptorError (first failing
/// edge in ascending order) and std::invalid_argument for CycleCount.
CoefficientTable coefficient_table(const Graph& g, const DescriptorKind& kind,
                                   EncodingKind enc = EncodingKind::SvdSum, std::size_t threads = 1);

/// Table whose every raw value is `value`; handy for neutral-plugin runs.
CoefficientTable constant_coefficients(const Graph& g, double value = 1.0);

/// CSV "v,u,raw,norm_vu,norm_uv", one row per edge in ascending order.
std::string coefficients_to_csv(const CoefficientTable& t);
/// {"kind", "encoding", "raw": [{"v","u","value"}], "normalized": [{"v","u","value"}], "warnings"}.
std::string coefficients_to_json(const CoefficientTable& t);

}  // namespace unionsub
