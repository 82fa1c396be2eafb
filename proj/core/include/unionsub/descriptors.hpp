#pragma once

#include <cstdint>
#include <string>

#include "unionsub/graph.hpp"
#include "unionsub/spectral.hpp"

namespace unionsub {

/// Per-edge substructure descriptor. Path kinds build a shortest-path
/// matrix on the named local substructure and encode it; the remaining
/// kinds are scalar rivals.
struct DescriptorKind {
  enum class Tag {
    UnionPathSVD,    ///< path matrix of the union subgraph
    OverlapPathSVD,  ///< path matrix of the overlap subgraph
    MinusPathSVD,    ///< path matrix of the union-minus subgraph
    Betweenness,     ///< betweenness of (v, u) inside the union subgraph
    CountNE,         ///< |E| / (|V|(|V|-1)) * |V|^λ on the union subgraph
    RicciCurvature,  ///< α-lazy Ollivier-Ricci curvature on the full graph
    LaplacianSVD,    ///< combinatorial Laplacian of the union subgraph
    CycleCount,      ///< graph-global k-cycle count (benchmark only)
  };

  Tag tag = Tag::UnionPathSVD;
  int lambda = 2;
  double alpha = 0.5;
  int cycle_length = 6;

  static DescriptorKind union_path() { return {Tag::UnionPathSVD}; }
  static DescriptorKind overlap_path() { return {Tag::OverlapPathSVD}; }
  static DescriptorKind minus_path() { return {Tag::MinusPathSVD}; }
  static DescriptorKind betweenness() { return {Tag::Betweenness}; }
  static DescriptorKind count_ne(int lambda = 2) { return {Tag::CountNE, lambda}; }
  static DescriptorKind ricci(double alpha = 0.5) { return {Tag::RicciCurvature, 2, alpha}; }
  static DescriptorKind laplacian() { return {Tag::LaplacianSVD}; }
  static DescriptorKind cycles(int k = 6) { return {Tag::CycleCount, 2, 0.5, k}; }

  /// Matrix-valued kinds take an EncodingKind; scalar kinds ignore it.
  bool uses_encoding() const;
  /// Kinds whose raw values are strictly positive by construction.
  bool strictly_positive() const;
  /// Throws std::invalid_argument when a parameter is out of range.
  void validate() const;

  friend bool operator==(const DescriptorKind&, const DescriptorKind&) = default;
};

std::string to_string(const DescriptorKind& kind);
/// "union", "overlap", "minus", "betweenness", "count-ne[:λ]", "ricci[:α]",
/// "laplacian", "cycle[:k]".
DescriptorKind parse_descriptor(const std::string& text);

/// Σ over unordered node pairs {x, y} of σ(x, y | e) / σ(x, y) inside s, for
/// e = (v, u) given by parent ids. The pair {v, u} contributes 1.
double edge_betweenness_descriptor(const Subgraph& s, NodeId v, NodeId u);

/// |E| / (|V| (|V| - 1)) * |V|^λ. Throws for |V| < 2 or λ ∉ {1, 2}.
double count_ne_descriptor(const Subgraph& s, int lambda);

/// κ = 1 - W1(μ_v, μ_u) / d(v, u) with lazy measures μ_x(x) = α,
/// μ_x(y) = (1 - α) / deg(x) for neighbours y, and ground distances taken as
/// shortest paths in g. The transport problem is solved exactly.
double ricci_curvature(const Graph& g, NodeId v, NodeId u, double alpha = 0.5);

/// Number of simple cycles with exactly k nodes (3 <= k <= 8).
std::uint64_t cycle_count(const Graph& g, int k);

/// Laplacian D - A of a local graph.
DenseTensor laplacian_matrix(const Graph& g);

/// Raw per-edge value for any per-edge kind (not CycleCount).
double edge_descriptor(const Graph& g, NodeId v, NodeId u, const DescriptorKind& kind, EncodingKind enc);

}  // namespace unionsub
