#pragma once

#include <vector>

#include "unionsub/graph.hpp"

namespace unionsub {

/// Edges of S_{v∪u} grouped by where their endpoints sit relative to the
/// common closed neighbourhood C = Ñ(v) ∩ Ñ(u) and the exclusive sets
/// Xv = Ñ(v) \ C, Xu = Ñ(u) \ C. All ids are parent ids.
///
///   e1: C  x C          e3: Xv x Xu
///   e2: C  x (Xv ∪ Xu)  e4: Xv x Xv  or  Xu x Xu
///
/// Edges touching v or u (including (v, u)) are not typed and go to
/// `spokes`.
struct EdgeTypePartition {
  std::vector<Edge> e1, e2, e3, e4;
  std::vector<Edge> spokes;
};

/// Induced subgraph on Ñ(v) ∪ Ñ(u). Throws std::invalid_argument if (v, u)
/// is not an edge.
Subgraph union_subgraph(const Graph& g, NodeId v, NodeId u);

/// S_v ∩ S_u: node set Ñ(v) ∩ Ñ(u), edges present in both closed
/// neighbourhood subgraphs.
Subgraph overlap_subgraph(const Graph& g, NodeId v, NodeId u);

/// S_v ∪ S_u: the union node set, keeping only edges inside Ñ(v) or inside
/// Ñ(u). Not induced; misses exactly the cross-exclusive (e3) edges.
Subgraph union_minus_subgraph(const Graph& g, NodeId v, NodeId u);

EdgeTypePartition classify_edge_types(const Graph& g, NodeId v, NodeId u);

inline constexpr std::size_t kNeighborhoodMaxNodes = 9;

/// True iff a bijection Ñ(i) -> Ñ(j) fixing i -> j pairs every neighbour v
/// with a neighbour g(v) such that S_{i∪v} ≅ S_{j∪g(v)}. Degree mismatch
/// returns false; |Ñ| > kNeighborhoodMaxNodes throws std::length_error.
bool union_isomorphic(const Graph& g1, NodeId i, const Graph& g2, NodeId j);

/// As union_isomorphic with overlap subgraphs S_{i∩v}.
bool overlap_isomorphic(const Graph& g1, NodeId i, const Graph& g2, NodeId j);

}  // namespace unionsub
