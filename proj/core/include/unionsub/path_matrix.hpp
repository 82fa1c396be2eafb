#pragma once

#include <vector>

#include "unionsub/dense.hpp"
#include "unionsub/graph.hpp"

namespace unionsub {

/// Pairwise shortest-path lengths inside one subgraph. Rows and columns
/// follow `order` (parent ids, ascending).
struct PathMatrix {
  std::size_t dim = 0;
  std::vector<int> entries;  // row-major dim x dim
  std::vector<NodeId> order;

  int at(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }
  DenseTensor to_dense() const;

  friend bool operator==(const PathMatrix&, const PathMatrix&) = default;
};

/// All-pairs BFS distances over s.local. Throws std::domain_error when s is
/// disconnected (an entry would be infinite).
PathMatrix path_matrix(const Subgraph& s);

/// Inverse of path_matrix on connected graphs: edge (i, j) iff entry == 1.
/// Throws std::invalid_argument for asymmetric, negative, or non-zero
/// diagonal input.
Subgraph reconstruct_subgraph(const PathMatrix& p);

}  // namespace unionsub
