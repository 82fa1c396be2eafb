#include "unionsub/path_matrix.hpp"

#include <queue>
#include <stdexcept>

namespace unionsub {

DenseTensor PathMatrix::to_dense() const {
  DenseTensor out(dim, dim);
  for (std::size_t i = 0; i < entries.size(); ++i) out.data()[i] = entries[i];
  return out;
}

PathMatrix path_matrix(const Subgraph& s) {
  const Graph& g = s.local;
  const std::size_t n = g.num_nodes();
  PathMatrix p;
  p.dim = n;
  p.order = s.parent_ids;
  p.entries.assign(n * n, -1);
  std::vector<NodeId> queue(n);
  for (NodeId src = 0; src < n; ++src) {
    int* dist = p.entries.data() + src * n;
    std::size_t head = 0, tail = 0;
    dist[src] = 0;
    queue[tail++] = src;
    while (head < tail) {
      const NodeId x = queue[head++];
      for (NodeId y : g.neighbors(x)) {
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          queue[tail++] = y;
        }
      }
    }
    if (tail != n) throw std::domain_error("path_matrix: subgraph is disconnected");
  }
  return p;
}

Subgraph reconstruct_subgraph(const PathMatrix& p) {
  if (p.entries.size() != p.dim * p.dim || p.order.size() != p.dim) {
    throw std::invalid_argument("reconstruct_subgraph: inconsistent PathMatrix shape");
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < p.dim; ++i) {
    if (p.at(i, i) != 0) throw std::invalid_argument("reconstruct_subgraph: non-zero diagonal");
    for (std::size_t j = i + 1; j < p.dim; ++j) {
      if (p.at(i, j) != p.at(j, i)) throw std::invalid_argument("reconstruct_subgraph: asymmetric");
      if (p.at(i, j) < 0) throw std::invalid_argument("reconstruct_subgraph: negative entry");
      if (p.at(i, j) == 1) edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
    }
  }
  Subgraph s;
  s.parent_ids = p.order;
  s.local = Graph(p.dim, edges);
  return s;
}

}  // namespace unionsub
