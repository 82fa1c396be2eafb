#include "unionsub/substructure.hpp"

#include <algorithm>
#include <functional>
#include <iterator>

namespace unionsub {

namespace {

void require_edge(const Graph& g, NodeId v, NodeId u) {
  if (v >= g.num_nodes() || u >= g.num_nodes()) {
    throw std::out_of_range("node id out of range for edge (" + std::to_string(v) + ", " +
                            std::to_string(u) + ")");
  }
  if (!g.has_edge(v, u)) {
    throw std::invalid_argument("(" + std::to_string(v) + ", " + std::to_string(u) +
                                ") is not an edge");
  }
}

std::vector<NodeId> set_union(const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
  std::vector<NodeId> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<NodeId> set_intersection(const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
  std::vector<NodeId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool contains(const std::vector<NodeId>& sorted, NodeId x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

}  // namespace

Subgraph union_subgraph(const Graph& g, NodeId v, NodeId u) {
  require_edge(g, v, u);
  auto nodes = set_union(closed_neighborhood(g, v), closed_neighborhood(g, u));
  return induced_subgraph(g, nodes);
}

Subgraph overlap_subgraph(const Graph& g, NodeId v, NodeId u) {
  require_edge(g, v, u);
  // An edge is in both S_v and S_u iff both endpoints are common closed
  // neighbours, so the intersection is induced on the common set.
  auto nodes = set_intersection(closed_neighborhood(g, v), closed_neighborhood(g, u));
  return induced_subgraph(g, nodes);
}

Subgraph union_minus_subgraph(const Graph& g, NodeId v, NodeId u) {
  require_edge(g, v, u);
  const auto nv = closed_neighborhood(g, v);
  const auto nu = closed_neighborhood(g, u);
  Subgraph full = induced_subgraph(g, set_union(nv, nu));
  std::vector<Edge> kept;
  for (const Edge& e : full.local.edges()) {
    const NodeId a = full.parent_ids[e.a];
    const NodeId b = full.parent_ids[e.b];
    if ((contains(nv, a) && contains(nv, b)) || (contains(nu, a) && contains(nu, b))) kept.push_back(e);
  }
  Subgraph out;
  out.parent_ids = std::move(full.parent_ids);
  out.local = Graph(out.parent_ids.size(), kept);
  return out;
}

EdgeTypePartition classify_edge_types(const Graph& g, NodeId v, NodeId u) {
  require_edge(g, v, u);
  const auto nv = closed_neighborhood(g, v);
  const auto nu = closed_neighborhood(g, u);
  const auto common = set_intersection(nv, nu);
  enum class Side { Common, OnlyV, OnlyU };
  auto side = [&](NodeId x) {
    if (contains(common, x)) return Side::Common;
    return contains(nv, x) ? Side::OnlyV : Side::OnlyU;
  };

  EdgeTypePartition out;
  Subgraph s = induced_subgraph(g, set_union(nv, nu));
  for (const Edge& pe : s.parent_edges()) {
    if (pe.a == v || pe.b == v || pe.a == u || pe.b == u) {
      out.spokes.push_back(pe);
      continue;
    }
    const Side sa = side(pe.a);
    const Side sb = side(pe.b);
    if (sa == Side::Common && sb == Side::Common) {
      out.e1.push_back(pe);
    } else if (sa == Side::Common || sb == Side::Common) {
      out.e2.push_back(pe);
    } else if (sa != sb) {
      out.e3.push_back(pe);
    } else {
      out.e4.push_back(pe);
    }
  }
  return out;
}

namespace {

using LocalSubgraph = std::function<Subgraph(const Graph&, NodeId, NodeId)>;

// Kuhn's augmenting-path matching on the neighbour compatibility matrix.
bool perfect_matching(const std::vector<std::vector<bool>>& compat) {
  const std::size_t n = compat.size();
  std::vector<std::size_t> match_right(n, n);
  for (std::size_t left = 0; left < n; ++left) {
    std::vector<bool> visited(n, false);
    std::function<bool(std::size_t)> augment = [&](std::size_t l) {
      for (std::size_t r = 0; r < n; ++r) {
        if (!compat[l][r] || visited[r]) continue;
        visited[r] = true;
        if (match_right[r] == n || augment(match_right[r])) {
          match_right[r] = l;
          return true;
        }
      }
      return false;
    };
    if (!augment(left)) return false;
  }
  return true;
}

bool neighborhood_isomorphic(const Graph& g1, NodeId i, const Graph& g2, NodeId j,
                             const LocalSubgraph& local) {
  const auto n1 = g1.neighbors(i);
  const auto n2 = g2.neighbors(j);
  if (n1.size() + 1 > kNeighborhoodMaxNodes || n2.size() + 1 > kNeighborhoodMaxNodes) {
    throw std::length_error("closed neighbourhoods limited to " +
                            std::to_string(kNeighborhoodMaxNodes) + " nodes");
  }
  if (n1.size() != n2.size()) return false;

  // The condition couples each neighbour only with its own image, so a valid
  // bijection exists iff the compatibility bipartite graph has a perfect
  // matching.
  std::vector<Subgraph> left, right;
  for (NodeId v : n1) left.push_back(local(g1, i, v));
  for (NodeId w : n2) right.push_back(local(g2, j, w));
  std::vector<std::vector<bool>> compat(n1.size(), std::vector<bool>(n2.size(), false));
  for (std::size_t a = 0; a < n1.size(); ++a)
    for (std::size_t b = 0; b < n2.size(); ++b) compat[a][b] = is_isomorphic_small(left[a], right[b]);
  return perfect_matching(compat);
}

}  // namespace

bool union_isomorphic(const Graph& g1, NodeId i, const Graph& g2, NodeId j) {
  return neighborhood_isomorphic(g1, i, g2, j, union_subgraph);
}

bool overlap_isomorphic(const Graph& g1, NodeId i, const Graph& g2, NodeId j) {
  return neighborhood_isomorphic(g1, i, g2, j, overlap_subgraph);
}

}  // namespace unionsub
