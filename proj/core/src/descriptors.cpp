#include "unionsub/descriptors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>
#include <vector>

#include "unionsub/path_matrix.hpp"
#include "unionsub/substructure.hpp"
#include "unionsub/transport.hpp"

namespace unionsub {

bool DescriptorKind::uses_encoding() const {
  switch (tag) {
    case Tag::UnionPathSVD:
    case Tag::OverlapPathSVD:
    case Tag::MinusPathSVD:
    case Tag::LaplacianSVD:
      return true;
    default:
      return false;
  }
}

bool DescriptorKind::strictly_positive() const {
  return tag == Tag::UnionPathSVD || tag == Tag::OverlapPathSVD || tag == Tag::MinusPathSVD ||
         tag == Tag::Betweenness || tag == Tag::CountNE;
}

void DescriptorKind::validate() const {
  if (tag == Tag::CountNE && lambda != 1 && lambda != 2) {
    throw std::invalid_argument("count-ne: lambda must be 1 or 2");
  }
  if (tag == Tag::RicciCurvature && !(alpha >= 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("ricci: alpha must be in [0, 1)");
  }
  if (tag == Tag::CycleCount && (cycle_length < 3 || cycle_length > 8)) {
    throw std::invalid_argument("cycle: k must be in [3, 8]");
  }
}

std::string to_string(const DescriptorKind& kind) {
  using T = DescriptorKind::Tag;
  switch (kind.tag) {
    case T::UnionPathSVD: return "union";
    case T::OverlapPathSVD: return "overlap";
    case T::MinusPathSVD: return "minus";
    case T::Betweenness: return "betweenness";
    case T::CountNE: return "count-ne:" + std::to_string(kind.lambda);
    case T::RicciCurvature: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "ricci:%g", kind.alpha);
      return buf;
    }
    case T::LaplacianSVD: return "laplacian";
    case T::CycleCount: return "cycle:" + std::to_string(kind.cycle_length);
  }
  return "?";
}

DescriptorKind parse_descriptor(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto int_arg = [&](int fallback) {
    if (arg.empty()) return fallback;
    std::size_t used = 0;
    int value = std::stoi(arg, &used);
    if (used != arg.size()) throw std::invalid_argument("bad parameter in '" + text + "'");
    return value;
  };
  DescriptorKind kind;
  if (name == "union") kind = DescriptorKind::union_path();
  else if (name == "overlap") kind = DescriptorKind::overlap_path();
  else if (name == "minus") kind = DescriptorKind::minus_path();
  else if (name == "betweenness") kind = DescriptorKind::betweenness();
  else if (name == "count-ne") kind = DescriptorKind::count_ne(int_arg(2));
  else if (name == "ricci") kind = DescriptorKind::ricci(arg.empty() ? 0.5 : std::stod(arg));
  else if (name == "laplacian") kind = DescriptorKind::laplacian();
  else if (name == "cycle") kind = DescriptorKind::cycles(int_arg(6));
  else throw std::invalid_argument("unknown descriptor '" + text + "'");
  kind.validate();
  return kind;
}

// ---------------------------------------------------------------------------

namespace {

struct BfsCounts {
  std::vector<int> dist;
  std::vector<double> sigma;  // number of shortest paths from the source
};

BfsCounts bfs_counts(const Graph& g, NodeId src) {
  BfsCounts r;
  r.dist.assign(g.num_nodes(), -1);
  r.sigma.assign(g.num_nodes(), 0.0);
  std::vector<NodeId> queue{src};
  r.dist[src] = 0;
  r.sigma[src] = 1.0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId x = queue[head];
    for (NodeId y : g.neighbors(x)) {
      if (r.dist[y] < 0) {
        r.dist[y] = r.dist[x] + 1;
        queue.push_back(y);
      }
      if (r.dist[y] == r.dist[x] + 1) r.sigma[y] += r.sigma[x];
    }
  }
  return r;
}

}  // namespace

double edge_betweenness_descriptor(const Subgraph& s, NodeId v, NodeId u) {
  const std::size_t lv = s.local_index(v);
  const std::size_t lu = s.local_index(u);
  if (lv == Graph::npos || lu == Graph::npos || !s.local.has_edge(static_cast<NodeId>(lv), static_cast<NodeId>(lu))) {
    throw std::invalid_argument("edge_betweenness_descriptor: (" + std::to_string(v) + ", " +
                                std::to_string(u) + ") is not an edge of the subgraph");
  }
  const Graph& g = s.local;
  const std::size_t n = g.num_nodes();
  std::vector<BfsCounts> all(n);
  for (NodeId x = 0; x < n; ++x) all[x] = bfs_counts(g, x);

  // A shortest x-y path uses edge (v, u) iff it is a shortest x-v path, the
  // edge, then a shortest u-y path (or the mirrored orientation).
  double total = 0.0;
  for (NodeId x = 0; x < n; ++x) {
    for (NodeId y = x + 1; y < n; ++y) {
      const int dxy = all[x].dist[y];
      if (dxy < 0) continue;
      double through = 0.0;
      for (auto [a, b] : {std::pair{lv, lu}, std::pair{lu, lv}}) {
        const int dxa = all[x].dist[a];
        const int dby = all[b].dist[y];
        if (dxa >= 0 && dby >= 0 && dxa + 1 + dby == dxy) through += all[x].sigma[a] * all[b].sigma[y];
      }
      total += through / all[x].sigma[y];
    }
  }
  return total;
}

double count_ne_descriptor(const Subgraph& s, int lambda) {
  if (lambda != 1 && lambda != 2) throw std::invalid_argument("count_ne_descriptor: lambda must be 1 or 2");
  const double n = static_cast<double>(s.num_nodes());
  if (s.num_nodes() < 2) throw std::invalid_argument("count_ne_descriptor: needs at least 2 nodes");
  return static_cast<double>(s.num_edges()) / (n * (n - 1.0)) * std::pow(n, lambda);
}

double ricci_curvature(const Graph& g, NodeId v, NodeId u, double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("ricci_curvature: alpha must be in [0, 1)");
  if (!g.has_edge(v, u)) {
    throw std::invalid_argument("ricci_curvature: (" + std::to_string(v) + ", " + std::to_string(u) +
                                ") is not an edge");
  }
  const auto support_v = closed_neighborhood(g, v);
  const auto support_u = closed_neighborhood(g, u);
  auto measure = [&](NodeId center, const std::vector<NodeId>& support) {
    std::vector<double> mass(support.size());
    const double spread = (1.0 - alpha) / static_cast<double>(g.degree(center));
    for (std::size_t i = 0; i < support.size(); ++i) mass[i] = support[i] == center ? alpha : spread;
    return mass;
  };
  const auto mu_v = measure(v, support_v);
  const auto mu_u = measure(u, support_u);

  // Ground distances in the whole graph: BFS from each source until every
  // target in the other support has been reached.
  DenseTensor cost(support_v.size(), support_u.size());
  std::vector<int> dist(g.num_nodes());
  std::vector<NodeId> queue;
  for (std::size_t i = 0; i < support_v.size(); ++i) {
    std::fill(dist.begin(), dist.end(), -1);
    queue.assign(1, support_v[i]);
    dist[support_v[i]] = 0;
    std::size_t remaining = support_u.size();
    for (std::size_t head = 0; head < queue.size() && remaining > 0; ++head) {
      const NodeId x = queue[head];
      if (std::binary_search(support_u.begin(), support_u.end(), x)) --remaining;
      for (NodeId y : g.neighbors(x)) {
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
      }
    }
    for (std::size_t j = 0; j < support_u.size(); ++j) cost(i, j) = dist[support_u[j]];
  }
  const TransportPlan plan = solve_transport(mu_v, mu_u, cost);
  return 1.0 - plan.cost;  // d(v, u) = 1 for adjacent nodes
}

std::uint64_t cycle_count(const Graph& g, int k) {
  if (k < 3 || k > 8) throw std::invalid_argument("cycle_count: k must be in [3, 8]");
  const auto len = static_cast<std::size_t>(k);
  if (len > g.num_nodes()) return 0;
  // Each cycle is counted once: rooted at its smallest node, traversed in
  // the orientation whose second node is smaller than its last.
  std::uint64_t count = 0;
  std::vector<NodeId> path;
  std::vector<bool> on_path(g.num_nodes(), false);
  for (NodeId start = 0; start < g.num_nodes(); ++start) {
    path.assign(1, start);
    on_path[start] = true;
    auto extend = [&](auto&& self, NodeId x) -> void {
      if (path.size() == len) {
        if (path[1] < path.back() && g.has_edge(x, start)) ++count;
        return;
      }
      for (NodeId y : g.neighbors(x)) {
        if (y <= start || on_path[y]) continue;
        on_path[y] = true;
        path.push_back(y);
        self(self, y);
        path.pop_back();
        on_path[y] = false;
      }
    };
    extend(extend, start);
    on_path[start] = false;
  }
  return count;
}

DenseTensor laplacian_matrix(const Graph& g) {
  const std::size_t n = g.num_nodes();
  DenseTensor l(n, n);
  for (NodeId x = 0; x < n; ++x) {
    l(x, x) = static_cast<double>(g.degree(x));
    for (NodeId y : g.neighbors(x)) l(x, y) = -1.0;
  }
  return l;
}

double edge_descriptor(const Graph& g, NodeId v, NodeId u, const DescriptorKind& kind, EncodingKind enc) {
  using T = DescriptorKind::Tag;
  switch (kind.tag) {
    case T::UnionPathSVD:
      return encode_matrix(path_matrix(union_subgraph(g, v, u)).to_dense(), enc);
    case T::OverlapPathSVD:
      return encode_matrix(path_matrix(overlap_subgraph(g, v, u)).to_dense(), enc);
    case T::MinusPathSVD:
      return encode_matrix(path_matrix(union_minus_subgraph(g, v, u)).to_dense(), enc);
    case T::Betweenness:
      return edge_betweenness_descriptor(union_subgraph(g, v, u), v, u);
    case T::CountNE:
      return count_ne_descriptor(union_subgraph(g, v, u), kind.lambda);
    case T::RicciCurvature:
      return ricci_curvature(g, v, u, kind.alpha);
    case T::LaplacianSVD:
      return encode_matrix(laplacian_matrix(union_subgraph(g, v, u).local), enc);
    case T::CycleCount:
      break;
  }
  throw std::invalid_argument("edge_descriptor: " + to_string(kind) + " is not a per-edge descriptor");
}

}  // namespace unionsub
