#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace unionsub {

using NodeId = std::uint32_t;

/// Unordered node pair stored with `a < b`.
struct Edge {
  NodeId a = 0;
  NodeId b = 0;

  Edge() = default;
  Edge(NodeId x, NodeId y) : a(x < y ? x : y), b(x < y ? y : x) {}

  auto operator<=>(const Edge&) const = default;
};

/// Raised by the graph readers. `line()` is 1-based, or 0 when the error has
/// no meaningful line (e.g. a JSON document with a bad field).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Immutable simple undirected graph with sorted CSR adjacency.
///
/// Node ids are 0..num_nodes()-1. Node features are optional; when absent
/// every node carries the constant scalar feature 1.0.
class Graph {
 public:
  Graph() = default;

  /// Validates and builds. Throws std::invalid_argument on a self-loop or a
  /// duplicate edge and std::out_of_range on an id >= num_nodes.
  Graph(std::size_t num_nodes, std::span<const Edge> edges);
  Graph(std::size_t num_nodes, std::span<const Edge> edges,
        std::vector<std::vector<double>> features);

  std::size_t num_nodes() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  /// Edges sorted ascending by (a, b).
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const NodeId> neighbors(NodeId v) const;
  std::size_t degree(NodeId v) const;
  bool has_edge(NodeId x, NodeId y) const;

  /// Index of the edge in edges(), or npos.
  std::size_t edge_index(NodeId x, NodeId y) const;

  /// Directed-pair layout: pair p in [pair_begin(v), pair_end(v)) is
  /// (v, neighbor_targets()[p]).
  std::size_t pair_begin(NodeId v) const { return offsets_.at(v); }
  std::size_t pair_end(NodeId v) const { return offsets_.at(v + 1); }
  std::size_t num_pairs() const noexcept { return targets_.size(); }
  std::span<const NodeId> neighbor_targets() const noexcept { return targets_; }
  std::size_t pair_index(NodeId v, NodeId u) const;

  bool has_features() const noexcept { return has_features_; }
  std::size_t feature_dim() const noexcept { return feature_dim_; }
  std::span<const double> features(NodeId v) const;

  friend bool operator==(const Graph& x, const Graph& y) {
    return x.offsets_ == y.offsets_ && x.edges_ == y.edges_ && x.has_features_ == y.has_features_ &&
           x.feature_dim_ == y.feature_dim_ && x.feature_data_ == y.feature_data_;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  void check_node(NodeId v) const;

  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> targets_;
  std::vector<Edge> edges_;
  bool has_features_ = false;
  std::size_t feature_dim_ = 1;
  std::vector<double> feature_data_;
};

/// Induced local graph plus the local -> parent id mapping (ascending).
struct Subgraph {
  Graph local;
  std::vector<NodeId> parent_ids;

  std::size_t num_nodes() const noexcept { return local.num_nodes(); }
  std::size_t num_edges() const noexcept { return local.num_edges(); }
  /// Local index of a parent id, or Graph::npos.
  std::size_t local_index(NodeId parent) const;
  /// Edge list translated to parent ids.
  std::vector<Edge> parent_edges() const;

  friend bool operator==(const Subgraph&, const Subgraph&) = default;
};

/// Reads either the edge-list format ("n m" then m lines "u v") or the JSON
/// format ({"num_nodes", "edges", "features"?}); the first non-blank byte
/// decides which.
Graph parse_graph(std::string_view text);
Graph read_graph_file(const std::string& path);

std::string to_edge_list(const Graph& g);
std::string to_json(const Graph& g);

/// N(v) ∪ {v}, ascending.
std::vector<NodeId> closed_neighborhood(const Graph& g, NodeId v);

/// Induced subgraph on `nodes` (any order, duplicates ignored).
Subgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

/// Whole graph as a Subgraph with the identity mapping.
Subgraph as_subgraph(const Graph& g);

inline constexpr std::size_t kIsomorphismMaxNodes = 12;

/// Exact isomorphism test by degree-pruned backtracking. Throws
/// std::length_error when either side exceeds kIsomorphismMaxNodes.
bool is_isomorphic_small(const Graph& a, const Graph& b);
inline bool is_isomorphic_small(const Subgraph& a, const Subgraph& b) {
  return is_isomorphic_small(a.local, b.local);
}

/// Relabels nodes: node v becomes perm[v]. Features follow their node.
Graph relabel(const Graph& g, std::span<const NodeId> perm);

/// Disjoint union; nodes of `b` are shifted by a.num_nodes().
Graph disjoint_union(const Graph& a, const Graph& b);

bool is_connected(const Graph& g);

}  // namespace unionsub
