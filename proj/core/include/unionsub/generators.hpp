#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "unionsub/graph.hpp"

namespace unionsub {

struct CycleSpec { std::size_t n = 3; };
struct CompleteSpec { std::size_t n = 1; };
struct PathSpec { std::size_t n = 1; };
struct Rook4x4Spec {};
struct ShrikhandeSpec {};
struct TwoTrianglesVsC6Spec {};
/// One positive (contains a k-cycle) and one negative graph. Each is a cubic
/// core on `n` nodes, free of cycles shorter than k, with one pendant leaf
/// per core node (2n nodes total).
struct FourCyclePairSpec {
  std::size_t k = 4;
  std::size_t n = 20;
  std::uint64_t seed = 1;
};

using NamedGraphSpec = std::variant<CycleSpec, CompleteSpec, PathSpec, Rook4x4Spec, ShrikhandeSpec,
                                    TwoTrianglesVsC6Spec, FourCyclePairSpec>;

/// Builds the graph(s) named by `spec`. Pair kinds return exactly two graphs
/// of equal node count. Throws std::invalid_argument on bad parameters.
std::vector<Graph> generate_named(const NamedGraphSpec& spec);

/// Parses "cycle:6", "complete:4", "path:3", "rook4x4", "shrikhande",
/// "c6-vs-2c3", "four-cycle:4" (optional ":n" suffix for the node count).
NamedGraphSpec parse_named_spec(const std::string& text, std::uint64_t seed);

Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph path_graph(std::size_t n);
/// Star with one center (node 0) and `leaves` leaves.
Graph star_graph(std::size_t leaves);
Graph rook_4x4();
Graph shrikhande();

/// Uniform-ish random simple graph with edge probability p.
Graph erdos_renyi(std::size_t n, double p, std::mt19937_64& rng);

/// True if some simple cycle has exactly `len` nodes.
bool has_cycle_of_length(const Graph& g, std::size_t len);
/// Length of the shortest cycle, or 0 for a forest.
std::size_t girth(const Graph& g);

/// Random cubic simple graph with no cycle of length < k and at least one
/// cycle of length exactly k (positive) or none of length <= k (negative).
Graph random_cubic_cycle_graph(std::size_t n, std::size_t k, bool positive, std::mt19937_64& rng);

/// Adds node n + v and edge (v, n + v) for every node v of `core`.
Graph attach_pendants(const Graph& core);

struct LabeledGraph {
  Graph graph;
  int label = 0;
  std::string name;
};

/// Balanced k-cycle detection dataset: `count` graphs alternating label 1/0.
/// Each graph is a random cubic core with pendants attached; core sizes are
/// drawn from even values in [n_min, n_max] and shared by consecutive pairs.
std::vector<LabeledGraph> cycle_detection_dataset(std::size_t k, std::size_t count,
                                                  std::uint64_t seed, std::size_t n_min = 16,
                                                  std::size_t n_max = 24);

}  // namespace unionsub
