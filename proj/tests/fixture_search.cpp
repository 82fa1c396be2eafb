// Searches for the witness graphs used by the property tests and writes them
// to tests/fixtures/. Deterministic; rerun only when a fixture needs to be
// regenerated.
#include <cstdio>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "unionsub/descriptors.hpp"
#include "unionsub/substructure.hpp"

using namespace unionsub;
using nlohmann::json;

namespace {

double union_svd(const Graph& g, NodeId v, NodeId u) {
  return edge_descriptor(g, v, u, DescriptorKind::union_path(), EncodingKind::SvdSum);
}

// A random connected-ish small graph restricted to the union subgraph of
// (0, 1), relabelled so v = 0 and u = 1.
Graph random_union_graph(std::size_t n, double p, std::mt19937_64& rng) {
  for (;;) {
    Graph g = oracle::random_graph(n, p, rng);
    if (!g.has_edge(0, 1)) g = oracle::with_edge(g, 0, 1);
    const auto nodes = oracle::union_nodes(g, 0, 1);
    if (nodes.size() == g.num_nodes()) return g;
  }
}

void overlap_not_union() {
  std::mt19937_64 rng(11);
  for (int attempt = 0; attempt < 200000; ++attempt) {
    const std::size_t n1 = 4 + rng() % 4, n2 = 4 + rng() % 4;
    const Graph g1 = oracle::random_graph(n1, 0.5, rng);
    const Graph g2 = oracle::random_graph(n2, 0.5, rng);
    const NodeId i = static_cast<NodeId>(rng() % n1), j = static_cast<NodeId>(rng() % n2);
    if (g1.degree(i) == 0 || g1.degree(i) != g2.degree(j)) continue;
    if (!overlap_isomorphic(g1, i, g2, j) || union_isomorphic(g1, i, g2, j)) continue;
    fixtures::save("overlap_not_union.json", {{"g1", fixtures::graph_json(g1)},
                                            {"i", i},
                                            {"g2", fixtures::graph_json(g2)},
                                            {"j", j}});
    std::printf("overlap_not_union: attempt %d, n1=%zu n2=%zu\n", attempt, n1, n2);
    return;
  }
  std::printf("overlap_not_union: not found\n");
}

// g2 = g1 plus one edge between two exclusive neighbours of the same side.
void betweenness_size() {
  std::mt19937_64 rng(12);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const Graph g1 = random_union_graph(4 + rng() % 3, 0.4, rng);
    std::vector<std::pair<NodeId, NodeId>> candidates;
    for (NodeId x = 2; x < g1.num_nodes(); ++x) {
      for (NodeId y = x + 1; y < g1.num_nodes(); ++y) {
        if (g1.has_edge(x, y)) continue;
        const bool xv = g1.has_edge(0, x) && !g1.has_edge(1, x), yv = g1.has_edge(0, y) && !g1.has_edge(1, y);
        const bool xu = g1.has_edge(1, x) && !g1.has_edge(0, x), yu = g1.has_edge(1, y) && !g1.has_edge(0, y);
        if ((xv && yv) || (xu && yu)) candidates.emplace_back(x, y);
      }
    }
    for (auto [x, y] : candidates) {
      const Graph g2 = oracle::with_edge(g1, x, y);
      const double b1 = edge_betweenness_descriptor(as_subgraph(g1), 0, 1);
      const double b2 = edge_betweenness_descriptor(as_subgraph(g2), 0, 1);
      if (std::abs(b1 - b2) > 1e-12) continue;
      if (std::abs(union_svd(g1, 0, 1) - union_svd(g2, 0, 1)) < 1e-6) continue;
      fixtures::save("betweenness_size.json", {{"g1", fixtures::graph_json(g1)},
                                               {"edge1", {0, 1}},
                                               {"g2", fixtures::graph_json(g2)},
                                               {"edge2", {0, 1}},
                                               {"added", {x, y}}});
      std::printf("betweenness_size: attempt %d, n=%zu\n", attempt, g1.num_nodes());
      return;
    }
  }
  std::printf("betweenness_size: not found\n");
}

void countne_connectivity() {
  std::mt19937_64 rng(13);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const std::size_t n = 5 + rng() % 2;
    const Graph g1 = random_union_graph(n, 0.45, rng);
    const Graph g2 = random_union_graph(n, 0.45, rng);
    if (g1.num_edges() != g2.num_edges() || oracle::isomorphic(g1, g2)) continue;
    if (std::abs(union_svd(g1, 0, 1) - union_svd(g2, 0, 1)) < 1e-6) continue;
    fixtures::save("countne_connectivity.json", {{"g1", fixtures::graph_json(g1)},
                                                 {"edge1", {0, 1}},
                                                 {"g2", fixtures::graph_json(g2)},
                                                 {"edge2", {0, 1}}});
    std::printf("countne_connectivity: attempt %d, n=%zu m=%zu\n", attempt, n, g1.num_edges());
    return;
  }
  std::printf("countne_connectivity: not found\n");
}

// Case study: v=0, u=1, common a=2, b=3, v-side d=4, f=6, u-side e=5, and an
// eighth node c=7. Typed representatives ab (E1), ad (E2), de (E3), df (E4).
void case_study() {
  enum : NodeId { V = 0, U = 1, A = 2, B = 3, D = 4, E = 5, F = 6, C = 7 };
  const std::vector<Edge> fixed = {{V, U}, {V, A}, {U, A}, {V, B}, {U, B}, {V, D}, {V, F},
                                   {U, E}, {A, B}, {A, D}, {D, E}, {D, F}};
  std::vector<Edge> optional;
  const NodeId inner[] = {A, B, D, E, F, C};
  for (NodeId x : inner)
    for (NodeId y : inner)
      if (x < y && std::find(fixed.begin(), fixed.end(), Edge(x, y)) == fixed.end()) optional.emplace_back(x, y);
  const std::vector<std::vector<Edge>> c_spokes = {{{V, C}}, {{U, C}}, {{V, C}, {U, C}}};

  int best_extra = 1 << 30;
  json best;
  for (const auto& spokes : c_spokes) {
    for (std::uint32_t mask = 0; mask < (1u << optional.size()); ++mask) {
      const int extra = __builtin_popcount(mask);
      if (extra >= best_extra) continue;
      std::vector<Edge> edges = fixed;
      edges.insert(edges.end(), spokes.begin(), spokes.end());
      for (std::size_t k = 0; k < optional.size(); ++k)
        if (mask >> k & 1) edges.push_back(optional[k]);
      const Graph g(8, edges);
      const double base = union_svd(g, V, U);

      bool ok = true;
      const auto parts = classify_edge_types(g, V, U);
      for (const auto* group : {&parts.e1, &parts.e2, &parts.e3, &parts.e4}) {
        for (const auto& e : *group) ok = ok && union_svd(oracle::without_edge(g, e.a, e.b), V, U) > base + 1e-9;
      }
      if (!ok) continue;
      for (NodeId w = 2; w < 8 && ok; ++w) {
        const Graph h = oracle::without_node(g, w);
        ok = union_svd(h, oracle::shifted(V, w), oracle::shifted(U, w)) < base - 1e-9;
      }
      if (!ok) continue;
      const double impact[] = {union_svd(oracle::without_edge(g, A, B), V, U) - base,
                               union_svd(oracle::without_edge(g, A, D), V, U) - base,
                               union_svd(oracle::without_edge(g, D, E), V, U) - base,
                               union_svd(oracle::without_edge(g, D, F), V, U) - base};
      if (!(impact[0] < impact[1] && impact[1] < impact[2] && impact[2] < impact[3])) continue;
      best_extra = extra;
      best = {{"graph", fixtures::graph_json(g)},
              {"v", V},
              {"u", U},
              {"nodes", {{"a", A}, {"b", B}, {"c", C}, {"d", D}, {"e", E}, {"f", F}}},
              {"typed", {{"e1", {A, B}}, {"e2", {A, D}}, {"e3", {D, E}}, {"e4", {D, F}}}}};
    }
  }
  if (best.is_null()) {
    std::printf("case_study: not found\n");
    return;
  }
  fixtures::save("case_study.json", best);
  std::printf("case_study: %d optional edges\n", best_extra);
}

}  // namespace

int main() {
  overlap_not_union();
  betweenness_size();
  countne_connectivity();
  case_study();
}
