#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "unionsub/coefficients.hpp"
#include "unionsub/descriptors.hpp"
#include "unionsub/generators.hpp"
#include "unionsub/path_matrix.hpp"
#include "unionsub/spectral.hpp"
#include "unionsub/substructure.hpp"
#include "unionsub/transport.hpp"

using namespace unionsub;

namespace {

PathMatrix make_path_matrix(std::size_t dim, std::vector<int> entries) {
  PathMatrix p;
  p.dim = dim;
  p.entries = std::move(entries);
  for (std::size_t i = 0; i < dim; ++i) p.order.push_back(static_cast<NodeId>(i));
  return p;
}

DenseTensor random_symmetric(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-5, 5);
  DenseTensor m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = d(rng);
  return m;
}

double union_svd(const Graph& g, NodeId v, NodeId u) {
  return edge_descriptor(g, v, u, DescriptorKind::union_path(), EncodingKind::SvdSum);
}

}  // namespace

TEST(PathMatrix, Examples) {
  EXPECT_EQ(path_matrix(as_subgraph(complete_graph(3))).entries, (std::vector<int>{0, 1, 1, 1, 0, 1, 1, 1, 0}));
  EXPECT_EQ(path_matrix(as_subgraph(path_graph(3))).entries, (std::vector<int>{0, 1, 2, 1, 0, 1, 2, 1, 0}));
  // Union subgraph of C6 edge (0, 1) is the path 5-0-1-2; rows follow ids 0, 1, 2, 5.
  const PathMatrix p = path_matrix(union_subgraph(cycle_graph(6), 0, 1));
  EXPECT_EQ(p.order, (std::vector<NodeId>{0, 1, 2, 5}));
  EXPECT_EQ(p.entries, (std::vector<int>{0, 1, 2, 1, 1, 0, 1, 2, 2, 1, 0, 3, 1, 2, 3, 0}));
}

TEST(PathMatrix, RejectsDisconnected) {
  EXPECT_THROW(path_matrix(as_subgraph(Graph(3, std::vector<Edge>{{0, 1}}))), std::domain_error);
}

TEST(PathMatrix, MatchesFloydWarshallOnUnionSubgraphs) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 40; ++t) {
    const Graph g = oracle::random_graph(12, 0.3, rng);
    for (const auto& e : g.edges()) {
      const Subgraph s = union_subgraph(g, e.a, e.b);
      const PathMatrix p = path_matrix(s);
      const auto d = oracle::all_pairs_distances(s.local);
      for (std::size_t i = 0; i < p.dim; ++i) {
        for (std::size_t j = 0; j < p.dim; ++j) {
          ASSERT_EQ(p.at(i, j), d[i][j]);
          if (i != j) {
            EXPECT_GE(p.at(i, j), 1);
            EXPECT_LE(p.at(i, j), 3);
          }
        }
      }
    }
  }
}

TEST(ReconstructSubgraph, ExamplesAndErrors) {
  EXPECT_EQ(reconstruct_subgraph(make_path_matrix(3, {0, 1, 1, 1, 0, 1, 1, 1, 0})).local, complete_graph(3));
  EXPECT_EQ(reconstruct_subgraph(make_path_matrix(3, {0, 1, 2, 1, 0, 1, 2, 1, 0})).local, path_graph(3));
  EXPECT_THROW(reconstruct_subgraph(make_path_matrix(2, {0, 1, 2, 0})), std::invalid_argument);
  EXPECT_THROW(reconstruct_subgraph(make_path_matrix(2, {0, -1, -1, 0})), std::invalid_argument);
  EXPECT_THROW(reconstruct_subgraph(make_path_matrix(2, {1, 1, 1, 0})), std::invalid_argument);
}

TEST(ReconstructSubgraph, RoundTripOnRandomUnionSubgraphs) {
  std::mt19937_64 rng(32);
  int checked = 0;
  while (checked < 50) {
    const Graph g = oracle::random_graph(10, 0.35, rng);
    for (const auto& e : g.edges()) {
      const Subgraph s = union_subgraph(g, e.a, e.b);
      const PathMatrix p = path_matrix(s);
      const Subgraph r = reconstruct_subgraph(p);
      EXPECT_EQ(r.local, s.local);
      EXPECT_EQ(r.parent_ids, s.parent_ids);
      EXPECT_EQ(path_matrix(r), p);
      ++checked;
    }
  }
}

TEST(EncodeMatrix, SmallExamples) {
  const DenseTensor k3 = path_matrix(as_subgraph(complete_graph(3))).to_dense();
  const DenseTensor p3 = path_matrix(as_subgraph(path_graph(3))).to_dense();
  EXPECT_NEAR(encode_matrix(k3, EncodingKind::SvdSum), 4.0, 1e-12);
  EXPECT_NEAR(oracle::nuclear_norm(k3), 4.0, 1e-12);
  EXPECT_NEAR(encode_matrix(p3, EncodingKind::SvdSum), 2.0 + 2.0 * std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(oracle::nuclear_norm(p3), 2.0 + 2.0 * std::sqrt(3.0), 1e-12);
  EXPECT_EQ(encode_matrix(k3, EncodingKind::MatrixSum), 6.0);
  EXPECT_NEAR(encode_matrix(k3, EncodingKind::EigenMax), 2.0, 1e-12);
  EXPECT_NEAR(encode_matrix(p3, EncodingKind::EigenMax), 1.0 + std::sqrt(3.0), 1e-12);
  EXPECT_THROW(encode_matrix(DenseTensor(2, 3), EncodingKind::SvdSum), std::invalid_argument);
  EXPECT_EQ(encode_matrix(DenseTensor(0, 0), EncodingKind::SvdSum), 0.0);
}

TEST(EncodeMatrix, JacobiMatchesEigenOracle) {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 200; ++t) {
    const DenseTensor m = random_symmetric(1 + rng() % 10, rng);
    const auto ours = symmetric_eigenvalues(m);
    const auto ref = oracle::eigenvalues(m);
    ASSERT_EQ(ours.size(), ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(ours[i], ref[i], 1e-8);
    EXPECT_NEAR(encode_matrix(m, EncodingKind::SvdSum), oracle::nuclear_norm(m), 1e-8);
  }
}

TEST(EncodeMatrix, NonSymmetricInputUsesGramMatrix) {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + rng() % 6;
    DenseTensor m(n, n);
    for (double& x : m.data()) x = d(rng);
    EXPECT_NEAR(encode_matrix(m, EncodingKind::SvdSum), oracle::nuclear_norm(m), 1e-7);
  }
}

TEST(EncodeMatrix, SweepCapRaises) {
  std::mt19937_64 rng(35);
  const DenseTensor m = random_symmetric(8, rng);
  EXPECT_THROW(symmetric_eigenvalues(m, JacobiOptions{1e-12, 0}), ConvergenceError);
}

TEST(Betweenness, Examples) {
  EXPECT_DOUBLE_EQ(edge_betweenness_descriptor(as_subgraph(path_graph(3)), 0, 1), 2.0);
  EXPECT_DOUBLE_EQ(edge_betweenness_descriptor(as_subgraph(complete_graph(3)), 0, 1), 1.0);
  EXPECT_DOUBLE_EQ(edge_betweenness_descriptor(as_subgraph(star_graph(3)), 0, 1), 3.0);
  EXPECT_THROW(edge_betweenness_descriptor(as_subgraph(path_graph(3)), 0, 2), std::invalid_argument);
}

TEST(Betweenness, MatchesPathEnumerationOracle) {
  std::mt19937_64 rng(36);
  for (int t = 0; t < 40; ++t) {
    const Graph g = oracle::random_graph(12, 0.3, rng);
    for (const auto& e : g.edges()) {
      const Subgraph s = union_subgraph(g, e.a, e.b);
      const Graph local = oracle::induce(g, s.parent_ids);
      const NodeId lv = static_cast<NodeId>(s.local_index(e.a)), lu = static_cast<NodeId>(s.local_index(e.b));
      EXPECT_NEAR(edge_betweenness_descriptor(s, e.a, e.b), oracle::betweenness(local, lv, lu), 1e-9);
    }
  }
}

TEST(CountNE, Examples) {
  EXPECT_DOUBLE_EQ(count_ne_descriptor(as_subgraph(complete_graph(3)), 2), 4.5);
  EXPECT_DOUBLE_EQ(count_ne_descriptor(as_subgraph(complete_graph(3)), 1), 1.5);
  EXPECT_DOUBLE_EQ(count_ne_descriptor(as_subgraph(path_graph(3)), 2), 3.0);
  EXPECT_THROW(count_ne_descriptor(as_subgraph(Graph(1, std::vector<Edge>{})), 2), std::invalid_argument);
  EXPECT_THROW(count_ne_descriptor(as_subgraph(complete_graph(3)), 3), std::invalid_argument);
}

TEST(Ricci, Examples) {
  EXPECT_NEAR(ricci_curvature(complete_graph(3), 0, 1, 0.5), 0.75, 1e-12);
  EXPECT_NEAR(oracle::ricci(complete_graph(3), 0, 1, 0.5), 0.75, 1e-12);
  // Both lazy measures are (1/2, 1/2) on {v, u}, so no mass moves.
  EXPECT_NEAR(ricci_curvature(complete_graph(2), 0, 1, 0.5), 1.0, 1e-12);
  EXPECT_NEAR(oracle::ricci(complete_graph(2), 0, 1, 0.5), 1.0, 1e-12);
  EXPECT_NEAR(ricci_curvature(cycle_graph(6), 0, 1, 0.5), oracle::ricci(cycle_graph(6), 0, 1, 0.5), 1e-12);
  EXPECT_THROW(ricci_curvature(path_graph(3), 0, 2, 0.5), std::invalid_argument);
}

TEST(Ricci, MatchesMinCostFlowOracle) {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 30; ++t) {
    const Graph g = oracle::random_graph(10, 0.3, rng);
    for (double alpha : {0.0, 0.5, 0.9}) {
      for (const auto& e : g.edges()) {
        EXPECT_NEAR(ricci_curvature(g, e.a, e.b, alpha), oracle::ricci(g, e.a, e.b, alpha), 1e-8);
      }
    }
  }
}

TEST(Transport, MatchesMinCostFlowOracle) {
  std::mt19937_64 rng(38);
  std::uniform_real_distribution<double> mass(0.0, 1.0), cost(0.0, 3.0);
  for (int t = 0; t < 100; ++t) {
    const std::size_t s = 1 + rng() % 6, d = 1 + rng() % 6;
    std::vector<double> supply(s), demand(d);
    for (double& x : supply) x = mass(rng);
    for (double& x : demand) x = mass(rng);
    const double ss = std::accumulate(supply.begin(), supply.end(), 0.0);
    const double ds = std::accumulate(demand.begin(), demand.end(), 0.0);
    for (double& x : demand) x *= ss / ds;
    DenseTensor c(s, d);
    std::vector<std::vector<double>> cv(s, std::vector<double>(d));
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < d; ++j) c(i, j) = cv[i][j] = std::round(cost(rng));
    const TransportPlan plan = solve_transport(supply, demand, c);
    EXPECT_NEAR(plan.cost, oracle::transport_cost(supply, demand, cv), 1e-9);
    for (std::size_t i = 0; i < s; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        EXPECT_GE(plan.flow(i, j), -1e-12);
        row += plan.flow(i, j);
      }
      EXPECT_NEAR(row, supply[i], 1e-9);
    }
  }
  EXPECT_THROW(solve_transport(std::vector<double>{1.0}, std::vector<double>{2.0}, DenseTensor(1, 1)),
               std::invalid_argument);
}

TEST(CycleCount, Examples) {
  EXPECT_EQ(cycle_count(cycle_graph(6), 6), 1u);
  EXPECT_EQ(cycle_count(complete_graph(4), 3), 4u);
  EXPECT_EQ(cycle_count(disjoint_union(complete_graph(3), complete_graph(3)), 3), 2u);
  EXPECT_THROW(cycle_count(cycle_graph(6), 2), std::invalid_argument);
  EXPECT_THROW(cycle_count(cycle_graph(6), 9), std::invalid_argument);
}

TEST(CycleCount, MatchesTupleEnumerationOracle) {
  std::mt19937_64 rng(39);
  for (int t = 0; t < 30; ++t) {
    const Graph g = oracle::random_graph(9, 0.4, rng);
    for (int k = 3; k <= 7; ++k) EXPECT_EQ(cycle_count(g, k), oracle::cycles(g, k)) << "k=" << k;
  }
  EXPECT_EQ(cycle_count(complete_graph(6), 6), oracle::cycles(complete_graph(6), 6));
}

TEST(CoefficientTable, Examples) {
  const auto two_c3 = coefficient_table(disjoint_union(complete_graph(3), complete_graph(3)),
                                        DescriptorKind::union_path());
  for (double x : two_c3.raw) EXPECT_NEAR(x, 4.0, 1e-12);
  for (double x : two_c3.normalized) EXPECT_NEAR(x, 0.5, 1e-12);

  const auto c6 = coefficient_table(cycle_graph(6), DescriptorKind::union_path());
  const double p4 = oracle::nuclear_norm(path_matrix(as_subgraph(path_graph(4))).to_dense());
  for (double x : c6.raw) EXPECT_NEAR(x, p4, 1e-10);
  for (double x : c6.normalized) EXPECT_NEAR(x, 0.5, 1e-12);

  const auto k2 = coefficient_table(complete_graph(2), DescriptorKind::union_path());
  EXPECT_NEAR(k2.raw_at(0, 1), 2.0, 1e-12);
  EXPECT_DOUBLE_EQ(k2.normalized_at(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(k2.normalized_at(1, 0), 1.0);
  EXPECT_THROW(k2.raw_at(0, 0), std::out_of_range);
}

TEST(CoefficientTable, KindsMatchTheirOracles) {
  std::mt19937_64 rng(40);
  const Graph g = oracle::random_graph(11, 0.35, rng);
  const auto lap = coefficient_table(g, DescriptorKind::laplacian());
  const auto ov = coefficient_table(g, DescriptorKind::overlap_path());
  const auto mi = coefficient_table(g, DescriptorKind::minus_path());
  const auto sum = coefficient_table(g, DescriptorKind::union_path(), EncodingKind::MatrixSum);
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const Edge e = g.edges()[i];
    const auto nodes = oracle::union_nodes(g, e.a, e.b);
    const Graph local = oracle::induce(g, nodes);
    DenseTensor l(local.num_nodes(), local.num_nodes());
    for (NodeId x = 0; x < local.num_nodes(); ++x) {
      l(x, x) = static_cast<double>(local.degree(x));
      for (NodeId y : local.neighbors(x)) l(x, y) = -1.0;
    }
    EXPECT_NEAR(lap.raw[i], oracle::nuclear_norm(l), 1e-8);

    const Graph o = oracle::overlap(g, e.a, e.b);
    const auto od = oracle::all_pairs_distances(o);
    DenseTensor om(o.num_nodes(), o.num_nodes());
    for (std::size_t x = 0; x < o.num_nodes(); ++x)
      for (std::size_t y = 0; y < o.num_nodes(); ++y) om(x, y) = od[x][y];
    EXPECT_NEAR(ov.raw[i], oracle::nuclear_norm(om), 1e-8);

    const auto ud = oracle::all_pairs_distances(local);
    double total = 0.0;
    for (const auto& row : ud)
      for (int x : row) total += x;
    EXPECT_DOUBLE_EQ(sum.raw[i], total);

    // S_v ∪ S_u keeps an edge only if both ends lie in Ñ(v) or both in Ñ(u).
    auto in = [&](NodeId c, NodeId x) { return x == c || g.has_edge(c, x); };
    std::vector<Edge> kept;
    for (NodeId x = 0; x < nodes.size(); ++x)
      for (NodeId y = x + 1; y < nodes.size(); ++y) {
        const NodeId px = nodes[x], py = nodes[y];
        if (g.has_edge(px, py) && ((in(e.a, px) && in(e.a, py)) || (in(e.b, px) && in(e.b, py))))
          kept.emplace_back(x, y);
      }
    const auto md = oracle::all_pairs_distances(Graph(nodes.size(), kept));
    DenseTensor mm(nodes.size(), nodes.size());
    for (std::size_t x = 0; x < nodes.size(); ++x)
      for (std::size_t y = 0; y < nodes.size(); ++y) mm(x, y) = md[x][y];
    EXPECT_NEAR(mi.raw[i], oracle::nuclear_norm(mm), 1e-8);
  }
}

TEST(CoefficientTable, RowsNormalizeToOne) {
  std::mt19937_64 rng(41);
  for (const auto& kind : {DescriptorKind::union_path(), DescriptorKind::betweenness(), DescriptorKind::count_ne(),
                           DescriptorKind::ricci(), DescriptorKind::laplacian()}) {
    const Graph g = oracle::random_graph(15, 0.25, rng);
    const auto t = coefficient_table(g, kind);
    ASSERT_TRUE(t.matches(g));
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      if (g.degree(v) == 0) continue;
      double s = 0.0;
      for (std::size_t p = g.pair_begin(v); p < g.pair_end(v); ++p) s += t.normalized[p];
      EXPECT_NEAR(s, 1.0, 1e-9) << to_string(kind);
    }
    if (kind.strictly_positive())
      for (double x : t.raw) EXPECT_GT(x, 0.0);
  }
}

TEST(CoefficientTable, ZeroSumFallsBackToUniform) {
  const auto t = constant_coefficients(star_graph(3), 0.0);
  EXPECT_DOUBLE_EQ(t.normalized_at(0, 2), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(t.normalized_at(2, 0), 1.0);
  EXPECT_EQ(t.warnings.size(), 4u);
}

TEST(CoefficientTable, PermutationInvariantForEveryKind) {
  std::mt19937_64 rng(42);
  for (const auto& kind : {DescriptorKind::union_path(), DescriptorKind::overlap_path(), DescriptorKind::minus_path(),
                           DescriptorKind::betweenness(), DescriptorKind::count_ne(1), DescriptorKind::ricci(),
                           DescriptorKind::laplacian()}) {
    for (int t = 0; t < 5; ++t) {
      const Graph g = oracle::random_graph(14, 0.3, rng);
      const auto perm = oracle::random_permutation(g.num_nodes(), rng);
      const auto a = coefficient_table(g, kind);
      const auto b = coefficient_table(relabel(g, perm), kind);
      for (std::size_t i = 0; i < g.num_edges(); ++i) {
        const Edge e = g.edges()[i];
        EXPECT_NEAR(b.raw_at(perm[e.a], perm[e.b]), a.raw[i], 1e-9) << to_string(kind);
      }
    }
  }
}

TEST(CoefficientTable, ParallelMatchesSerial) {
  std::mt19937_64 rng(43);
  const Graph g = oracle::random_graph(40, 0.12, rng);
  for (const auto& kind : {DescriptorKind::union_path(), DescriptorKind::ricci()}) {
    const auto serial = coefficient_table(g, kind, EncodingKind::SvdSum, 1);
    const auto parallel = coefficient_table(g, kind, EncodingKind::SvdSum, 4);
    EXPECT_EQ(serial.raw, parallel.raw);
    EXPECT_EQ(serial.normalized, parallel.normalized);
  }
}

TEST(CoefficientTable, RejectsGraphGlobalKinds) {
  EXPECT_THROW(coefficient_table(cycle_graph(5), DescriptorKind::cycles(5)), std::invalid_argument);
  DescriptorKind bad = DescriptorKind::count_ne();
  bad.lambda = 5;
  EXPECT_THROW(coefficient_table(cycle_graph(5), bad), std::invalid_argument);
}

TEST(CoefficientTable, CsvAndJsonOutput) {
  const auto t = coefficient_table(complete_graph(3), DescriptorKind::union_path());
  EXPECT_EQ(coefficients_to_csv(t), "v,u,raw,norm_vu,norm_uv\n0,1,4,0.5,0.5\n0,2,4,0.5,0.5\n1,2,4,0.5,0.5\n");
  const auto j = nlohmann::json::parse(coefficients_to_json(t));
  EXPECT_EQ(j["kind"], "union");
  EXPECT_EQ(j["encoding"], "svd");
  EXPECT_EQ(j["raw"].size(), 3u);
  EXPECT_EQ(j["normalized"].size(), 6u);
  EXPECT_TRUE(j["warnings"].empty());
}

TEST(DescriptorKind, StringRoundTrip) {
  for (const auto& kind : {DescriptorKind::union_path(), DescriptorKind::overlap_path(), DescriptorKind::minus_path(),
                           DescriptorKind::betweenness(), DescriptorKind::count_ne(1), DescriptorKind::ricci(0.25),
                           DescriptorKind::laplacian(), DescriptorKind::cycles(5)}) {
    EXPECT_EQ(parse_descriptor(to_string(kind)), kind);
  }
  EXPECT_THROW(parse_descriptor("pagerank"), std::invalid_argument);
}

TEST(DescriptorProperties, BetweennessIsNotSizeAware) {
  const auto f = fixtures::load_edge_pair("betweenness_size.json");
  // The fixture pair differs by exactly one same-side exclusive edge.
  ASSERT_EQ(f.g2.num_edges(), f.g1.num_edges() + 1);
  const auto added = classify_edge_types(f.g2, f.v2, f.u2).e4;
  const auto before = classify_edge_types(f.g1, f.v1, f.u1).e4;
  EXPECT_EQ(added.size(), before.size() + 1);
  const double b1 = edge_betweenness_descriptor(union_subgraph(f.g1, f.v1, f.u1), f.v1, f.u1);
  const double b2 = edge_betweenness_descriptor(union_subgraph(f.g2, f.v2, f.u2), f.v2, f.u2);
  EXPECT_NEAR(b1, b2, 1e-12);
  EXPECT_NEAR(oracle::betweenness(f.g1, f.v1, f.u1), oracle::betweenness(f.g2, f.v2, f.u2), 1e-12);
  EXPECT_GT(std::abs(union_svd(f.g1, f.v1, f.u1) - union_svd(f.g2, f.v2, f.u2)), 1e-6);
}

TEST(DescriptorProperties, CountNEIsNotConnectivityAware) {
  const auto f = fixtures::load_edge_pair("countne_connectivity.json");
  const Subgraph s1 = union_subgraph(f.g1, f.v1, f.u1), s2 = union_subgraph(f.g2, f.v2, f.u2);
  ASSERT_EQ(s1.num_nodes(), s2.num_nodes());
  ASSERT_EQ(s1.num_edges(), s2.num_edges());
  EXPECT_FALSE(oracle::isomorphic(s1.local, s2.local));
  for (int lambda : {1, 2}) EXPECT_DOUBLE_EQ(count_ne_descriptor(s1, lambda), count_ne_descriptor(s2, lambda));
  EXPECT_GT(std::abs(union_svd(f.g1, f.v1, f.u1) - union_svd(f.g2, f.v2, f.u2)), 1e-6);
}

TEST(CaseStudy, DeletionBehaviour) {
  const auto c = fixtures::load_case_study("case_study.json");
  const Graph& g = c.graph;
  ASSERT_EQ(g.num_nodes(), 8u);
  const auto parts = classify_edge_types(g, c.v, c.u);
  const std::vector<Edge>* groups[] = {&parts.e1, &parts.e2, &parts.e3, &parts.e4};
  for (int t = 0; t < 4; ++t) {
    const Edge rep(c.typed[t].first, c.typed[t].second);
    EXPECT_NE(std::find(groups[t]->begin(), groups[t]->end(), rep), groups[t]->end()) << "E" << t + 1;
  }

  const double base = union_svd(g, c.v, c.u);
  const DenseTensor pm = path_matrix(union_subgraph(g, c.v, c.u)).to_dense();
  EXPECT_NEAR(base, oracle::nuclear_norm(pm), 1e-9);
  for (const auto* group : groups)
    for (const auto& e : *group) EXPECT_GT(union_svd(oracle::without_edge(g, e.a, e.b), c.v, c.u), base);
  for (NodeId w = 0; w < g.num_nodes(); ++w) {
    if (w == c.v || w == c.u) continue;
    const Graph h = oracle::without_node(g, w);
    EXPECT_LT(union_svd(h, oracle::shifted(c.v, w), oracle::shifted(c.u, w)), base) << "node " << w;
  }
  double prev = 0.0;
  for (int t = 0; t < 4; ++t) {
    const double impact = union_svd(oracle::without_edge(g, c.typed[t].first, c.typed[t].second), c.v, c.u) - base;
    EXPECT_GT(impact, prev) << "E" << t + 1;
    prev = impact;
  }
}
