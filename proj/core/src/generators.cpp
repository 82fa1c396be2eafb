#include "unionsub/generators.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <queue>

namespace unionsub {

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>((i + 1) % n));
  }
  return Graph(n, edges);
}

Graph complete_graph(std::size_t n) {
  if (n < 1) throw std::invalid_argument("complete graph needs n >= 1");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
  return Graph(n, edges);
}

Graph path_graph(std::size_t n) {
  if (n < 1) throw std::invalid_argument("path needs n >= 1");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(i + 1));
  return Graph(n, edges);
}

Graph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= leaves; ++i) edges.emplace_back(0, static_cast<NodeId>(i));
  return Graph(leaves + 1, edges);
}

Graph rook_4x4() {
  // Cells (r, c) -> 4r + c; adjacent iff same row or same column.
  std::vector<Edge> edges;
  for (NodeId x = 0; x < 16; ++x)
    for (NodeId y = x + 1; y < 16; ++y)
      if (x / 4 == y / 4 || x % 4 == y % 4) edges.emplace_back(x, y);
  return Graph(16, edges);
}

Graph shrikhande() {
  // Cayley graph of Z4 x Z4 with connection set {±(1,0), ±(0,1), ±(1,1)}.
  constexpr int kGen[3][2] = {{1, 0}, {0, 1}, {1, 1}};
  std::vector<Edge> edges;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (const auto& d : kGen) {
        const auto x = static_cast<NodeId>(4 * a + b);
        const auto y = static_cast<NodeId>(4 * ((a + d[0]) % 4) + (b + d[1]) % 4);
        edges.emplace_back(x, y);
      }
    }
  }
  // -g is never in the connection set, so each edge is emitted once.
  return Graph(16, edges);
}

Graph erdos_renyi(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
  return Graph(n, edges);
}

namespace {

// Shortest cycle through edge (x, y): 1 + dist(x, y) with the edge removed.
std::size_t shortest_cycle_through(const std::vector<std::vector<NodeId>>& adj, NodeId x, NodeId y,
                                   std::size_t limit) {
  std::vector<std::size_t> dist(adj.size(), static_cast<std::size_t>(-1));
  std::queue<NodeId> q;
  dist[x] = 0;
  q.push(x);
  while (!q.empty()) {
    NodeId a = q.front();
    q.pop();
    if (dist[a] + 1 >= limit) continue;
    for (NodeId b : adj[a]) {
      if (a == x && b == y) continue;
      if (dist[b] != static_cast<std::size_t>(-1)) continue;
      dist[b] = dist[a] + 1;
      if (b == y) return dist[b] + 1;
      q.push(b);
    }
  }
  return 0;
}

// Edges lying on a cycle of length <= max_len.
std::size_t short_cycle_edges(const std::vector<std::vector<NodeId>>& adj,
                              const std::vector<Edge>& edges, std::size_t max_len,
                              std::vector<std::size_t>* which) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (shortest_cycle_through(adj, edges[i].a, edges[i].b, max_len) != 0) {
      ++count;
      if (which) which->push_back(i);
    }
  }
  return count;
}

std::vector<std::vector<NodeId>> adjacency(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::vector<NodeId>> adj(n);
  for (const Edge& e : edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  return adj;
}

// Configuration-model pairing, retried until simple.
std::vector<Edge> random_cubic_edges(std::size_t n, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<NodeId> points;
    for (std::size_t v = 0; v < n; ++v)
      for (int k = 0; k < 3; ++k) points.push_back(static_cast<NodeId>(v));
    std::shuffle(points.begin(), points.end(), rng);
    std::vector<Edge> edges;
    bool ok = true;
    for (std::size_t i = 0; i < points.size() && ok; i += 2) {
      if (points[i] == points[i + 1]) ok = false;
      else edges.emplace_back(points[i], points[i + 1]);
    }
    if (!ok) continue;
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
    return edges;
  }
  throw std::runtime_error("random_cubic_edges: pairing never produced a simple graph");
}

// Double-edge switches that never increase the number of edges on short
// cycles, until none remain.
bool remove_short_cycles(std::size_t n, std::vector<Edge>& edges, std::size_t max_len,
                         std::mt19937_64& rng) {
  if (max_len < 3) return true;
  auto adj = adjacency(n, edges);
  std::vector<std::size_t> bad;
  std::size_t score = short_cycle_edges(adj, edges, max_len, &bad);
  std::uniform_int_distribution<std::size_t> pick_edge(0, edges.size() - 1);
  for (int step = 0; step < 20000 && score > 0; ++step) {
    const std::size_t i = bad[std::uniform_int_distribution<std::size_t>(0, bad.size() - 1)(rng)];
    const std::size_t j = pick_edge(rng);
    if (i == j) continue;
    Edge e = edges[i], f = edges[j];
    if (e.a == f.a || e.a == f.b || e.b == f.a || e.b == f.b) continue;
    Edge ne1, ne2;
    if (std::bernoulli_distribution(0.5)(rng)) {
      ne1 = Edge(e.a, f.a);
      ne2 = Edge(e.b, f.b);
    } else {
      ne1 = Edge(e.a, f.b);
      ne2 = Edge(e.b, f.a);
    }
    if (std::find(edges.begin(), edges.end(), ne1) != edges.end() ||
        std::find(edges.begin(), edges.end(), ne2) != edges.end()) {
      continue;
    }
    std::vector<Edge> trial = edges;
    trial[i] = ne1;
    trial[j] = ne2;
    auto trial_adj = adjacency(n, trial);
    std::vector<std::size_t> trial_bad;
    std::size_t trial_score = short_cycle_edges(trial_adj, trial, max_len, &trial_bad);
    if (trial_score <= score) {
      edges = std::move(trial);
      bad = std::move(trial_bad);
      score = trial_score;
    }
  }
  return score == 0;
}

}  // namespace

std::size_t girth(const Graph& g) {
  std::vector<std::vector<NodeId>> adj(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    auto nb = g.neighbors(v);
    adj[v].assign(nb.begin(), nb.end());
  }
  std::size_t best = 0;
  for (const Edge& e : g.edges()) {
    std::size_t c = shortest_cycle_through(adj, e.a, e.b, best ? best : g.num_nodes() + 1);
    if (c && (!best || c < best)) best = c;
  }
  return best;
}

bool has_cycle_of_length(const Graph& g, std::size_t len) {
  if (len < 3 || len > g.num_nodes()) return false;
  // DFS for a simple path of len-1 edges from the smallest node back to it.
  std::vector<bool> on_path(g.num_nodes(), false);
  for (NodeId start = 0; start < g.num_nodes(); ++start) {
    std::vector<NodeId> path{start};
    on_path[start] = true;
    auto dfs = [&](auto&& self, NodeId x) -> bool {
      if (path.size() == len) return g.has_edge(x, start);
      for (NodeId y : g.neighbors(x)) {
        if (y <= start || on_path[y]) continue;
        on_path[y] = true;
        path.push_back(y);
        bool found = self(self, y);
        path.pop_back();
        on_path[y] = false;
        if (found) return true;
      }
      return false;
    };
    bool found = dfs(dfs, start);
    on_path[start] = false;
    if (found) return true;
  }
  return false;
}

Graph random_cubic_cycle_graph(std::size_t n, std::size_t k, bool positive, std::mt19937_64& rng) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("cubic graphs need an even n >= 4");
  if (k < 3 || k > 6) throw std::invalid_argument("cycle length k must be in [3, 6]");
  for (int attempt = 0; attempt < 200; ++attempt) {
    auto edges = random_cubic_edges(n, rng);
    const std::size_t forbid = positive ? k - 1 : k;
    if (!remove_short_cycles(n, edges, forbid, rng)) continue;
    Graph g(n, edges);
    if (positive && !has_cycle_of_length(g, k)) continue;
    return g;
  }
  throw std::runtime_error("random_cubic_cycle_graph: could not satisfy cycle constraints for n=" +
                           std::to_string(n) + ", k=" + std::to_string(k));
}

Graph attach_pendants(const Graph& core) {
  const std::size_t n = core.num_nodes();
  std::vector<Edge> edges(core.edges().begin(), core.edges().end());
  for (NodeId v = 0; v < n; ++v) edges.emplace_back(v, static_cast<NodeId>(n + v));
  return Graph(2 * n, edges);
}

std::vector<LabeledGraph> cycle_detection_dataset(std::size_t k, std::size_t count, std::uint64_t seed,
                                                  std::size_t n_min, std::size_t n_max) {
  if (n_min > n_max) throw std::invalid_argument("n_min > n_max");
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> sizes;
  for (std::size_t n = n_min + (n_min % 2); n <= n_max; n += 2) sizes.push_back(n);
  if (sizes.empty()) throw std::invalid_argument("no even node count in [n_min, n_max]");
  std::uniform_int_distribution<std::size_t> pick(0, sizes.size() - 1);
  std::vector<LabeledGraph> out;
  out.reserve(count);
  std::size_t n = sizes[pick(rng)];
  for (std::size_t i = 0; i < count; ++i) {
    // Consecutive positive/negative graphs share a node count.
    if (i % 2 == 0) n = sizes[pick(rng)];
    const int label = i % 2 == 0 ? 1 : 0;
    char name[32];
    std::snprintf(name, sizeof name, "g%05zu.txt", i);
    out.push_back({attach_pendants(random_cubic_cycle_graph(n, k, label == 1, rng)), label, name});
  }
  return out;
}

std::vector<Graph> generate_named(const NamedGraphSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::vector<Graph> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CycleSpec>) {
          return {cycle_graph(s.n)};
        } else if constexpr (std::is_same_v<T, CompleteSpec>) {
          return {complete_graph(s.n)};
        } else if constexpr (std::is_same_v<T, PathSpec>) {
          return {path_graph(s.n)};
        } else if constexpr (std::is_same_v<T, Rook4x4Spec>) {
          return {rook_4x4()};
        } else if constexpr (std::is_same_v<T, ShrikhandeSpec>) {
          return {shrikhande()};
        } else if constexpr (std::is_same_v<T, TwoTrianglesVsC6Spec>) {
          return {disjoint_union(complete_graph(3), complete_graph(3)), cycle_graph(6)};
        } else {
          std::mt19937_64 rng(s.seed);
          Graph pos = attach_pendants(random_cubic_cycle_graph(s.n, s.k, true, rng));
          Graph neg = attach_pendants(random_cubic_cycle_graph(s.n, s.k, false, rng));
          return {std::move(pos), std::move(neg)};
        }
      },
      spec);
}

namespace {

std::size_t parse_count(const std::string& s, const std::string& spec) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || value == 0) {
    throw std::invalid_argument("bad integer parameter '" + s + "' in spec '" + spec + "'");
  }
  return value;
}

}  // namespace

NamedGraphSpec parse_named_spec(const std::string& text, std::uint64_t seed) {
  std::vector<std::string> parts;
  for (std::size_t start = 0;;) {
    auto colon = text.find(':', start);
    parts.push_back(text.substr(start, colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  const std::string& kind = parts[0];
  auto arg = [&](std::size_t i) {
    if (parts.size() <= i) throw std::invalid_argument("spec '" + text + "' needs a parameter");
    return parse_count(parts[i], text);
  };
  if (kind == "cycle") return CycleSpec{arg(1)};
  if (kind == "complete") return CompleteSpec{arg(1)};
  if (kind == "path") return PathSpec{arg(1)};
  if (kind == "rook4x4") return Rook4x4Spec{};
  if (kind == "shrikhande") return ShrikhandeSpec{};
  if (kind == "c6-vs-2c3") return TwoTrianglesVsC6Spec{};
  if (kind == "four-cycle") {
    FourCyclePairSpec s;
    s.k = parts.size() > 1 ? arg(1) : 4;
    s.n = parts.size() > 2 ? arg(2) : 20;
    s.seed = seed;
    return s;
  }
  throw std::invalid_argument("unknown graph spec '" + text + "'");
}

}  // namespace unionsub
