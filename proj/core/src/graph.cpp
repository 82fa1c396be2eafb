#include "unionsub/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>

#include <nlohmann/json.hpp>

namespace unionsub {

namespace {

constexpr double kUnitFeature = 1.0;

std::string edge_str(NodeId a, NodeId b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

Graph::Graph(std::size_t num_nodes, std::span<const Edge> edges) : Graph(num_nodes, edges, {}) {}

Graph::Graph(std::size_t num_nodes, std::span<const Edge> edges,
             std::vector<std::vector<double>> features) {
  edges_.assign(edges.begin(), edges.end());
  for (const Edge& e : edges_) {
    if (e.b >= num_nodes) {
      throw std::out_of_range("edge " + edge_str(e.a, e.b) + " references node >= " +
                              std::to_string(num_nodes));
    }
    if (e.a == e.b) throw std::invalid_argument("self-loop at node " + std::to_string(e.a));
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    throw std::invalid_argument("duplicate edge " + edge_str(dup->a, dup->b));
  }

  std::vector<std::size_t> deg(num_nodes, 0);
  for (const Edge& e : edges_) {
    ++deg[e.a];
    ++deg[e.b];
  }
  offsets_.assign(num_nodes + 1, 0);
  for (std::size_t v = 0; v < num_nodes; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  targets_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    targets_[fill[e.a]++] = e.b;
    targets_[fill[e.b]++] = e.a;
  }
  for (std::size_t v = 0; v < num_nodes; ++v) {
    std::sort(targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
  }

  if (!features.empty()) {
    if (features.size() != num_nodes) {
      throw std::invalid_argument("feature rows (" + std::to_string(features.size()) +
                                  ") != num_nodes (" + std::to_string(num_nodes) + ")");
    }
    feature_dim_ = features.front().size();
    if (feature_dim_ == 0) throw std::invalid_argument("feature dimension must be >= 1");
    feature_data_.reserve(num_nodes * feature_dim_);
    for (const auto& row : features) {
      if (row.size() != feature_dim_) throw std::invalid_argument("ragged feature rows");
      feature_data_.insert(feature_data_.end(), row.begin(), row.end());
    }
    has_features_ = true;
  }
}

void Graph::check_node(NodeId v) const {
  if (v >= num_nodes()) {
    throw std::out_of_range("node " + std::to_string(v) + " out of range (num_nodes = " +
                            std::to_string(num_nodes()) + ")");
  }
}

std::span<const NodeId> Graph::neighbors(NodeId v) const {
  check_node(v);
  return std::span<const NodeId>(targets_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

std::size_t Graph::degree(NodeId v) const {
  check_node(v);
  return offsets_[v + 1] - offsets_[v];
}

bool Graph::has_edge(NodeId x, NodeId y) const { return pair_index(x, y) != npos; }

std::size_t Graph::pair_index(NodeId v, NodeId u) const {
  if (v >= num_nodes() || u >= num_nodes()) return npos;
  auto first = targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
  auto last = targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
  auto it = std::lower_bound(first, last, u);
  if (it == last || *it != u) return npos;
  return static_cast<std::size_t>(it - targets_.begin());
}

std::size_t Graph::edge_index(NodeId x, NodeId y) const {
  Edge e(x, y);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return npos;
  return static_cast<std::size_t>(it - edges_.begin());
}

std::span<const double> Graph::features(NodeId v) const {
  check_node(v);
  if (!has_features_) return {&kUnitFeature, 1};
  return std::span<const double>(feature_data_).subspan(v * feature_dim_, feature_dim_);
}

std::size_t Subgraph::local_index(NodeId parent) const {
  auto it = std::lower_bound(parent_ids.begin(), parent_ids.end(), parent);
  if (it == parent_ids.end() || *it != parent) return Graph::npos;
  return static_cast<std::size_t>(it - parent_ids.begin());
}

std::vector<Edge> Subgraph::parent_edges() const {
  std::vector<Edge> out;
  out.reserve(local.num_edges());
  for (const Edge& e : local.edges()) out.emplace_back(parent_ids[e.a], parent_ids[e.b]);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

bool next_token(std::string_view line, std::size_t& pos, long long& value) {
  while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
  if (pos >= line.size()) return false;
  const char* first = line.data() + pos;
  const char* last = line.data() + line.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || (ptr != last && *ptr != ' ' && *ptr != '\t' && *ptr != '\r')) {
    throw std::invalid_argument("expected an integer");
  }
  pos += static_cast<std::size_t>(ptr - first);
  return true;
}

std::vector<long long> line_ints(std::string_view line, std::size_t lineno, std::size_t expected) {
  std::vector<long long> out;
  std::size_t pos = 0;
  long long value = 0;
  try {
    while (next_token(line, pos, value)) out.push_back(value);
  } catch (const std::invalid_argument& e) {
    throw ParseError(lineno, e.what());
  }
  if (out.size() != expected) {
    throw ParseError(lineno, "expected " + std::to_string(expected) + " integers, found " +
                                 std::to_string(out.size()));
  }
  return out;
}

bool blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

Graph parse_edge_list(std::string_view text) {
  std::vector<std::string_view> lines;
  for (std::size_t start = 0; start <= text.size();) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  while (!lines.empty() && blank(lines.back())) lines.pop_back();
  if (lines.empty()) throw ParseError(1, "missing header \"n m\"");

  auto header = line_ints(lines[0], 1, 2);
  if (header[0] < 0 || header[1] < 0) throw ParseError(1, "negative count in header");
  const auto n = static_cast<std::size_t>(header[0]);
  const auto m = static_cast<std::size_t>(header[1]);
  if (lines.size() - 1 != m) {
    throw ParseError(lines.size() - 1 < m ? lines.size() + 1 : m + 2,
                     "header declares " + std::to_string(m) + " edges, found " +
                         std::to_string(lines.size() - 1));
  }

  std::vector<Edge> edges;
  edges.reserve(m);
  std::vector<Edge> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto uv = line_ints(lines[i], i + 1, 2);
    if (uv[0] < 0 || uv[1] < 0 || static_cast<std::size_t>(uv[0]) >= n ||
        static_cast<std::size_t>(uv[1]) >= n) {
      throw ParseError(i + 1, "node id out of range [0, " + std::to_string(n) + ")");
    }
    if (uv[0] == uv[1]) throw ParseError(i + 1, "self-loop at node " + std::to_string(uv[0]));
    Edge e(static_cast<NodeId>(uv[0]), static_cast<NodeId>(uv[1]));
    auto it = std::lower_bound(seen.begin(), seen.end(), e);
    if (it != seen.end() && *it == e) throw ParseError(i + 1, "duplicate edge " + edge_str(e.a, e.b));
    seen.insert(it, e);
    edges.push_back(e);
  }
  return Graph(n, edges);
}

Graph parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1 + static_cast<std::size_t>(
                               std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(
                                                                         std::min(e.byte, text.size())),
                                          '\n'));
    throw ParseError(line, std::string("malformed JSON: ") + e.what());
  }
  try {
    if (!doc.is_object() || !doc.contains("num_nodes") || !doc.contains("edges")) {
      throw ParseError(0, "JSON graph needs \"num_nodes\" and \"edges\"");
    }
    const auto n = doc.at("num_nodes").get<long long>();
    if (n < 0) throw ParseError(0, "negative num_nodes");
    std::vector<Edge> edges;
    std::vector<Edge> seen;
    std::size_t idx = 0;
    for (const auto& pair : doc.at("edges")) {
      if (!pair.is_array() || pair.size() != 2) {
        throw ParseError(0, "edge " + std::to_string(idx) + " is not a [u, v] pair");
      }
      auto u = pair[0].get<long long>();
      auto v = pair[1].get<long long>();
      if (u < 0 || v < 0 || u >= n || v >= n) {
        throw ParseError(0, "edge " + std::to_string(idx) + ": node id out of range");
      }
      if (u == v) throw ParseError(0, "edge " + std::to_string(idx) + ": self-loop");
      Edge e(static_cast<NodeId>(u), static_cast<NodeId>(v));
      auto it = std::lower_bound(seen.begin(), seen.end(), e);
      if (it != seen.end() && *it == e) {
        throw ParseError(0, "edge " + std::to_string(idx) + ": duplicate edge " + edge_str(e.a, e.b));
      }
      seen.insert(it, e);
      edges.push_back(e);
      ++idx;
    }
    std::vector<std::vector<double>> features;
    if (doc.contains("features") && !doc.at("features").is_null()) {
      features = doc.at("features").get<std::vector<std::vector<double>>>();
    }
    return Graph(static_cast<std::size_t>(n), edges, std::move(features));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("bad JSON graph: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  }
}

}  // namespace

Graph parse_graph(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_json(text);
  return parse_edge_list(text);
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::string to_edge_list(const Graph& g) {
  std::string out = std::to_string(g.num_nodes()) + " " + std::to_string(g.num_edges()) + "\n";
  for (const Edge& e : g.edges()) out += std::to_string(e.a) + " " + std::to_string(e.b) + "\n";
  return out;
}

std::string to_json(const Graph& g) {
  nlohmann::json doc;
  doc["num_nodes"] = g.num_nodes();
  auto edges = nlohmann::json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.a, e.b});
  doc["edges"] = std::move(edges);
  if (g.has_features()) {
    auto rows = nlohmann::json::array();
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      auto f = g.features(v);
      rows.push_back(std::vector<double>(f.begin(), f.end()));
    }
    doc["features"] = std::move(rows);
  }
  return doc.dump() + "\n";
}

// ---------------------------------------------------------------------------

std::vector<NodeId> closed_neighborhood(const Graph& g, NodeId v) {
  auto nbrs = g.neighbors(v);
  std::vector<NodeId> out(nbrs.begin(), nbrs.end());
  out.insert(std::upper_bound(out.begin(), out.end(), v), v);
  return out;
}

Subgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
  Subgraph s;
  s.parent_ids.assign(nodes.begin(), nodes.end());
  std::sort(s.parent_ids.begin(), s.parent_ids.end());
  s.parent_ids.erase(std::unique(s.parent_ids.begin(), s.parent_ids.end()), s.parent_ids.end());
  for (NodeId p : s.parent_ids) {
    if (p >= g.num_nodes()) {
      throw std::out_of_range("node " + std::to_string(p) + " out of range (num_nodes = " +
                              std::to_string(g.num_nodes()) + ")");
    }
  }
  std::vector<Edge> local_edges;
  for (std::size_t i = 0; i < s.parent_ids.size(); ++i) {
    for (NodeId nb : g.neighbors(s.parent_ids[i])) {
      if (nb <= s.parent_ids[i]) continue;
      std::size_t j = s.local_index(nb);
      if (j != Graph::npos) local_edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
    }
  }
  if (g.has_features()) {
    std::vector<std::vector<double>> feats;
    feats.reserve(s.parent_ids.size());
    for (NodeId p : s.parent_ids) {
      auto f = g.features(p);
      feats.emplace_back(f.begin(), f.end());
    }
    s.local = Graph(s.parent_ids.size(), local_edges, std::move(feats));
  } else {
    s.local = Graph(s.parent_ids.size(), local_edges);
  }
  return s;
}

Subgraph as_subgraph(const Graph& g) {
  Subgraph s;
  s.local = g;
  s.parent_ids.resize(g.num_nodes());
  std::iota(s.parent_ids.begin(), s.parent_ids.end(), NodeId{0});
  return s;
}

// ---------------------------------------------------------------------------
// Isomorphism

namespace {

class IsoSearch {
 public:
  IsoSearch(const Graph& a, const Graph& b) : a_(a), b_(b), n_(a.num_nodes()) {
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), NodeId{0});
    // Most constrained first: high degree, then nodes adjacent to already placed ones.
    std::stable_sort(order_.begin(), order_.end(),
                     [&](NodeId x, NodeId y) { return a_.degree(x) > a_.degree(y); });
    map_.assign(n_, kUnmapped);
    used_.assign(n_, false);
  }

  bool run() { return place(0); }

 private:
  static constexpr NodeId kUnmapped = static_cast<NodeId>(-1);

  bool place(std::size_t depth) {
    if (depth == n_) return true;
    const NodeId x = order_[depth];
    for (NodeId y = 0; y < n_; ++y) {
      if (used_[y] || a_.degree(x) != b_.degree(y)) continue;
      if (!consistent(depth, x, y)) continue;
      map_[x] = y;
      used_[y] = true;
      if (place(depth + 1)) return true;
      used_[y] = false;
      map_[x] = kUnmapped;
    }
    return false;
  }

  bool consistent(std::size_t depth, NodeId x, NodeId y) const {
    for (std::size_t i = 0; i < depth; ++i) {
      const NodeId px = order_[i];
      if (a_.has_edge(x, px) != b_.has_edge(y, map_[px])) return false;
    }
    return true;
  }

  const Graph& a_;
  const Graph& b_;
  std::size_t n_;
  std::vector<NodeId> order_;
  std::vector<NodeId> map_;
  std::vector<bool> used_;
};

std::vector<std::size_t> degree_sequence(const Graph& g) {
  std::vector<std::size_t> d(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) d[v] = g.degree(v);
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

bool is_isomorphic_small(const Graph& a, const Graph& b) {
  if (a.num_nodes() > kIsomorphismMaxNodes || b.num_nodes() > kIsomorphismMaxNodes) {
    throw std::length_error("is_isomorphic_small: graphs limited to " +
                            std::to_string(kIsomorphismMaxNodes) + " nodes (got " +
                            std::to_string(a.num_nodes()) + " and " +
                            std::to_string(b.num_nodes()) + ")");
  }
  if (a.num_nodes() != b.num_nodes() || a.num_edges() != b.num_edges()) return false;
  if (degree_sequence(a) != degree_sequence(b)) return false;
  return IsoSearch(a, b).run();
}

Graph relabel(const Graph& g, std::span<const NodeId> perm) {
  if (perm.size() != g.num_nodes()) throw std::invalid_argument("relabel: permutation size mismatch");
  std::vector<bool> hit(perm.size(), false);
  for (NodeId p : perm) {
    if (p >= perm.size() || hit[p]) throw std::invalid_argument("relabel: not a permutation");
    hit[p] = true;
  }
  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (const Edge& e : g.edges()) edges.emplace_back(perm[e.a], perm[e.b]);
  if (!g.has_features()) return Graph(g.num_nodes(), edges);
  std::vector<std::vector<double>> feats(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    auto f = g.features(v);
    feats[perm[v]].assign(f.begin(), f.end());
  }
  return Graph(g.num_nodes(), edges, std::move(feats));
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  const auto shift = static_cast<NodeId>(a.num_nodes());
  std::vector<Edge> edges(a.edges().begin(), a.edges().end());
  for (const Edge& e : b.edges()) edges.emplace_back(e.a + shift, e.b + shift);
  if (!a.has_features() && !b.has_features()) return Graph(a.num_nodes() + b.num_nodes(), edges);
  if (a.feature_dim() != b.feature_dim()) {
    throw std::invalid_argument("disjoint_union: feature dimensions differ");
  }
  std::vector<std::vector<double>> feats;
  for (const Graph* g : {&a, &b}) {
    for (NodeId v = 0; v < g->num_nodes(); ++v) {
      auto f = g->features(v);
      feats.emplace_back(f.begin(), f.end());
    }
  }
  return Graph(a.num_nodes() + b.num_nodes(), edges, std::move(feats));
}

bool is_connected(const Graph& g) {
  if (g.num_nodes() == 0) return true;
  std::vector<bool> seen(g.num_nodes(), false);
  std::queue<NodeId> q;
  q.push(0);
  seen[0] = true;
  std::size_t count = 1;
  while (!q.empty()) {
    NodeId x = q.front();
    q.pop();
    for (NodeId y : g.neighbors(x)) {
      if (!seen[y]) {
        seen[y] = true;
        ++count;
        q.push(y);
      }
    }
  }
  return count == g.num_nodes();
}

}  // namespace unionsub
