#include "unionsub/coefficients.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <thread>

#include <nlohmann/json.hpp>

namespace unionsub {

DescriptorError::DescriptorError(Edge edge, const std::string& what)
    : std::runtime_error("edge (" + std::to_string(edge.a) + ", " + std::to_string(edge.b) + "): " + what),
      edge_(edge) {}

double CoefficientTable::raw_at(NodeId v, NodeId u) const {
  const Edge e(v, u);
  auto it = std::lower_bound(edges.begin(), edges.end(), e);
  if (it == edges.end() || *it != e) {
    throw std::out_of_range("no coefficient for (" + std::to_string(v) + ", " + std::to_string(u) + ")");
  }
  return raw[static_cast<std::size_t>(it - edges.begin())];
}

double CoefficientTable::normalized_at(NodeId v, NodeId u) const {
  const std::pair<NodeId, NodeId> p{v, u};
  auto it = std::lower_bound(pairs.begin(), pairs.end(), p);
  if (it == pairs.end() || *it != p) {
    throw std::out_of_range("no coefficient for (" + std::to_string(v) + ", " + std::to_string(u) + ")");
  }
  return normalized[static_cast<std::size_t>(it - pairs.begin())];
}

bool CoefficientTable::matches(const Graph& g) const {
  if (pairs.size() != g.num_pairs() || edges.size() != g.num_edges()) return false;
  const auto targets = g.neighbor_targets();
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    for (std::size_t p = g.pair_begin(v); p < g.pair_end(v); ++p) {
      if (pairs[p].first != v || pairs[p].second != targets[p]) return false;
    }
  }
  return true;
}

namespace {

void normalize(const Graph& g, CoefficientTable& t) {
  const auto targets = g.neighbor_targets();
  t.pairs.resize(g.num_pairs());
  t.normalized.resize(g.num_pairs());
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const std::size_t begin = g.pair_begin(v);
    const std::size_t end = g.pair_end(v);
    double sum = 0.0;
    for (std::size_t p = begin; p < end; ++p) {
      t.pairs[p] = {v, targets[p]};
      sum += t.raw[g.edge_index(v, targets[p])];
    }
    const bool uniform = std::abs(sum) < 1e-12;
    if (uniform && end > begin) {
      t.warnings.push_back("node " + std::to_string(v) +
                           ": coefficients sum to zero, using uniform 1/deg weights");
    }
    for (std::size_t p = begin; p < end; ++p) {
      t.normalized[p] = uniform ? 1.0 / static_cast<double>(end - begin)
                                : t.raw[g.edge_index(v, targets[p])] / sum;
    }
  }
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

CoefficientTable coefficient_table(const Graph& g, const DescriptorKind& kind, EncodingKind enc,
                                   std::size_t threads) {
  kind.validate();
  if (kind.tag == DescriptorKind::Tag::CycleCount) {
    throw std::invalid_argument("coefficient_table: cycle counts are graph-global, not per-edge");
  }
  CoefficientTable t;
  t.kind = kind;
  t.encoding = enc;
  t.edges.assign(g.edges().begin(), g.edges().end());
  t.raw.assign(t.edges.size(), 0.0);

  const std::size_t m = t.edges.size();
  std::vector<std::exception_ptr> errors(m);
  auto work = [&](std::size_t i) {
    try {
      const double x = edge_descriptor(g, t.edges[i].a, t.edges[i].b, kind, enc);
      if (!std::isfinite(x)) throw std::domain_error("non-finite descriptor value");
      t.raw[i] = x;
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(m, 1));
  if (threads <= 1) {
    for (std::size_t i = 0; i < m; ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < m;) work(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < m; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw DescriptorError(t.edges[i], e.what());
    }
  }
  normalize(g, t);
  return t;
}

CoefficientTable constant_coefficients(const Graph& g, double value) {
  CoefficientTable t;
  t.edges.assign(g.edges().begin(), g.edges().end());
  t.raw.assign(t.edges.size(), value);
  normalize(g, t);
  return t;
}

std::string coefficients_to_csv(const CoefficientTable& t) {
  std::string out = "v,u,raw,norm_vu,norm_uv\n";
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    const Edge e = t.edges[i];
    out += std::to_string(e.a) + "," + std::to_string(e.b) + "," + format_double(t.raw[i]) + "," +
           format_double(t.normalized_at(e.a, e.b)) + "," + format_double(t.normalized_at(e.b, e.a)) + "\n";
  }
  return out;
}

std::string coefficients_to_json(const CoefficientTable& t) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(t.kind);
  j["encoding"] = to_string(t.encoding);
  auto raw = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    raw.push_back({{"v", t.edges[i].a}, {"u", t.edges[i].b}, {"value", t.raw[i]}});
  }
  j["raw"] = std::move(raw);
  auto norm = nlohmann::ordered_json::array();
  for (std::size_t p = 0; p < t.pairs.size(); ++p) {
    norm.push_back({{"v", t.pairs[p].first}, {"u", t.pairs[p].second}, {"value", t.normalized[p]}});
  }
  j["normalized"] = std::move(norm);
  j["warnings"] = t.warnings;
  return j.dump(2) + "\n";
}

}  // namespace unionsub
