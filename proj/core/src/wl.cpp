#include "unionsub/wl.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

namespace unionsub {

int ColorAssignment::num_colors() const {
  return colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
}

namespace {

using Tag = std::int64_t;

std::int64_t quantize(double x) { return std::llround(x * 1e9); }

std::vector<int> initial_colors(const Graph& g) {
  std::map<std::vector<double>, int> ids;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    auto f = g.features(v);
    ids.emplace(std::vector<double>(f.begin(), f.end()), 0);
  }
  int next = 0;
  for (auto& [key, id] : ids) id = next++;
  std::vector<int> colors(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    auto f = g.features(v);
    colors[v] = ids.at(std::vector<double>(f.begin(), f.end()));
  }
  return colors;
}

// `tags` is indexed by CSR pair; empty means untagged (plain 1-WL).
ColorAssignment refine(const Graph& g, const std::vector<Tag>& tags, int max_rounds) {
  ColorAssignment out;
  out.colors = initial_colors(g);
  int count = out.num_colors();
  const auto targets = g.neighbor_targets();
  using Signature = std::pair<int, std::vector<std::pair<int, Tag>>>;
  std::vector<Signature> sig(g.num_nodes());
  for (int r = 1; r <= max_rounds; ++r) {
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      auto& [own, msgs] = sig[v];
      own = out.colors[v];
      msgs.clear();
      for (std::size_t p = g.pair_begin(v); p < g.pair_end(v); ++p) {
        msgs.emplace_back(out.colors[targets[p]], tags.empty() ? 0 : tags[p]);
      }
      std::sort(msgs.begin(), msgs.end());
    }
    std::map<Signature, int> ids;
    for (const auto& s : sig) ids.emplace(s, 0);
    int next = 0;
    for (auto& [key, id] : ids) id = next++;
    for (NodeId v = 0; v < g.num_nodes(); ++v) out.colors[v] = ids.at(sig[v]);
    out.round = r;
    if (next == count) {
      out.stable = true;
      break;
    }
    count = next;
  }
  if (g.num_nodes() == 0) out.stable = true;
  return out;
}

std::vector<Tag> pair_tags(const Graph& g, const CoefficientTable& coeffs) {
  if (!coeffs.matches(g)) throw std::invalid_argument("augmented_refine: coefficient table does not match graph");
  std::vector<Tag> tags(coeffs.normalized.size());
  for (std::size_t p = 0; p < tags.size(); ++p) tags[p] = quantize(coeffs.normalized[p]);
  return tags;
}

ColorHistogram histogram(const std::vector<int>& colors, std::size_t begin, std::size_t end) {
  std::map<int, std::size_t> counts;
  for (std::size_t i = begin; i < end; ++i) ++counts[colors[i]];
  return {counts.begin(), counts.end()};
}

int joint_round_cap(const Graph& g) { return static_cast<int>(g.num_nodes()) + 1; }

}  // namespace

ColorAssignment wl_refine(const Graph& g, int max_rounds) {
  if (max_rounds < 1) throw std::invalid_argument("wl_refine: max_rounds must be >= 1");
  return refine(g, {}, max_rounds);
}

bool wl_distinguishable(const Graph& g1, const Graph& g2) {
  const Graph joint = disjoint_union(g1, g2);
  const auto c = refine(joint, {}, joint_round_cap(joint));
  return histogram(c.colors, 0, g1.num_nodes()) != histogram(c.colors, g1.num_nodes(), joint.num_nodes());
}

ColorAssignment augmented_refine(const Graph& g, const CoefficientTable& coeffs, int max_rounds) {
  if (max_rounds < 1) throw std::invalid_argument("augmented_refine: max_rounds must be >= 1");
  return refine(g, pair_tags(g, coeffs), max_rounds);
}

DistinguishVerdict distinguish_pair(const Graph& g1, const Graph& g2, const DescriptorKind& kind,
                                    EncodingKind enc) {
  DistinguishVerdict out;
  out.wl_distinguishes = wl_distinguishable(g1, g2);

  const auto t1 = coefficient_table(g1, kind, enc);
  const auto t2 = coefficient_table(g2, kind, enc);
  // Coefficients are local to each component, so the joint graph's tags are
  // the two tables laid end to end in CSR pair order.
  const Graph joint = disjoint_union(g1, g2);
  std::vector<Tag> tags = pair_tags(g1, t1);
  const auto tags2 = pair_tags(g2, t2);
  tags.insert(tags.end(), tags2.begin(), tags2.end());
  const auto c = refine(joint, tags, joint_round_cap(joint));
  out.rounds_used = c.round;
  out.hist1 = histogram(c.colors, 0, g1.num_nodes());
  out.hist2 = histogram(c.colors, g1.num_nodes(), joint.num_nodes());

  out.raw1 = t1.raw;
  out.raw2 = t2.raw;
  std::sort(out.raw1.begin(), out.raw1.end());
  std::sort(out.raw2.begin(), out.raw2.end());
  auto quantized = [](const std::vector<double>& xs) {
    std::vector<std::int64_t> q(xs.size());
    std::transform(xs.begin(), xs.end(), q.begin(), quantize);
    std::sort(q.begin(), q.end());
    return q;
  };
  out.augmented_distinguishes =
      out.wl_distinguishes || out.hist1 != out.hist2 || quantized(out.raw1) != quantized(out.raw2);
  return out;
}

std::string verdict_to_json(const DistinguishVerdict& v) {
  nlohmann::ordered_json j;
  j["wl"] = v.wl_distinguishes;
  j["augmented"] = v.augmented_distinguishes;
  j["rounds"] = v.rounds_used;
  auto hist = [](const ColorHistogram& h) {
    auto arr = nlohmann::ordered_json::array();
    for (auto [color, count] : h) arr.push_back({color, count});
    return arr;
  };
  j["hist1"] = hist(v.hist1);
  j["hist2"] = hist(v.hist2);
  j["raw1"] = v.raw1;
  j["raw2"] = v.raw2;
  return j.dump() + "\n";
}

}  // namespace unionsub
