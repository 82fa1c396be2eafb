#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "unionsub/coefficients.hpp"
#include "unionsub/graph.hpp"

namespace unionsub {

/// Colors are contiguous from 0 and ordered by their refinement signature,
/// so the same input always yields the same ids.
struct ColorAssignment {
  std::vector<int> colors;
  int round = 0;
  bool stable = false;

  int num_colors() const;
};

/// (color, count) pairs ascending by color.
using ColorHistogram = std::vector<std::pair<int, std::size_t>>;

/// 1-WL: each round a node's new color is the rank of (own color, sorted
/// neighbour colors). Initial colors come from the node features. Stops
/// when the partition stops splitting or after max_rounds.
ColorAssignment wl_refine(const Graph& g, int max_rounds);

/// Joint refinement of both graphs in one color table; true iff the stable
/// color histograms differ.
bool wl_distinguishable(const Graph& g1, const Graph& g2);

/// As wl_refine, but each neighbour u of v contributes
/// (color(u), round(ã^{vu} * 1e9)). Throws std::invalid_argument when the
/// table does not belong to g.
ColorAssignment augmented_refine(const Graph& g, const CoefficientTable& coeffs, int max_rounds);

struct DistinguishVerdict {
  bool wl_distinguishes = false;
  bool augmented_distinguishes = false;
  int rounds_used = 0;
  /// Augmented refinement histograms in the shared color table.
  ColorHistogram hist1, hist2;
  /// Sorted raw coefficients of each graph.
  std::vector<double> raw1, raw2;
};

/// Plain and coefficient-augmented verdicts for one pair. The augmented side
/// reports a difference if the augmented histograms differ or if the sorted
/// raw coefficient multisets differ after 1e-9 quantization.
DistinguishVerdict distinguish_pair(const Graph& g1, const Graph& g2, const DescriptorKind& kind,
                                    EncodingKind enc);

/// {"wl", "augmented", "rounds", "hist1", "hist2", "raw1", "raw2"}.
std::string verdict_to_json(const DistinguishVerdict& v);

}  // namespace unionsub
