#pragma once

#include <span>

#include "unionsub/dense.hpp"

namespace unionsub {

struct TransportPlan {
  double cost = 0.0;
  DenseTensor flow;  // supply x demand
  int pivots = 0;
};

/// Exact balanced transportation problem
///   min Σ cost(i,j) x(i,j)  s.t. row sums = supply, column sums = demand, x >= 0
/// by the transportation simplex (north-west corner start, u-v potentials,
/// Bland's rule against cycling). Throws std::invalid_argument when the
/// masses are negative or unbalanced beyond 1e-9.
TransportPlan solve_transport(std::span<const double> supply, std::span<const double> demand,
                              const DenseTensor& cost);

}  // namespace unionsub
