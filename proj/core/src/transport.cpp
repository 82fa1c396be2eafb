#include "unionsub/transport.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace unionsub {

namespace {

constexpr double kReducedCostTol = 1e-12;
constexpr double kTieTol = 1e-13;

struct Cell {
  std::size_t row = 0;
  std::size_t col = 0;
};

class TransportSimplex {
 public:
  TransportSimplex(std::span<const double> supply, std::span<const double> demand, const DenseTensor& cost)
      : m_(supply.size()), n_(demand.size()), cost_(cost), flow_(m_, n_), basic_(m_ * n_, false) {
    north_west_corner(supply, demand);
  }

  TransportPlan solve() {
    int pivots = 0;
    const int max_pivots = static_cast<int>(50 * (m_ + n_) * (m_ + n_) + 1000);
    for (;;) {
      compute_potentials();
      auto entering = pick_entering();
      if (!entering) break;
      pivot(*entering);
      if (++pivots > max_pivots) throw std::runtime_error("transportation simplex: pivot limit exceeded");
    }
    TransportPlan plan;
    plan.flow = flow_;
    plan.pivots = pivots;
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < n_; ++j) plan.cost += cost_(i, j) * flow_(i, j);
    return plan;
  }

 private:
  bool is_basic(std::size_t i, std::size_t j) const { return basic_[i * n_ + j]; }

  void north_west_corner(std::span<const double> supply, std::span<const double> demand) {
    std::vector<double> rs(supply.begin(), supply.end());
    std::vector<double> rd(demand.begin(), demand.end());
    std::size_t i = 0, j = 0;
    for (;;) {
      const double x = std::min(rs[i], rd[j]);
      flow_(i, j) = x;
      basic_[i * n_ + j] = true;
      rs[i] -= x;
      rd[j] -= x;
      if (i == m_ - 1 && j == n_ - 1) break;
      if (i == m_ - 1) ++j;
      else if (j == n_ - 1) ++i;
      else if (rs[i] <= rd[j]) ++i;
      else ++j;
    }
  }

  // u_i + v_j = c_ij on basic cells; the basis is a spanning tree over the
  // m row nodes and n column nodes.
  void compute_potentials() {
    u_.assign(m_, 0.0);
    v_.assign(n_, 0.0);
    std::vector<bool> row_done(m_, false), col_done(n_, false);
    row_done[0] = true;
    std::vector<std::size_t> stack{0};  // node ids: rows 0..m-1, cols m..m+n-1
    while (!stack.empty()) {
      const std::size_t node = stack.back();
      stack.pop_back();
      if (node < m_) {
        for (std::size_t j = 0; j < n_; ++j) {
          if (is_basic(node, j) && !col_done[j]) {
            v_[j] = cost_(node, j) - u_[node];
            col_done[j] = true;
            stack.push_back(m_ + j);
          }
        }
      } else {
        const std::size_t j = node - m_;
        for (std::size_t i = 0; i < m_; ++i) {
          if (is_basic(i, j) && !row_done[i]) {
            u_[i] = cost_(i, j) - v_[j];
            row_done[i] = true;
            stack.push_back(i);
          }
        }
      }
    }
  }

  // Bland: first improving cell in row-major order.
  std::optional<Cell> pick_entering() const {
    double scale = 1.0;
    for (double c : cost_.data()) scale = std::max(scale, std::abs(c));
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (!is_basic(i, j) && cost_(i, j) - u_[i] - v_[j] < -kReducedCostTol * scale) return Cell{i, j};
    return std::nullopt;
  }

  // Basis-tree path from row `r` to column `c`, as a list of cells.
  std::vector<Cell> tree_path(std::size_t r, std::size_t c) const {
    const std::size_t total = m_ + n_;
    std::vector<std::size_t> parent(total, total);
    std::vector<bool> seen(total, false);
    std::vector<std::size_t> queue{r};
    seen[r] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t node = queue[head];
      if (node == m_ + c) break;
      if (node < m_) {
        for (std::size_t j = 0; j < n_; ++j) {
          if (is_basic(node, j) && !seen[m_ + j]) {
            seen[m_ + j] = true;
            parent[m_ + j] = node;
            queue.push_back(m_ + j);
          }
        }
      } else {
        for (std::size_t i = 0; i < m_; ++i) {
          if (is_basic(i, node - m_) && !seen[i]) {
            seen[i] = true;
            parent[i] = node;
            queue.push_back(i);
          }
        }
      }
    }
    if (!seen[m_ + c]) throw std::logic_error("transportation simplex: basis is not spanning");
    std::vector<Cell> path;
    for (std::size_t node = m_ + c; node != r; node = parent[node]) {
      const std::size_t prev = parent[node];
      path.push_back(node < m_ ? Cell{node, prev - m_} : Cell{prev, node - m_});
    }
    std::reverse(path.begin(), path.end());  // first cell touches row r
    return path;
  }

  void pivot(Cell in) {
    // Cycle: +in, then alternating -, +, -, ... along the tree path; the
    // path has odd length so its first and last cells are both '-'.
    auto path = tree_path(in.row, in.col);
    double theta = INFINITY;
    for (std::size_t k = 0; k < path.size(); k += 2) theta = std::min(theta, flow_(path[k].row, path[k].col));
    std::size_t leave = path.size();
    for (std::size_t k = 0; k < path.size(); k += 2) {
      if (flow_(path[k].row, path[k].col) - theta > kTieTol) continue;
      if (leave == path.size() || index(path[k]) < index(path[leave])) leave = k;
    }
    for (std::size_t k = 0; k < path.size(); ++k) {
      double& f = flow_(path[k].row, path[k].col);
      f += (k % 2 == 0) ? -theta : theta;
      if (f < 0.0) f = 0.0;
    }
    flow_(in.row, in.col) = theta;
    basic_[index(in)] = true;
    basic_[index(path[leave])] = false;
    flow_(path[leave].row, path[leave].col) = 0.0;
  }

  std::size_t index(Cell c) const { return c.row * n_ + c.col; }

  std::size_t m_, n_;
  const DenseTensor& cost_;
  DenseTensor flow_;
  std::vector<bool> basic_;
  std::vector<double> u_, v_;
};

}  // namespace

TransportPlan solve_transport(std::span<const double> supply, std::span<const double> demand,
                              const DenseTensor& cost) {
  if (supply.empty() || demand.empty()) throw std::invalid_argument("solve_transport: empty support");
  if (cost.rows() != supply.size() || cost.cols() != demand.size()) {
    throw std::invalid_argument("solve_transport: cost matrix shape does not match supports");
  }
  for (double x : supply)
    if (!(x >= 0.0)) throw std::invalid_argument("solve_transport: negative or NaN supply");
  for (double x : demand)
    if (!(x >= 0.0)) throw std::invalid_argument("solve_transport: negative or NaN demand");
  const double ts = std::accumulate(supply.begin(), supply.end(), 0.0);
  const double td = std::accumulate(demand.begin(), demand.end(), 0.0);
  if (std::abs(ts - td) > 1e-9 * std::max(1.0, ts)) {
    throw std::invalid_argument("solve_transport: unbalanced masses (" + std::to_string(ts) + " vs " +
                                std::to_string(td) + ")");
  }
  return TransportSimplex(supply, demand, cost).solve();
}

}  // namespace unionsub
