#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

namespace unionsub {

/// Row-major real matrix.
class DenseTensor {
 public:
  DenseTensor() = default;
  DenseTensor(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  DenseTensor(std::size_t rows, std::size_t cols, std::vector<double> data);

  static DenseTensor identity(std::size_t n);
  /// Uniform in ±sqrt(6 / (fan_in + fan_out)).
  static DenseTensor glorot(std::size_t rows, std::size_t cols, std::mt19937_64& rng);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::vector<double>& data() noexcept { return data_; }
  const std::vector<double>& data() const noexcept { return data_; }

  void fill(double value);
  bool all_finite() const;
  bool is_symmetric(double tol = 0.0) const;

  friend bool operator==(const DenseTensor&, const DenseTensor&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// a (n x k) * b (k x m)
DenseTensor matmul(const DenseTensor& a, const DenseTensor& b);
/// aᵀ (k x n)ᵀ * b (k x m) -> n x m
DenseTensor matmul_tn(const DenseTensor& a, const DenseTensor& b);
/// a (n x k) * bᵀ (m x k)ᵀ -> n x m
DenseTensor matmul_nt(const DenseTensor& a, const DenseTensor& b);
DenseTensor transpose(const DenseTensor& a);

}  // namespace unionsub
