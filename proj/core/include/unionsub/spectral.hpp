#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "unionsub/dense.hpp"

namespace unionsub {

/// Matrix -> scalar encodings compared in the encoding ablation.
enum class EncodingKind {
  MatrixSum,  ///< sum of all entries
  EigenMax,   ///< |λ| of the largest-magnitude eigenvalue (symmetric input)
  SvdSum,     ///< sum of singular values (nuclear norm)
};

std::string to_string(EncodingKind kind);
EncodingKind parse_encoding(const std::string& text);

struct JacobiOptions {
  /// Stop once the off-diagonal Frobenius norm is below tol * max(1, ||A||_F).
  double tolerance = 1e-12;
  int max_sweeps = 100;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
/// Throws std::invalid_argument for non-square/asymmetric input and
/// ConvergenceError when the sweep cap is hit.
std::vector<double> symmetric_eigenvalues(const DenseTensor& a, const JacobiOptions& opts = {});

/// Singular values, descending. Symmetric input uses |eigenvalues|; general
/// input uses sqrt of the eigenvalues of AᵀA.
std::vector<double> singular_values(const DenseTensor& a, const JacobiOptions& opts = {});

double encode_matrix(const DenseTensor& m, EncodingKind kind, const JacobiOptions& opts = {});

}  // namespace unionsub
