#include "unionsub/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace unionsub {

std::string to_string(EncodingKind kind) {
  switch (kind) {
    case EncodingKind::MatrixSum: return "sum";
    case EncodingKind::EigenMax: return "eigmax";
    case EncodingKind::SvdSum: return "svd";
  }
  return "?";
}

EncodingKind parse_encoding(const std::string& text) {
  if (text == "sum" || text == "matrix-sum") return EncodingKind::MatrixSum;
  if (text == "eigmax" || text == "eigen-max") return EncodingKind::EigenMax;
  if (text == "svd" || text == "svd-sum") return EncodingKind::SvdSum;
  throw std::invalid_argument("unknown encoding '" + text + "' (expected sum, eigmax, svd)");
}

namespace {


double frobenius(const DenseTensor& a) {
  double s = 0.0;
  for (double x : a.data()) s += x * x;
  return std::sqrt(s);
}

void require_square(const DenseTensor& a, const char* who) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument(std::string(who) + ": matrix is " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + ", expected square");
  }
  if (!a.all_finite()) throw std::invalid_argument(std::string(who) + ": non-finite entry");
}

}  // namespace

std::vector<double> symmetric_eigenvalues(const DenseTensor& input, const JacobiOptions& opts) {
  require_square(input, "symmetric_eigenvalues");
  if (!input.is_symmetric(1e-12 * std::max(1.0, frobenius(input)))) {
    throw std::invalid_argument("symmetric_eigenvalues: matrix is not symmetric");
  }
  const std::size_t n = input.rows();
  DenseTensor a = input;
  const double threshold = opts.tolerance * std::max(1.0, frobenius(a));

  // Only the upper triangle is read or written; the lower one goes stale.
  auto upper = [&](std::size_t i, std::size_t j) -> double& { return i < j ? a(i, j) : a(j, i); };
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) s += 2.0 * a(p, q) * a(p, q);
    return std::sqrt(s);
  };

  int sweep = 0;
  for (double off = off_norm(); off > threshold; off = off_norm()) {
    if (sweep++ >= opts.max_sweeps) {
      throw ConvergenceError("Jacobi eigensolver did not converge in " +
                             std::to_string(opts.max_sweeps) + " sweeps");
    }
    // Early sweeps only rotate the large entries.
    const double skip_below = sweep < 4 ? 0.2 * off / static_cast<double>(n * n) : 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0 || std::abs(apq) < skip_below) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        // Rotation angle zeroing a(p, q); t = tan(theta), smaller root.
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          double& arp = upper(r, p);
          double& arq = upper(r, q);
          const double xp = arp;
          const double xq = arq;
          arp = xp - s * (xq + tau * xp);
          arq = xq + s * (xp - tau * xq);
        }
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

std::vector<double> singular_values(const DenseTensor& a, const JacobiOptions& opts) {
  require_square(a, "singular_values");
  std::vector<double> sv;
  if (a.is_symmetric(1e-12 * std::max(1.0, frobenius(a)))) {
    sv = symmetric_eigenvalues(a, opts);
    for (double& x : sv) x = std::abs(x);
  } else {
    sv = symmetric_eigenvalues(matmul_tn(a, a), opts);
    for (double& x : sv) x = std::sqrt(std::max(0.0, x));
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

double encode_matrix(const DenseTensor& m, EncodingKind kind, const JacobiOptions& opts) {
  require_square(m, "encode_matrix");
  switch (kind) {
    case EncodingKind::MatrixSum:
      return std::accumulate(m.data().begin(), m.data().end(), 0.0);
    case EncodingKind::EigenMax: {
      auto eig = symmetric_eigenvalues(m, opts);
      if (eig.empty()) return 0.0;
      return std::max(std::abs(eig.front()), std::abs(eig.back()));
    }
    case EncodingKind::SvdSum: {
      auto sv = singular_values(m, opts);
      return std::accumulate(sv.begin(), sv.end(), 0.0);
    }
  }
  throw std::invalid_argument("encode_matrix: unknown encoding");
}

}  // namespace unionsub
