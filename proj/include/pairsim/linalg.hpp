#pragma once

// Dense symmetric floating-point linear algebra for the small coupling and
// adjacency matrices handled by the planner.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "pairsim/errors.hpp"
#include "pairsim/exactnum.hpp"

namespace pairsim {

/// Dense real matrix, row-major. Used for orthogonal control blocks and eigenbases.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
  static Matrix diagonal(const std::vector<double>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const double v = a(i, k);
        if (v == 0.0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += v * b(k, j);
      }
    return c;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> a_;
};

/// Real symmetric matrix. Construction from arbitrary entries symmetrizes,
/// so entries(k, l) == entries(l, k) holds bit-for-bit.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}
  SymMatrix(std::size_t n, std::vector<double> entries) : n_(n), a_(std::move(entries)) {
    if (a_.size() != n * n) throw DimensionMismatch("SymMatrix entry count does not match dimension");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double v = 0.5 * (a_[i * n + j] + a_[j * n + i]);
        a_[i * n + j] = v;
        a_[j * n + i] = v;
      }
  }

  static SymMatrix identity(std::size_t n) {
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1.0);
    return m;
  }
  static SymMatrix diagonal(const std::vector<double>& d) {
    SymMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
    return m;
  }
  static SymMatrix all_ones(std::size_t n) { return SymMatrix(n, std::vector<double>(n * n, 1.0)); }
  static SymMatrix from_rational(const RationalMatrix& r) {
    SymMatrix m(r.dim());
    for (std::size_t i = 0; i < r.dim(); ++i)
      for (std::size_t j = i; j < r.dim(); ++j) m.set(i, j, to_double(r(i, j)));
    return m;
  }

  std::size_t dim() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  /// Writes both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double v) {
    a_[i * n_ + j] = v;
    a_[j * n_ + i] = v;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
  }
  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  Matrix to_matrix() const {
    Matrix m(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
    return m;
  }

  friend bool operator==(const SymMatrix& a, const SymMatrix& b) { return a.n_ == b.n_ && a.a_ == b.a_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

struct Eigensystem {
  std::vector<double> values;          // ascending
  std::optional<Matrix> vectors;       // column i pairs with values[i]
};

inline constexpr double kDefaultJacobiTolerance = 1e-14;
inline constexpr int kJacobiSweepCap = 100;

/// Cyclic Jacobi eigensolver. Sweeps until the off-diagonal Frobenius norm drops
/// below tol·‖M‖; throws NonConvergence after kJacobiSweepCap sweeps.
inline Eigensystem jacobi_eigen(const SymMatrix& m, double tol = kDefaultJacobiTolerance,
                                bool want_vectors = false) {
  if (!(tol > 0.0)) throw DomainError("Jacobi tolerance must be positive");
  const std::size_t n = m.dim();
  Matrix a = m.to_matrix();
  Matrix v = Matrix::identity(n);
  const double norm = m.frobenius_norm();

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_norm() >= tol * norm && norm > 0.0) {
    if (++sweep > kJacobiSweepCap) throw NonConvergence("Jacobi eigensolver did not converge");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const double vkp = v(k, p);
            const double vkq = v(k, q);
            v(k, p) = c * vkp - s * vkq;
            v(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

  Eigensystem out;
  out.values.reserve(n);
  for (std::size_t i : order) out.values.push_back(a(i, i));
  if (want_vectors) {
    Matrix sorted(n, n);
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t r = 0; r < n; ++r) sorted(r, c) = v(r, order[c]);
    out.vectors = std::move(sorted);
  }
  return out;
}

inline std::vector<double> eigenvalues(const SymMatrix& m) { return jacobi_eigen(m).values; }

/// Kronecker product A ⊗ B.
inline SymMatrix kron(const SymMatrix& a, const SymMatrix& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  SymMatrix out(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      const double aij = a(i, j);
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) out.set(i * nb + k, j * nb + l, aij * b(k, l));
    }
  return out;
}

/// Entrywise Jt / D with 0/0 := 0. Throws ZeroMismatch where D is zero but Jt is not.
inline SymMatrix entrywise_quotient(const SymMatrix& jt, const SymMatrix& d) {
  if (jt.dim() != d.dim()) throw DimensionMismatch("entrywise quotient of different dimensions");
  SymMatrix out(jt.dim());
  for (std::size_t i = 0; i < jt.dim(); ++i)
    for (std::size_t j = i; j < jt.dim(); ++j) {
      if (d(i, j) == 0.0) {
        if (jt(i, j) != 0.0) throw ZeroMismatch(i, j);
        continue;
      }
      out.set(i, j, jt(i, j) / d(i, j));
    }
  return out;
}

/// Number of eigenvalues with |λ| > tol·max(1, ‖M‖).
inline std::size_t numeric_rank(const SymMatrix& m, double tol = 1e-9) {
  if (!(tol > 0.0)) throw DomainError("rank tolerance must be positive");
  const double cutoff = tol * std::max(1.0, m.frobenius_norm());
  const auto vals = eigenvalues(m);
  return static_cast<std::size_t>(
      std::count_if(vals.begin(), vals.end(), [&](double v) { return std::abs(v) > cutoff; }));
}

}  // namespace pairsim
