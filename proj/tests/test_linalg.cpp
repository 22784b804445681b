#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pairsim/graphs.hpp"
#include "pairsim/linalg.hpp"

using namespace pairsim;

namespace {

SymMatrix random_sym(std::size_t n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m.set(i, j, u(rng));
  return m;
}

void expect_values(const std::vector<double>& got, const std::vector<double>& want, double tol) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], tol) << "index " << i;
}

}  // namespace

TEST(Jacobi, Examples) {
  expect_values(eigenvalues(SymMatrix::diagonal({3, 1, 2})), {1, 2, 3}, 1e-14);
  expect_values(eigenvalues(cycle(6).to_sym()), {-2, -1, -1, 1, 1, 2}, 1e-10);
  expect_values(eigenvalues(path(3).to_sym()), {-std::sqrt(2.0), 0, std::sqrt(2.0)}, 1e-10);
}

TEST(Jacobi, EmptyAndScalar) {
  EXPECT_TRUE(eigenvalues(SymMatrix(0)).empty());
  expect_values(eigenvalues(SymMatrix::diagonal({-4.5})), {-4.5}, 0);
}

TEST(Jacobi, ResidualsAndOrthonormality) {
  std::mt19937 rng(1);
  for (std::size_t n : {2u, 5u, 12u, 24u}) {
    const SymMatrix m = random_sym(n, rng);
    const Eigensystem es = jacobi_eigen(m, kDefaultJacobiTolerance, true);
    ASSERT_TRUE(es.vectors.has_value());
    const Matrix& v = *es.vectors;
    const Matrix av = m.to_matrix() * v;
    for (std::size_t c = 0; c < n; ++c) {
      double residual = 0;
      for (std::size_t r = 0; r < n; ++r) residual += std::pow(av(r, c) - es.values[c] * v(r, c), 2);
      EXPECT_LT(std::sqrt(residual), 1e-10 * std::max(1.0, m.frobenius_norm()));
    }
    const Matrix vtv = v.transpose() * v;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) EXPECT_NEAR(vtv(i, j), i == j ? 1.0 : 0.0, 1e-12);
    double sum = 0;
    for (double x : es.values) sum += x;
    EXPECT_NEAR(sum, m.trace(), 1e-12 * n);
    EXPECT_TRUE(std::is_sorted(es.values.begin(), es.values.end()));
  }
}

TEST(Kron, BlockDiagonal) {
  const SymMatrix c = SymMatrix::diagonal({0, 0, 1});
  const SymMatrix k = kron(SymMatrix::identity(2), c);
  ASSERT_EQ(k.dim(), 6u);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(k(i, j), (i / 3 == j / 3) ? c(i % 3, j % 3) : 0.0);
}

TEST(Kron, EigenvaluesAreProducts) {
  std::mt19937 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const SymMatrix a = random_sym(2 + trial % 3, rng);
    const SymMatrix b = random_sym(2 + trial % 2, rng);
    std::vector<double> want;
    for (double x : eigenvalues(a))
      for (double y : eigenvalues(b)) want.push_back(x * y);
    std::sort(want.begin(), want.end());
    expect_values(eigenvalues(kron(a, b)), want, 1e-10);
  }
}

TEST(EntrywiseQuotient, Examples) {
  SymMatrix d(3);
  d.set(0, 1, 2);
  d.set(0, 2, -1);
  d.set(1, 2, 4);
  for (std::size_t i = 0; i < 3; ++i) d.set(i, i, 1);
  SymMatrix jt(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j) jt.set(i, j, 2 * d(i, j));
  const SymMatrix q = entrywise_quotient(jt, d);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(q(i, j), 2.0);

  EXPECT_EQ(entrywise_quotient(SymMatrix(3), d), SymMatrix(3));

  SymMatrix sparse(2);
  SymMatrix bad(2);
  bad.set(0, 1, 1);
  EXPECT_THROW(entrywise_quotient(bad, sparse), ZeroMismatch);
  EXPECT_THROW(entrywise_quotient(SymMatrix(2), SymMatrix(3)), DimensionMismatch);
}

TEST(NumericRank, Examples) {
  EXPECT_EQ(numeric_rank(SymMatrix::diagonal({0, 0, 1})), 1u);
  EXPECT_EQ(numeric_rank(SymMatrix::all_ones(5)), 1u);
  EXPECT_EQ(numeric_rank(SymMatrix(4)), 0u);
  EXPECT_EQ(numeric_rank(SymMatrix::identity(4)), 4u);
}

TEST(SymMatrix, SetKeepsSymmetry) {
  SymMatrix m(3);
  m.set(2, 0, 5);
  EXPECT_EQ(m(0, 2), 5);
  EXPECT_EQ(m(2, 0), 5);
  EXPECT_EQ(m.frobenius_norm(), std::sqrt(50.0));
}
