#pragma once

// Optimal time overhead for sign-flip schemes as a linear program over the
// Seidel matrices S(x), and an exhaustive minimal-step search for tiny graphs.
//
//   minimize Σ t_x   subject to   Σ t_x S(x) = A,  t ≥ 0,
//
// with one equality per unordered pair and one column per pattern x with
// x[0] = +1 (S(x) = S(-x)). The exact instantiation works over BigRational, so
// the optimal overhead comes out as a rational number.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "pairsim/errors.hpp"
#include "pairsim/exactnum.hpp"
#include "pairsim/graphs.hpp"
#include "pairsim/schemes.hpp"

namespace pairsim {

inline constexpr std::size_t kExactLpMaxNodes = 14;
inline constexpr std::size_t kFloatLpMaxNodes = 16;
inline constexpr std::size_t kBruteForceMaxNodes = 5;
inline constexpr std::size_t kBruteForceMaxSteps = 8;

/// All 2^(n-1) distinct Seidel matrices, indexed by patterns with x[0] = +1.
/// Bit i-1 of the index set means x[i] = -1; index 0 is the all-plus pattern (K).
class GeneratorSet {
 public:
  explicit GeneratorSet(std::size_t n) : n_(n) {
    if (n < 1 || n > 30) throw SizeExceeded("generator set supports 1 <= n <= 30");
    const std::size_t count = std::size_t{1} << (n - 1);
    patterns_.reserve(count);
    for (std::size_t mask = 0; mask < count; ++mask) {
      std::vector<std::int8_t> x(n, 1);
      for (std::size_t i = 1; i < n; ++i)
        if ((mask >> (i - 1)) & 1U) x[i] = -1;
      patterns_.emplace_back(std::move(x));
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = k + 1; l < n; ++l) pairs_.push_back({k, l});
  }

  std::size_t n() const { return n_; }
  std::size_t size() const { return patterns_.size(); }
  const SignPattern& pattern(std::size_t i) const { return patterns_[i]; }
  /// Unordered pairs k < l in lexicographic order; the LP rows.
  const std::vector<Edge>& pairs() const { return pairs_; }
  int entry(std::size_t generator, std::size_t pair) const {
    const auto& x = patterns_[generator];
    return x[pairs_[pair].k] * x[pairs_[pair].l];
  }

 private:
  std::size_t n_;
  std::vector<SignPattern> patterns_;
  std::vector<Edge> pairs_;
};

enum class LPStatus { Optimal, Infeasible };

template <typename Scalar>
struct SupportEntry {
  SignPattern pattern;
  Scalar t;
};

template <typename Scalar>
struct LPSolution {
  LPStatus status = LPStatus::Infeasible;
  Scalar tau{};
  std::vector<SupportEntry<Scalar>> support;  // t > 0 only
};

using ExactLPSolution = LPSolution<BigRational>;
using FloatLPSolution = LPSolution<double>;

namespace detail {

template <typename S>
struct ScalarOps;

template <>
struct ScalarOps<BigRational> {
  static bool is_zero(const BigRational& x) { return x == 0; }
  static bool is_negative(const BigRational& x) { return x < 0; }
  static bool is_positive(const BigRational& x) { return x > 0; }
  static bool less(const BigRational& a, const BigRational& b) { return a < b; }
  static BigRational from(const BigRational& q) { return q; }
  static BigRational abs(const BigRational& x) { return x < 0 ? BigRational(-x) : x; }
};

template <>
struct ScalarOps<double> {
  static constexpr double eps = 1e-9;
  static bool is_zero(double x) { return std::abs(x) <= eps; }
  static bool is_negative(double x) { return x < -eps; }
  static bool is_positive(double x) { return x > eps; }
  static bool less(double a, double b) { return a < b - eps; }
  static double from(const BigRational& q) { return to_double(q); }
  static double abs(double x) { return std::abs(x); }
};

/// Dense two-phase simplex for  min cᵀx  s.t.  A x = b, x ≥ 0.
/// The exact instantiation uses Bland's rule throughout. The float one uses the
/// most negative reduced cost and the largest pivot among ratio ties, falling
/// back to Bland's rule after many iterations.
/// Returns nullopt when infeasible; throws DomainError when unbounded.
template <typename S>
class DenseSimplex {
  using Ops = ScalarOps<S>;
  static constexpr bool kExact = std::is_same_v<S, BigRational>;

 public:
  DenseSimplex(std::vector<std::vector<S>> a, std::vector<S> b, std::vector<S> c)
      : rows_(a.size()), cols_(c.size()), width_(cols_ + rows_ + 1), c_(std::move(c)) {
    // Tableau columns: structural, then one artificial per row, then rhs.
    t_.assign(rows_, std::vector<S>(width_, S(0)));
    basis_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      const bool flip = Ops::is_negative(b[i]);
      for (std::size_t j = 0; j < cols_; ++j) t_[i][j] = flip ? S(-a[i][j]) : a[i][j];
      t_[i][cols_ + i] = S(1);
      t_[i][rhs()] = flip ? S(-b[i]) : b[i];
      basis_[i] = cols_ + i;
    }
  }

  /// `warm` lists structural columns of a candidate basis; it replaces phase 1
  /// only when it is primal feasible, so the result does not depend on it.
  std::optional<std::vector<S>> solve(const std::vector<std::size_t>& warm = {}) {
    if (warm.empty() || !try_warm_start(warm)) {
      // Phase 1: minimize the sum of artificials.
      obj_.assign(width_, S(0));
      for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) obj_[j] -= t_[i][j];
        obj_[rhs()] -= t_[i][rhs()];
      }
      run(cols_ + rows_);
      if (Ops::is_negative(obj_[rhs()])) return std::nullopt;  // -(sum of artificials) < 0
    }

    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < rows_;) {
      if (basis_[i] < cols_) {
        ++i;
        continue;
      }
      std::size_t j = cols_;
      for (std::size_t k = 0; k < cols_; ++k)
        if (!Ops::is_zero(t_[i][k]) && (j == cols_ || Ops::abs(t_[i][k]) > Ops::abs(t_[i][j]))) j = k;
      if (j < cols_) {
        pivot(i, j);
        ++i;
      } else {
        t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
        --rows_;
      }
    }

    // Phase 2 over structural columns only.
    obj_.assign(width_, S(0));
    for (std::size_t j = 0; j < cols_; ++j) obj_[j] = c_[j];
    for (std::size_t i = 0; i < rows_; ++i) {
      const S& cb = c_[basis_[i]];
      if (Ops::is_zero(cb)) continue;
      for (std::size_t j = 0; j < obj_.size(); ++j) obj_[j] -= cb * t_[i][j];
    }
    run(cols_);

    std::vector<S> x(cols_, S(0));
    for (std::size_t i = 0; i < rows_; ++i) x[basis_[i]] = t_[i][rhs()];
    return x;
  }

  /// Structural columns of the current basis.
  std::vector<std::size_t> structural_basis() const {
    std::vector<std::size_t> out;
    for (std::size_t b : basis_)
      if (b < cols_) out.push_back(b);
    return out;
  }

 private:
  std::size_t rhs() const { return width_ - 1; }

  bool try_warm_start(const std::vector<std::size_t>& warm) {
    const auto saved_t = t_;
    const auto saved_basis = basis_;
    obj_.clear();
    for (std::size_t c : warm) {
      if (c >= cols_) continue;
      std::size_t r = rows_;
      for (std::size_t i = 0; i < rows_; ++i)
        if (basis_[i] >= cols_ && !Ops::is_zero(t_[i][c]) && (r == rows_ || Ops::abs(t_[i][c]) > Ops::abs(t_[r][c])))
          r = i;
      if (r < rows_) pivot(r, c);
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      const S& v = t_[i][rhs()];
      if (Ops::is_negative(v) || (basis_[i] >= cols_ && !Ops::is_zero(v))) {
        t_ = saved_t;
        basis_ = saved_basis;
        return false;
      }
    }
    return true;
  }

  void pivot(std::size_t r, std::size_t c) {
    const S p = t_[r][c];
    auto& row = t_[r];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (Ops::is_zero(row[j]) && j != c) {
        row[j] = S(0);
        continue;
      }
      row[j] /= p;
      nz.push_back(j);
    }
    auto eliminate = [&](std::vector<S>& other) {
      if (other.empty()) return;
      const S f = other[c];
      if (f == S(0)) return;
      for (std::size_t j : nz) other[j] -= f * row[j];
      other[c] = S(0);
    };
    for (std::size_t i = 0; i < rows_; ++i)
      if (i != r) eliminate(t_[i]);
    eliminate(obj_);
    basis_[r] = c;
  }

  std::size_t entering(std::size_t allowed, bool bland) const {
    std::size_t enter = allowed;
    for (std::size_t j = 0; j < allowed; ++j) {
      if (!Ops::is_negative(obj_[j])) continue;
      if (bland) return j;
      if (enter == allowed || obj_[j] < obj_[enter]) enter = j;
    }
    return enter;
  }

  void run(std::size_t allowed) {
    const std::size_t dantzig_budget = kExact ? 0 : 20 * (rows_ + allowed);
    for (std::size_t iter = 0;; ++iter) {
      const bool bland = iter >= dantzig_budget;
      const std::size_t enter = entering(allowed, bland);
      if (enter == allowed) return;
      std::size_t leave = rows_;
      S best{};
      for (std::size_t i = 0; i < rows_; ++i) {
        if (!Ops::is_positive(t_[i][enter])) continue;
        S ratio = t_[i][rhs()] / t_[i][enter];
        if (Ops::is_negative(ratio)) ratio = S(0);
        bool take = leave == rows_ || Ops::less(ratio, best);
        if (!take && !Ops::less(best, ratio))
          take = kExact ? basis_[i] < basis_[leave] : Ops::abs(t_[i][enter]) > Ops::abs(t_[leave][enter]);
        if (take) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows_) throw DomainError("linear program is unbounded");
      pivot(leave, enter);
    }
  }

  std::size_t rows_;
  std::size_t cols_;
  std::size_t width_;
  std::vector<S> c_;
  std::vector<std::vector<S>> t_;
  std::vector<S> obj_;
  std::vector<std::size_t> basis_;
};

inline void check_lp_target(const RationalMatrix& a) {
  if (!a.is_symmetric()) throw DomainError("target must be symmetric");
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (a(i, i) != 0) throw DomainError("target must have a zero diagonal");
}

template <typename S>
DenseSimplex<S> seidel_lp(const RationalMatrix& a, const GeneratorSet& gens) {
  const auto& pairs = gens.pairs();
  std::vector<std::vector<S>> rows(pairs.size(), std::vector<S>(gens.size()));
  std::vector<S> b(pairs.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    for (std::size_t g = 0; g < gens.size(); ++g) rows[p][g] = S(gens.entry(g, p));
    b[p] = ScalarOps<S>::from(a(pairs[p].k, pairs[p].l));
  }
  return DenseSimplex<S>(std::move(rows), std::move(b), std::vector<S>(gens.size(), S(1)));
}

}  // namespace detail

/// Minimal overhead Σ t over nonnegative combinations of Seidel matrices equal
/// to A. Scalar = BigRational is exact (n ≤ 14); Scalar = double is the float
/// mode (n ≤ 16). A = 0 gives τ = 0 with empty support.
template <typename Scalar>
LPSolution<Scalar> optimal_overhead(const RationalMatrix& a) {
  using Ops = detail::ScalarOps<Scalar>;
  detail::check_lp_target(a);
  const std::size_t n = a.dim();
  const std::size_t limit = std::is_same_v<Scalar, BigRational> ? kExactLpMaxNodes : kFloatLpMaxNodes;
  if (n > limit) throw SizeExceeded("optimal overhead supports n <= " + std::to_string(limit));

  LPSolution<Scalar> sol;
  sol.tau = Scalar(0);
  if (a.is_zero() || n < 2) {
    sol.status = LPStatus::Optimal;
    return sol;
  }

  const GeneratorSet gens(n);
  std::vector<std::size_t> warm;
  if constexpr (std::is_same_v<Scalar, BigRational>) {
    // A float solve usually lands on the optimal basis; the exact pass
    // re-checks feasibility and finishes with Bland's rule.
    try {
      auto guess = detail::seidel_lp<double>(a, gens);
      if (guess.solve()) warm = guess.structural_basis();
    } catch (const Error&) {
      warm.clear();
    }
  }
  auto lp = detail::seidel_lp<Scalar>(a, gens);
  auto x = lp.solve(warm);
  if (!x) return sol;  // Infeasible
  sol.status = LPStatus::Optimal;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (!Ops::is_positive((*x)[g])) continue;
    sol.tau += (*x)[g];
    sol.support.push_back({gens.pattern(g), (*x)[g]});
  }
  return sol;
}

inline ExactLPSolution optimal_overhead_exact(const RationalMatrix& a) { return optimal_overhead<BigRational>(a); }
inline FloatLPSolution optimal_overhead_float(const RationalMatrix& a) { return optimal_overhead<double>(a); }

/// Scheme with one step per support entry.
inline Scheme to_scheme(std::size_t n, const ExactLPSolution& sol) {
  Scheme s(n);
  for (const auto& e : sol.support) s.add_step(e.t, e.pattern);
  return s;
}

namespace detail {

/// Solves Σ_j t_j col_j = rhs exactly when the columns are linearly independent.
/// nullopt when dependent or inconsistent.
inline std::optional<std::vector<BigRational>> solve_independent(const std::vector<std::vector<int>>& cols,
                                                                 const std::vector<BigRational>& rhs) {
  const std::size_t m = rhs.size();
  const std::size_t k = cols.size();
  std::vector<std::vector<BigRational>> a(m, std::vector<BigRational>(k + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = cols[j][i];
    a[i][k] = rhs[i];
  }
  std::size_t row = 0;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = row;
    while (piv < m && a[piv][col] == 0) ++piv;
    if (piv == m) return std::nullopt;  // dependent columns
    std::swap(a[row], a[piv]);
    const BigRational p = a[row][col];
    for (std::size_t j = col; j <= k; ++j) a[row][j] /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || a[i][col] == 0) continue;
      const BigRational f = a[i][col];
      for (std::size_t j = col; j <= k; ++j) a[i][j] -= f * a[row][j];
    }
    ++row;
  }
  for (std::size_t i = row; i < m; ++i)
    if (a[i][k] != 0) return std::nullopt;  // inconsistent
  std::vector<BigRational> t(k);
  for (std::size_t j = 0; j < k; ++j) t[j] = a[j][k];
  return t;
}

}  // namespace detail

/// Smallest N such that A = Σ t_j S(x_j) over N distinct patterns with all
/// t_j > 0, by exhaustive enumeration of generator subsets (n ≤ 5, N ≤ 8).
/// A minimal support is linearly independent, so only independent subsets are
/// solved. Returns the witnessing scheme, or nullopt if none within max_steps.
inline std::optional<Scheme> min_steps_bruteforce(const RationalMatrix& a, std::size_t max_steps) {
  detail::check_lp_target(a);
  const std::size_t n = a.dim();
  if (n > kBruteForceMaxNodes) throw SizeExceeded("brute-force search supports n <= 5");
  if (max_steps > kBruteForceMaxSteps) throw SizeExceeded("brute-force search supports at most 8 steps");
  if (a.is_zero() || n < 2) return Scheme(n);

  const GeneratorSet gens(n);
  const auto& pairs = gens.pairs();
  std::vector<BigRational> rhs;
  for (const auto& p : pairs) rhs.push_back(a(p.k, p.l));
  std::vector<std::vector<int>> all_cols(gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (std::size_t p = 0; p < pairs.size(); ++p) all_cols[g].push_back(gens.entry(g, p));

  const std::size_t upper = std::min({max_steps, gens.size(), pairs.size()});
  for (std::size_t steps = 1; steps <= upper; ++steps) {
    std::vector<std::size_t> idx(steps);
    for (std::size_t i = 0; i < steps; ++i) idx[i] = i;
    for (;;) {
      std::vector<std::vector<int>> cols;
      for (std::size_t g : idx) cols.push_back(all_cols[g]);
      if (auto t = detail::solve_independent(cols, rhs)) {
        bool positive = true;
        for (const auto& v : *t) positive = positive && v > 0;
        if (positive) {
          Scheme s(n);
          for (std::size_t i = 0; i < steps; ++i) s.add_step((*t)[i], gens.pattern(idx[i]));
          return s;
        }
      }
      // next combination
      std::size_t i = steps;
      while (i > 0 && idx[i - 1] == gens.size() - steps + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < steps; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace pairsim
