#pragma once

// Spectra of target matrices with exact rationality verdicts for the minimal
// eigenvalue.
//
// For a rational symmetric A, let D be the lcm of its denominators. The
// eigenvalues of D·A are the roots of the monic integer polynomial
// det(xI - D·A), so every rational eigenvalue of D·A is an integer. An
// eigenvalue λ of A is therefore rational iff D·λ is an integer root of that
// polynomial. The smallest root is isolated with Sturm sequences on the
// square-free part, matched to its square-free factor (which fixes the exact
// multiplicity) and compared against that factor's integer roots.

#include <cmath>
#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

#include "pairsim/exactnum.hpp"
#include "pairsim/linalg.hpp"

namespace pairsim {

struct EigenCluster {
  double value;
  std::size_t multiplicity;
};

struct Spectrum {
  std::vector<EigenCluster> clusters;  // ascending values
  std::size_t n = 0;

  double min() const { return clusters.front().value; }
  double max() const { return clusters.back().value; }
};

inline constexpr double kDefaultClusterTolerance = 1e-7;

/// Greedy clustering: a value within tol of the previous one joins its cluster.
/// Cluster values are the means of their members.
inline Spectrum cluster_eigenvalues(const std::vector<double>& sorted_values, double tol = kDefaultClusterTolerance) {
  Spectrum s;
  s.n = sorted_values.size();
  double sum = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < sorted_values.size(); ++i) {
    const double v = sorted_values[i];
    if (i > 0 && v - prev <= tol) {
      auto& c = s.clusters.back();
      ++c.multiplicity;
      sum += v;
      c.value = sum / static_cast<double>(c.multiplicity);
    } else {
      s.clusters.push_back({v, 1});
      sum = v;
    }
    prev = v;
  }
  return s;
}

/// Spectrum of a symmetric matrix; the clustering tolerance scales with max(1, ‖M‖).
inline Spectrum spectrum(const SymMatrix& m, double rel_tol = kDefaultClusterTolerance) {
  return cluster_eigenvalues(eigenvalues(m), rel_tol * std::max(1.0, m.frobenius_norm()));
}

struct RationalityVerdict {
  enum class Kind { Rational, Irrational, NumericOnly };
  Kind kind = Kind::NumericOnly;
  BigRational value;  // exact eigenvalue when kind == Rational
};

inline const char* to_string(RationalityVerdict::Kind k) {
  switch (k) {
    case RationalityVerdict::Kind::Rational: return "rational";
    case RationalityVerdict::Kind::Irrational: return "irrational";
    case RationalityVerdict::Kind::NumericOnly: return "numeric-only";
  }
  return "?";
}

struct MinEigenvalue {
  double value = 0.0;
  std::size_t multiplicity = 0;
  RationalityVerdict verdict;
  /// Multiplicity comes from the exact square-free decomposition.
  bool exact = false;
  /// For Irrational verdicts: certified lower bound on |λ_min - z| over all integers z.
  BigRational separation;
};

struct SpectralOptions {
  std::size_t exact_size_threshold = 64;
  double cluster_tolerance = kDefaultClusterTolerance;
};

namespace detail {

/// Bracket [lo, hi) holding the smallest root of square-free p and no other root.
struct RootBracket {
  BigRational lo;
  BigRational hi;
};

inline RootBracket isolate_smallest_root(const std::vector<IntPolynomial>& chain, double hint) {
  const IntPolynomial& p = chain.front();
  auto below = [&](const BigRational& q) { return count_roots_below(chain, q); };
  auto ok = [&](const BigRational& lo, const BigRational& hi) { return below(lo) == 0 && below(hi) == 1; };
  if (std::isfinite(hint)) {
    const double delta = 1e-6 * std::max(1.0, std::abs(hint));
    BigRational lo = to_rational(hint - delta);
    BigRational hi = to_rational(hint + delta);
    if (ok(lo, hi)) return {lo, hi};
  }
  // Fallback: bisection inside the Cauchy bound, keeping below(lo) == 0 < below(hi).
  BigInt b = detail::cauchy_root_bound(p);
  BigRational lo(-b);
  BigRational hi(b + 1);
  while (below(hi) > 1) {
    BigRational mid = (lo + hi) / 2;
    if (below(mid) > 0) {
      hi = mid;
    } else if (p.sign_at(mid) == 0) {
      // mid is the smallest root; shrink hi until nothing else lies in [mid, hi).
      lo = mid;
      while (below(hi) > 1) hi = (lo + hi) / 2;
    } else {
      lo = mid;
    }
  }
  return {lo, hi};
}

}  // namespace detail

/// λ_min of a rational symmetric matrix with its multiplicity and an exact
/// rationality verdict. Above options.exact_size_threshold only numeric data is
/// produced (verdict NumericOnly, multiplicity from clustering).
inline MinEigenvalue min_eig_rationality(const RationalMatrix& a, const SpectralOptions& opt = {}) {
  if (a.dim() == 0) throw DomainError("empty matrix has no eigenvalues");
  if (!a.is_symmetric()) throw DomainError("matrix must be symmetric");
  const SymMatrix numeric = SymMatrix::from_rational(a);
  const Spectrum spec = spectrum(numeric, opt.cluster_tolerance);

  MinEigenvalue out;
  out.value = spec.min();
  out.multiplicity = spec.clusters.front().multiplicity;
  if (a.dim() > opt.exact_size_threshold) return out;

  const auto [da, d] = scale_to_integer(a);
  const IntPolynomial p = char_poly(da);
  const auto factors = square_free_decomposition(p);
  const auto chain = sturm_chain(square_free_part(p));
  auto bracket = detail::isolate_smallest_root(chain, out.value * d.convert_to<double>());

  const SquareFreeFactor* owner = nullptr;
  for (const auto& f : factors) {
    if (f.factor.sign_at(bracket.lo) == 0 || count_roots_below(f.factor, bracket.hi) > 0) {
      owner = &f;
      break;
    }
  }
  if (owner == nullptr) throw DomainError("internal error: minimal root not owned by any factor");
  out.multiplicity = owner->multiplicity;
  out.exact = true;

  for (const BigInt& z : integer_roots(owner->factor)) {
    if (BigRational(z) >= bracket.lo && BigRational(z) < bracket.hi) {
      out.verdict = {RationalityVerdict::Kind::Rational, BigRational(z, d)};
      out.value = to_double(out.verdict.value);
      return out;
    }
  }

  // Irrational: shrink the bracket (in λ units) until it contains no integer.
  BigRational lo = bracket.lo / d;
  BigRational hi = bracket.hi / d;
  auto floor_of = [](const BigRational& q) {
    BigInt n = numerator_of(q);
    BigInt m = denominator_of(q);
    BigInt f = n / m;
    if (n < 0 && f * m != n) f -= 1;
    return f;
  };
  while (!(floor_of(lo) == floor_of(hi) && BigRational(floor_of(lo)) != lo)) {
    BigRational mid = (lo + hi) / 2;
    if (count_roots_below(chain, mid * d) == 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const BigRational f(floor_of(lo));
  out.verdict = {RationalityVerdict::Kind::Irrational, BigRational(0)};
  out.separation = std::min<BigRational>(lo - f, f + 1 - hi);
  return out;
}

/// Exact three-way comparison of λ_min(A) against a rational q.
inline std::strong_ordering compare_min_eigenvalue(const RationalMatrix& a, const BigRational& q) {
  const auto [da, d] = scale_to_integer(a);
  const IntPolynomial p = char_poly(da);
  const BigRational scaled = q * d;
  if (count_roots_below(square_free_part(p), scaled) > 0) return std::strong_ordering::less;
  if (p.sign_at(scaled) == 0) return std::strong_ordering::equal;
  return std::strong_ordering::greater;
}

}  // namespace pairsim
