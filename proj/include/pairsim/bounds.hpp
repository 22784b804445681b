#pragma once

// Lower and upper bounds on the number of time steps and on the time overhead
// for simulating a pair-interaction target W̃ ⊗ C (or a general J̃) with a
// natural coupling W ⊗ C under fast local control.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>

#include "pairsim/errors.hpp"
#include "pairsim/exactnum.hpp"
#include "pairsim/graphs.hpp"
#include "pairsim/linalg.hpp"
#include "pairsim/spectral.hpp"

namespace pairsim {

/// The m×m matrix C shared by every pair (J = W ⊗ C), with cached spectral data.
class CouplingType {
 public:
  enum class Preset { ZZ, Identity, Custom };

  /// σ_z ⊗ σ_z coupling between qubits: C = diag(0, 0, 1).
  static CouplingType zz() { return CouplingType(SymMatrix::diagonal({0.0, 0.0, 1.0}), Preset::ZZ); }
  static CouplingType identity(std::size_t m) {
    if (m == 0) throw DomainError("coupling dimension must be positive");
    return CouplingType(SymMatrix::identity(m), Preset::Identity);
  }
  static CouplingType custom(SymMatrix c) {
    if (c.dim() == 0) throw DomainError("coupling dimension must be positive");
    return CouplingType(std::move(c), Preset::Custom);
  }

  std::size_t m() const { return c_.dim(); }
  const SymMatrix& matrix() const { return c_; }
  Preset preset() const { return preset_; }
  double lambda_min() const { return lmin_; }
  double lambda_max() const { return lmax_; }
  std::size_t rank() const { return rank_; }
  bool is_psd(double tol = 1e-9) const { return lmin_ >= -tol * std::max(1.0, c_.frobenius_norm()); }

  std::string name() const {
    switch (preset_) {
      case Preset::ZZ: return "zz";
      case Preset::Identity: return "identity";
      case Preset::Custom: return "custom";
    }
    return "custom";
  }

 private:
  CouplingType(SymMatrix c, Preset p) : c_(std::move(c)), preset_(p) {
    const auto vals = eigenvalues(c_);
    lmin_ = vals.front();
    lmax_ = vals.back();
    rank_ = numeric_rank(c_);
  }

  SymMatrix c_;
  Preset preset_;
  double lmin_ = 0.0;
  double lmax_ = 0.0;
  std::size_t rank_ = 0;
};

inline constexpr double kBoundaryTolerance = 1e-9;

namespace detail {

inline std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

/// Eigenvalues strictly outside [lo, hi]; values within kBoundaryTolerance of an
/// endpoint count as inside.
inline std::size_t count_outside(const SymMatrix& m, double lo, double hi) {
  std::size_t s = 0;
  for (double v : eigenvalues(m))
    if (v < lo - kBoundaryTolerance || v > hi + kBoundaryTolerance) ++s;
  return s;
}

}  // namespace detail

/// Eigenvalue-count bound for an already rescaled target J' = J̃ / (W ⊗ I):
/// ⌈s / r(C)⌉ with s the eigenvalues of J' outside [-μ·λ_max(C), -μ·λ_min(C)].
inline std::size_t thm1_steps_lower_rescaled(const SymMatrix& rescaled_target, const CouplingType& c, double mu) {
  if (!(mu > 0.0)) throw NonPositiveMu();
  if (c.rank() == 0) throw DomainError("coupling type has rank zero");
  const std::size_t s = detail::count_outside(rescaled_target, -mu * c.lambda_max(), -mu * c.lambda_min());
  return detail::ceil_div(s, c.rank());
}

/// Same bound from the unscaled target J̃ (dimension n·m) and a natural weight
/// matrix W with every off-diagonal entry nonzero.
inline std::size_t thm1_steps_lower(const SymMatrix& target, const InteractionGraph& natural, const CouplingType& c,
                                    double mu) {
  if (!(mu > 0.0)) throw NonPositiveMu();
  if (!natural.is_complete()) throw DomainError("natural interaction graph must be complete");
  if (target.dim() != natural.n() * c.m()) throw DimensionMismatch("target dimension must be n*m");
  const SymMatrix divisor = kron(natural.to_sym(), SymMatrix::all_ones(c.m()));
  return thm1_steps_lower_rescaled(entrywise_quotient(target, divisor), c, mu);
}

/// Carathéodory bound n(n-1)/2 · m² + 1.
inline std::uint64_t thm2_steps_upper(std::uint64_t n, std::uint64_t m) {
  if (n < 2 || m < 1) throw DomainError("need n >= 2 and m >= 1");
  return n * (n - 1) / 2 * m * m + 1;
}

/// Number of positive eigenvalues of A; requires C positive semidefinite.
inline std::size_t thm3_case1(const RationalMatrix& a, const CouplingType& c) {
  if (!c.is_psd()) throw NotPositiveSemidefinite();
  const SymMatrix m = SymMatrix::from_rational(a);
  const double cutoff = kBoundaryTolerance * std::max(1.0, m.frobenius_norm());
  std::size_t count = 0;
  for (double v : eigenvalues(m))
    if (v > cutoff) ++count;
  return count;
}

/// n - k with k the multiplicity of λ_min(A) (exact when within the size threshold).
inline std::size_t thm3_case2(const RationalMatrix& a, const SpectralOptions& opt = {}) {
  return a.dim() - min_eig_rationality(a, opt).multiplicity;
}

struct Case3Bound {
  std::size_t lower = 0;
  std::uint64_t upper = 0;
  MinEigenvalue min_eigenvalue;
  std::string rationale;
};

/// Sign-flip (zz) setting: lower = n when λ_min is certified irrational, n - k
/// otherwise; upper = n(n-1)/2 + 1.
inline Case3Bound thm3_case3(const RationalMatrix& a, const SpectralOptions& opt = {}) {
  const std::size_t n = a.dim();
  Case3Bound b;
  b.min_eigenvalue = min_eig_rationality(a, opt);
  b.upper = static_cast<std::uint64_t>(n) * (n - 1) / 2 + 1;
  const auto& mev = b.min_eigenvalue;
  std::ostringstream why;
  if (mev.verdict.kind == RationalityVerdict::Kind::Irrational) {
    b.lower = n;
    why << "minimal eigenvalue " << mev.value << " is irrational, so the optimal overhead exceeds -lambda_min and "
        << "A + tau*1 has full rank n = " << n;
  } else {
    b.lower = n - mev.multiplicity;
    why << "minimal eigenvalue " << mev.value << " ("
        << (mev.verdict.kind == RationalityVerdict::Kind::Rational ? "rational " + format_rational(mev.verdict.value)
                                                                   : std::string("not certified"))
        << ") has multiplicity k = " << mev.multiplicity << ", bound n - k";
  }
  b.rationale = why.str();
  return b;
}

struct OverheadLowerBound {
  double value = 0.0;
  bool strict = false;
  std::optional<BigRational> exact;  // when λ_min is rational
};

/// τ ≥ -λ_min(A), strict when λ_min is irrational. Throws ZeroTarget for A = 0.
inline OverheadLowerBound overhead_lower(const RationalMatrix& a, const SpectralOptions& opt = {}) {
  if (a.is_zero()) throw ZeroTarget();
  const MinEigenvalue mev = min_eig_rationality(a, opt);
  OverheadLowerBound b;
  b.value = -mev.value;
  b.strict = mev.verdict.kind == RationalityVerdict::Kind::Irrational;
  if (mev.verdict.kind == RationalityVerdict::Kind::Rational) b.exact = -mev.verdict.value;
  return b;
}

/// Matching classes used for the coloring overhead bound: the four-class
/// partition when g is an l×l lattice, the two-class partition when g is an
/// even cycle, greedy first-fit otherwise. Recognition is structural so the
/// result only depends on the weights.
inline EdgeClasses coloring_classes(const InteractionGraph& g) {
  const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(g.n()))));
  if (side >= 2 && side * side == g.n() && g == square_lattice(side)) return lattice_edge_classes(side);
  if (g.n() >= 4 && g.n() % 2 == 0 && g == cycle(g.n())) return cycle_edge_classes(g.n());
  return greedy_edge_coloring(g);
}

/// Overhead upper bound for a 0/1 target: the number of matching classes.
inline std::size_t overhead_upper_coloring(const InteractionGraph& g) {
  if (!g.is_zero_one()) throw DomainError("coloring bound needs a 0/1 target");
  return coloring_classes(g).size();
}

struct StepBound {
  std::uint64_t value = 0;
  std::string provenance;
};

struct Thm3Bound {
  int case_number = 0;
  std::size_t value = 0;
  std::string rationale;
};

/// Every bound that applies to one simulation problem.
struct BoundsReport {
  std::size_t n = 0;
  std::size_t m = 0;
  std::string coupling;
  std::optional<double> mu;
  std::optional<MinEigenvalue> min_eigenvalue;
  std::optional<StepBound> steps_lower_thm1;
  std::optional<Thm3Bound> steps_lower_thm3;
  StepBound steps_upper_thm2;
  std::optional<StepBound> steps_upper_case3;
  std::optional<OverheadLowerBound> overhead_lower;
  std::optional<StepBound> overhead_upper_coloring;

  std::size_t steps_lower() const {
    std::size_t v = 0;
    if (steps_lower_thm1) v = std::max<std::size_t>(v, steps_lower_thm1->value);
    if (steps_lower_thm3) v = std::max(v, steps_lower_thm3->value);
    return v;
  }
};

/// Builds the full report for simulating target ⊗ C with natural ⊗ C. The
/// natural graph must be complete. When mu is not given the eigenvalue-count
/// bound is evaluated at the overhead lower bound -λ_min(W̃/W), i.e. for
/// schemes that attain the minimal overhead.
inline BoundsReport build_bounds_report(const InteractionGraph& target, const InteractionGraph& natural,
                                        const CouplingType& c, std::optional<double> mu = std::nullopt,
                                        const SpectralOptions& opt = {}) {
  if (target.n() < 2) throw DomainError("need at least two nodes");
  if (!natural.is_complete()) throw DomainError("natural interaction graph must be complete");
  const RationalMatrix a = quotient_target(target, natural);
  const std::size_t n = a.dim();

  BoundsReport r;
  r.n = n;
  r.m = c.m();
  r.coupling = c.name();
  r.min_eigenvalue = min_eig_rationality(a, opt);

  if (!a.is_zero()) r.overhead_lower = overhead_lower(a, opt);

  r.mu = mu;
  if (!r.mu && r.overhead_lower) r.mu = r.overhead_lower->value;
  if (r.mu) {
    if (!(*r.mu > 0.0)) throw NonPositiveMu();
    // J̃ / (W ⊗ I) equals (W̃ / W) ⊗ C; build it from the exact quotient.
    const SymMatrix rescaled = kron(SymMatrix::from_rational(a), c.matrix());
    std::ostringstream p;
    p << "eigenvalues of (W~/W) (x) C outside [" << 0.0 - *r.mu * c.lambda_max() << ", " << 0.0 - *r.mu * c.lambda_min()
      << "] divided by rank(C) = " << c.rank() << ", for schemes with time overhead mu = " << *r.mu;
    r.steps_lower_thm1 = StepBound{thm1_steps_lower_rescaled(rescaled, c, *r.mu), p.str()};
  }

  r.steps_upper_thm2 = {thm2_steps_upper(n, c.m()),
                        "Caratheodory: dimension n(n-1)/2 * m^2 of the convex set of conjugated couplings, plus one"};

  switch (c.preset()) {
    case CouplingType::Preset::ZZ: {
      const Case3Bound b = thm3_case3(a, opt);
      r.steps_lower_thm3 = Thm3Bound{3, b.lower, "zz coupling with sign-flip control: " + b.rationale};
      r.steps_upper_case3 =
          StepBound{b.upper, "zz coupling with sign-flip control: Caratheodory over Seidel matrices, n(n-1)/2 + 1"};
      const InteractionGraph g = InteractionGraph::from_matrix(a);
      if (g.is_zero_one() && !a.is_zero()) {
        r.overhead_upper_coloring = StepBound{coloring_classes(g).size(),
                                              "number of matching classes in an edge coloring of the target graph"};
      }
      break;
    }
    case CouplingType::Preset::Identity: {
      std::ostringstream why;
      why << "identity coupling: n - k with k = " << r.min_eigenvalue->multiplicity
          << " the multiplicity of the minimal eigenvalue";
      r.steps_lower_thm3 = Thm3Bound{2, thm3_case2(a, opt), why.str()};
      break;
    }
    case CouplingType::Preset::Custom:
      if (c.is_psd()) {
        r.steps_lower_thm3 =
            Thm3Bound{1, thm3_case1(a, c), "positive semidefinite coupling: number of positive eigenvalues of W~/W"};
      }
      break;
  }
  return r;
}

}  // namespace pairsim
