#pragma once

// Sign-flip simulation schemes for zz couplings: Hadamard cluster decoupling,
// composition of subroutines, the cycle / lattice / wheel constructions, a
// matching-based synthesizer, and exact verification. GeneralScheme covers
// arbitrary orthogonal control blocks with a floating-point verifier.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "pairsim/errors.hpp"
#include "pairsim/exactnum.hpp"
#include "pairsim/graphs.hpp"
#include "pairsim/linalg.hpp"

namespace pairsim {

struct SchemeStep {
  BigRational t;  // waiting time, > 0
  SignPattern x;
};

/// Ordered time steps (t_j, x_j). Realizes Σ_j t_j S(x_j).
class Scheme {
 public:
  Scheme() = default;
  explicit Scheme(std::size_t n) : n_(n) {}

  void add_step(BigRational t, SignPattern x) {
    if (t <= 0) throw DomainError("step durations must be positive");
    if (x.size() != n_) throw DimensionMismatch("sign pattern length differs from node count");
    steps_.push_back({std::move(t), std::move(x)});
  }

  std::size_t n() const { return n_; }
  std::size_t step_count() const { return steps_.size(); }
  const std::vector<SchemeStep>& steps() const { return steps_; }

  BigRational overhead() const {
    BigRational tau = 0;
    for (const auto& s : steps_) tau += s.t;
    return tau;
  }

  friend bool operator==(const Scheme& a, const Scheme& b) {
    if (a.n_ != b.n_ || a.steps_.size() != b.steps_.size()) return false;
    for (std::size_t i = 0; i < a.steps_.size(); ++i)
      if (a.steps_[i].t != b.steps_[i].t || !(a.steps_[i].x == b.steps_[i].x)) return false;
    return true;
  }

 private:
  std::size_t n_ = 0;
  std::vector<SchemeStep> steps_;
};

using HadamardMatrix = std::vector<std::vector<int>>;

/// Sylvester construction H_{2D} = [[H, H], [H, -H]]; H·Hᵀ = D·I.
inline HadamardMatrix sylvester_hadamard(std::size_t d) {
  if (d == 0 || !std::has_single_bit(d)) throw NotPowerOfTwo(d);
  HadamardMatrix h{{1}};
  while (h.size() < d) {
    const std::size_t s = h.size();
    HadamardMatrix next(2 * s, std::vector<int>(2 * s));
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) {
        next[i][j] = h[i][j];
        next[i][j + s] = h[i][j];
        next[i + s][j] = h[i][j];
        next[i + s][j + s] = -h[i][j];
      }
    h = std::move(next);
  }
  return h;
}

/// Keeps within-clique interactions at `weight` and cancels every cross-clique
/// pair. Uses D = bit_ceil(#cliques) steps of length weight/D; node v takes
/// sign orientation[v]·H[clique(v)][j] in step j, so a within-clique pair
/// realizes weight·orientation[k]·orientation[l].
inline Scheme cluster_decoupling_subroutine(const CliquePartition& p, const BigRational& weight,
                                            const std::vector<int>& orientation = {}) {
  if (weight <= 0) throw DomainError("subroutine weight must be positive");
  if (!orientation.empty() && orientation.size() != p.n()) throw DimensionMismatch("orientation length");
  Scheme s(p.n());
  if (p.n() == 0) return s;
  const std::size_t d = std::bit_ceil(p.clique_count());
  const HadamardMatrix h = sylvester_hadamard(d);
  const BigRational t = weight / d;
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<std::int8_t> x(p.n());
    for (std::size_t v = 0; v < p.n(); ++v) {
      const int o = orientation.empty() ? 1 : orientation[v];
      x[v] = static_cast<std::int8_t>(o * h[p.clique_of(v)][j]);
    }
    s.add_step(t, SignPattern(std::move(x)));
  }
  return s;
}

/// Concatenation; the realized target is the sum of the parts.
inline Scheme compose(const std::vector<Scheme>& parts) {
  if (parts.empty()) return Scheme();
  Scheme out(parts.front().n());
  for (const auto& part : parts) {
    if (part.n() != out.n()) throw DimensionMismatch("composed schemes must share the node count");
    for (const auto& st : part.steps()) out.add_step(st.t, st.x);
  }
  return out;
}

/// Σ_j t_j x_j[k] x_j[l] off the diagonal, exact.
inline RationalMatrix realized_target(const Scheme& s) {
  RationalMatrix a(s.n());
  for (const auto& st : s.steps())
    for (std::size_t k = 0; k < s.n(); ++k)
      for (std::size_t l = k + 1; l < s.n(); ++l) {
        if (st.x[k] == st.x[l]) {
          a(k, l) += st.t;
        } else {
          a(k, l) -= st.t;
        }
      }
  for (std::size_t k = 0; k < s.n(); ++k)
    for (std::size_t l = k + 1; l < s.n(); ++l) a(l, k) = a(k, l);
  return a;
}

struct Defect {
  std::size_t k;
  std::size_t l;
  BigRational realized;
  BigRational target;
};

struct VerifyReport {
  bool ok = false;
  BigRational overhead;
  std::size_t steps = 0;
  std::vector<Defect> defects;
};

/// Exact check of Σ t_j S(x_j) = A over the rationals.
inline VerifyReport verify(const Scheme& s, const RationalMatrix& target) {
  if (s.n() != target.dim()) throw DimensionMismatch("scheme and target differ in size");
  VerifyReport r;
  r.overhead = s.overhead();
  r.steps = s.step_count();
  const RationalMatrix got = realized_target(s);
  for (std::size_t k = 0; k < s.n(); ++k)
    for (std::size_t l = k + 1; l < s.n(); ++l)
      if (got(k, l) != target(k, l)) r.defects.push_back({k, l, got(k, l), target(k, l)});
  r.ok = r.defects.empty();
  return r;
}

inline std::vector<CliquePartition> cycle_partitions(std::size_t n) {
  std::vector<CliquePartition> out;
  for (const auto& cls : cycle_edge_classes(n)) out.push_back(CliquePartition::from_matching(n, cls));
  return out;
}

inline std::vector<CliquePartition> lattice_partitions(std::size_t l) {
  std::vector<CliquePartition> out;
  for (const auto& cls : lattice_edge_classes(l)) out.push_back(CliquePartition::from_matching(l * l, cls));
  return out;
}

/// The three wheel subroutines, shifted to 0-based nodes (figure labels 1..6
/// become 0..5; the hub is node 5).
inline std::vector<CliquePartition> wheel_partitions() {
  return {
      CliquePartition::from_cliques(6, {{0, 1, 5}, {3, 4}, {2}}),
      CliquePartition::from_cliques(6, {{2, 3, 5}, {0, 4}, {1}}),
      CliquePartition::from_cliques(6, {{0}, {3}, {1, 2}, {4, 5}}),
  };
}

inline Scheme scheme_from_partitions(const std::vector<CliquePartition>& partitions, const BigRational& weight = 1) {
  std::vector<Scheme> parts;
  for (const auto& p : partitions) parts.push_back(cluster_decoupling_subroutine(p, weight));
  return compose(parts);
}

/// Even cycle: two subroutines of n/2 disjoint pairs each.
inline Scheme preset_cycle(std::size_t n) {
  if (n < 4 || n % 2 != 0) throw DomainError("cycle preset needs an even n >= 4");
  return scheme_from_partitions(cycle_partitions(n));
}

/// l×l lattice with even l: four matching subroutines.
inline Scheme preset_lattice(std::size_t l) {
  if (l < 2 || l % 2 != 0) throw DomainError("lattice preset needs an even l >= 2");
  return scheme_from_partitions(lattice_partitions(l));
}

/// Graph-code wheel: three subroutines of four steps.
inline Scheme preset_wheel() { return scheme_from_partitions(wheel_partitions()); }

/// Greedy edge coloring, one cluster-decoupling subroutine per class. For a 0/1
/// target the overhead equals the number of classes. Rational weights are
/// supported by splitting each class by |weight| and orienting negative pairs.
inline Scheme synthesize_by_matchings(const InteractionGraph& target) {
  const std::size_t n = target.n();
  Scheme out(n);
  for (const auto& cls : greedy_edge_coloring(target)) {
    std::vector<std::pair<BigRational, std::vector<Edge>>> groups;
    for (const Edge& e : cls) {
      const BigRational mag = boost::multiprecision::abs(target.weight(e.k, e.l));
      auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == mag; });
      if (it == groups.end()) {
        groups.push_back({mag, {e}});
      } else {
        it->second.push_back(e);
      }
    }
    for (const auto& [mag, edges] : groups) {
      std::vector<int> orientation(n, 1);
      for (const Edge& e : edges)
        if (target.weight(e.k, e.l) < 0) orientation[e.l] = -1;
      const Scheme sub = cluster_decoupling_subroutine(CliquePartition::from_matching(n, edges), mag, orientation);
      for (const auto& st : sub.steps()) out.add_step(st.t, st.x);
    }
  }
  return out;
}

/// Steps with arbitrary orthogonal m×m blocks: V_j = U_j^(1) ⊕ … ⊕ U_j^(n).
struct GeneralStep {
  double t;
  std::vector<Matrix> blocks;
};

struct GeneralScheme {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<GeneralStep> steps;
};

inline constexpr double kOrthogonalityTolerance = 1e-9;

/// ‖Σ_j t_j V_j J V_jᵀ − J̃‖_F. Throws NonOrthogonalBlock if some block has
/// ‖B·Bᵀ − I‖_F above kOrthogonalityTolerance.
inline double verify_general(const GeneralScheme& s, const SymMatrix& j, const SymMatrix& jt) {
  const std::size_t n = s.n;
  const std::size_t m = s.m;
  if (j.dim() != n * m || jt.dim() != n * m) throw DimensionMismatch("coupling matrices must have size n*m");
  std::vector<double> acc(n * m * n * m, 0.0);
  for (std::size_t step = 0; step < s.steps.size(); ++step) {
    const auto& st = s.steps[step];
    if (st.blocks.size() != n) throw DimensionMismatch("each step needs one block per node");
    for (std::size_t v = 0; v < n; ++v) {
      const Matrix& b = st.blocks[v];
      if (b.rows() != m || b.cols() != m) throw DimensionMismatch("control block has the wrong size");
      Matrix defect = b * b.transpose();
      for (std::size_t i = 0; i < m; ++i) defect(i, i) -= 1.0;
      if (defect.frobenius_norm() > kOrthogonalityTolerance) throw NonOrthogonalBlock(step, v);
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) {
        Matrix blk(m, m);
        for (std::size_t a = 0; a < m; ++a)
          for (std::size_t b = 0; b < m; ++b) blk(a, b) = j(k * m + a, l * m + b);
        const Matrix conj = st.blocks[k] * blk * st.blocks[l].transpose();
        for (std::size_t a = 0; a < m; ++a)
          for (std::size_t b = 0; b < m; ++b) acc[(k * m + a) * n * m + l * m + b] += st.t * conj(a, b);
      }
  }
  double s2 = 0.0;
  for (std::size_t r = 0; r < n * m; ++r)
    for (std::size_t c = 0; c < n * m; ++c) {
      const double d = acc[r * n * m + c] - jt(r, c);
      s2 += d * d;
    }
  return std::sqrt(s2);
}

/// Lifts a sign scheme to 3×3 rotation blocks: +1 ↦ I, −1 ↦ diag(1, −1, −1),
/// the action of conjugating a spin by iσ_x on (x, y, z) components.
inline GeneralScheme lift_to_general(const Scheme& s) {
  GeneralScheme g;
  g.n = s.n();
  g.m = 3;
  const Matrix keep = Matrix::identity(3);
  const Matrix flip = Matrix::diagonal({1.0, -1.0, -1.0});
  for (const auto& st : s.steps()) {
    GeneralStep gs;
    gs.t = to_double(st.t);
    for (std::size_t v = 0; v < s.n(); ++v) gs.blocks.push_back(st.x[v] > 0 ? keep : flip);
    g.steps.push_back(std::move(gs));
  }
  return g;
}

}  // namespace pairsim
