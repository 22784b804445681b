#pragma once

// Interaction graphs (weight matrices W and targets W̃), the graph families
// used by the planner, edge colorings, clique partitions and Seidel matrices.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pairsim/errors.hpp"
#include "pairsim/exactnum.hpp"
#include "pairsim/linalg.hpp"

namespace pairsim {

struct Edge {
  std::size_t k;
  std::size_t l;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Symmetric rational weights over n nodes with zero diagonal. A 0/1-weighted
/// graph is an adjacency matrix. Graphs built by the family constructors carry
/// a family tag and integer parameters so presets can recognise them.
class InteractionGraph {
 public:
  InteractionGraph() = default;
  explicit InteractionGraph(std::size_t n) : w_(n) {}

  /// Takes a symmetric zero-diagonal matrix; throws DomainError otherwise.
  static InteractionGraph from_matrix(RationalMatrix w) {
    if (!w.is_symmetric()) throw DomainError("weight matrix must be symmetric");
    for (std::size_t i = 0; i < w.dim(); ++i)
      if (w(i, i) != 0) throw DomainError("weight matrix must have a zero diagonal");
    InteractionGraph g;
    g.w_ = std::move(w);
    return g;
  }

  std::size_t n() const { return w_.dim(); }
  const BigRational& weight(std::size_t k, std::size_t l) const { return w_(k, l); }
  void set_weight(std::size_t k, std::size_t l, const BigRational& w) {
    if (k >= n() || l >= n()) throw DomainError("node index out of range");
    if (k == l) throw DomainError("self-interaction weights are not allowed");
    w_(k, l) = w;
    w_(l, k) = w;
  }
  void add_edge(std::size_t k, std::size_t l) { set_weight(k, l, 1); }

  const RationalMatrix& matrix() const { return w_; }
  SymMatrix to_sym() const { return SymMatrix::from_rational(w_); }

  /// Nonzero pairs with k < l in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (std::size_t k = 0; k < n(); ++k)
      for (std::size_t l = k + 1; l < n(); ++l)
        if (w_(k, l) != 0) out.push_back({k, l});
    return out;
  }
  std::size_t edge_count() const { return edges().size(); }

  std::size_t degree(std::size_t v) const {
    std::size_t d = 0;
    for (std::size_t u = 0; u < n(); ++u)
      if (w_(v, u) != 0) ++d;
    return d;
  }

  bool is_zero_one() const {
    for (std::size_t k = 0; k < n(); ++k)
      for (std::size_t l = 0; l < n(); ++l)
        if (w_(k, l) != 0 && w_(k, l) != 1) return false;
    return true;
  }

  /// All off-diagonal entries nonzero.
  bool is_complete() const { return edge_count() == n() * (n() - 1) / 2; }

  bool is_connected() const {
    if (n() == 0) return true;
    std::vector<bool> seen(n(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t u = 0; u < n(); ++u)
        if (!seen[u] && w_(v, u) != 0) {
          seen[u] = true;
          stack.push_back(u);
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  }

  const std::string& family() const { return family_; }
  const std::map<std::string, long long>& params() const { return params_; }
  void set_family(std::string name, std::map<std::string, long long> params) {
    family_ = std::move(name);
    params_ = std::move(params);
  }

  /// Weights only; family tags are metadata.
  friend bool operator==(const InteractionGraph& a, const InteractionGraph& b) { return a.w_ == b.w_; }

 private:
  RationalMatrix w_;
  std::string family_;
  std::map<std::string, long long> params_;
};

// Families. Nodes are 0-based; the lattice is indexed row-major.

inline InteractionGraph complete(std::size_t n) {
  if (n < 2) throw DomainError("complete graph needs n >= 2");
  InteractionGraph g(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l) g.add_edge(k, l);
  g.set_family("complete", {{"n", static_cast<long long>(n)}});
  return g;
}

inline InteractionGraph cycle(std::size_t n) {
  if (n < 3) throw DomainError("cycle needs n >= 3");
  InteractionGraph g(n);
  for (std::size_t k = 0; k < n; ++k) g.add_edge(k, (k + 1) % n);
  g.set_family("cycle", {{"n", static_cast<long long>(n)}});
  return g;
}

inline InteractionGraph path(std::size_t n) {
  if (n < 2) throw DomainError("path needs n >= 2");
  InteractionGraph g(n);
  for (std::size_t k = 0; k + 1 < n; ++k) g.add_edge(k, k + 1);
  g.set_family("path", {{"n", static_cast<long long>(n)}});
  return g;
}

inline InteractionGraph square_lattice(std::size_t l) {
  if (l < 2) throw DomainError("square lattice needs l >= 2");
  InteractionGraph g(l * l);
  for (std::size_t r = 0; r < l; ++r)
    for (std::size_t c = 0; c < l; ++c) {
      if (c + 1 < l) g.add_edge(r * l + c, r * l + c + 1);
      if (r + 1 < l) g.add_edge(r * l + c, (r + 1) * l + c);
    }
  g.set_family("lattice", {{"l", static_cast<long long>(l)}});
  return g;
}

/// The six-node graph-code graph: 5-cycle on 0..4 plus hub 5 joined to all.
inline InteractionGraph graph_code_wheel() {
  InteractionGraph g(6);
  for (std::size_t k = 0; k < 5; ++k) {
    g.add_edge(k, (k + 1) % 5);
    g.add_edge(k, 5);
  }
  g.set_family("wheel", {});
  return g;
}

/// Entrywise W̃ / W with 0/0 := 0. Throws ZeroMismatch where W is zero and W̃ is not.
inline RationalMatrix quotient_target(const InteractionGraph& target, const InteractionGraph& natural) {
  if (target.n() != natural.n()) throw DimensionMismatch("target and natural graphs differ in size");
  RationalMatrix a(target.n());
  for (std::size_t k = 0; k < target.n(); ++k)
    for (std::size_t l = 0; l < target.n(); ++l) {
      if (k == l) continue;
      if (natural.weight(k, l) == 0) {
        if (target.weight(k, l) != 0) throw ZeroMismatch(k, l);
        continue;
      }
      a(k, l) = target.weight(k, l) / natural.weight(k, l);
    }
  return a;
}

using EdgeClasses = std::vector<std::vector<Edge>>;

/// First-fit coloring over edges ordered by decreasing max endpoint degree
/// (ties keep lexicographic order). Every class is a matching.
inline EdgeClasses greedy_edge_coloring(const InteractionGraph& g) {
  auto edges = g.edges();
  std::vector<std::size_t> deg(g.n());
  for (std::size_t v = 0; v < g.n(); ++v) deg[v] = g.degree(v);
  std::stable_sort(edges.begin(), edges.end(), [&](const Edge& a, const Edge& b) {
    return std::max(deg[a.k], deg[a.l]) > std::max(deg[b.k], deg[b.l]);
  });
  EdgeClasses classes;
  std::vector<std::vector<bool>> used;  // used[c][v]: v already matched in class c
  for (const Edge& e : edges) {
    std::size_t c = 0;
    while (c < classes.size() && (used[c][e.k] || used[c][e.l])) ++c;
    if (c == classes.size()) {
      classes.emplace_back();
      used.emplace_back(g.n(), false);
    }
    classes[c].push_back(e);
    used[c][e.k] = used[c][e.l] = true;
  }
  return classes;
}

/// The two perfect matchings of an even cycle: {0,1},{2,3},... and {1,2},...,{n-1,0}.
inline EdgeClasses cycle_edge_classes(std::size_t n) {
  if (n < 4 || n % 2 != 0) throw DomainError("cycle edge classes need an even n >= 4");
  EdgeClasses classes(2);
  for (std::size_t k = 0; k < n; k += 2) classes[0].push_back({k, k + 1});
  for (std::size_t k = 1; k < n; k += 2) classes[1].push_back({std::min(k, (k + 1) % n), std::max(k, (k + 1) % n)});
  return classes;
}

/// Four matchings of the l×l lattice: horizontal edges starting in even columns,
/// in odd columns, then vertical edges starting in even rows, in odd rows.
inline EdgeClasses lattice_edge_classes(std::size_t l) {
  if (l < 2) throw DomainError("lattice edge classes need l >= 2");
  EdgeClasses classes(4);
  for (std::size_t r = 0; r < l; ++r)
    for (std::size_t c = 0; c + 1 < l; ++c) classes[c % 2].push_back({r * l + c, r * l + c + 1});
  for (std::size_t r = 0; r + 1 < l; ++r)
    for (std::size_t c = 0; c < l; ++c) classes[2 + r % 2].push_back({r * l + c, (r + 1) * l + c});
  std::erase_if(classes, [](const auto& cls) { return cls.empty(); });
  return classes;
}

/// Assignment of every node to exactly one clique; clique indices are dense 0..count-1.
class CliquePartition {
 public:
  CliquePartition() = default;

  /// Cliques must cover 0..n-1 exactly once.
  static CliquePartition from_cliques(std::size_t n, const std::vector<std::vector<std::size_t>>& cliques) {
    CliquePartition p;
    p.assignment_.assign(n, kUnassigned);
    std::size_t idx = 0;
    for (const auto& clique : cliques) {
      if (clique.empty()) continue;
      for (std::size_t v : clique) {
        if (v >= n) throw DomainError("clique member out of range");
        if (p.assignment_[v] != kUnassigned) throw DomainError("node assigned to two cliques");
        p.assignment_[v] = idx;
      }
      ++idx;
    }
    if (std::find(p.assignment_.begin(), p.assignment_.end(), kUnassigned) != p.assignment_.end())
      throw DomainError("clique partition leaves a node unassigned");
    p.count_ = idx;
    return p;
  }

  /// Each matching edge becomes a 2-clique; unmatched nodes become singletons.
  static CliquePartition from_matching(std::size_t n, const std::vector<Edge>& matching) {
    std::vector<std::vector<std::size_t>> cliques;
    std::vector<bool> matched(n, false);
    for (const Edge& e : matching) {
      cliques.push_back({e.k, e.l});
      matched[e.k] = matched[e.l] = true;
    }
    for (std::size_t v = 0; v < n; ++v)
      if (!matched[v]) cliques.push_back({v});
    return from_cliques(n, cliques);
  }

  std::size_t n() const { return assignment_.size(); }
  std::size_t clique_count() const { return count_; }
  std::size_t clique_of(std::size_t v) const { return assignment_[v]; }
  bool same_clique(std::size_t k, std::size_t l) const { return assignment_[k] == assignment_[l]; }

  std::vector<std::vector<std::size_t>> cliques() const {
    std::vector<std::vector<std::size_t>> out(count_);
    for (std::size_t v = 0; v < n(); ++v) out[assignment_[v]].push_back(v);
    return out;
  }

 private:
  static constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
  std::vector<std::size_t> assignment_;
  std::size_t count_ = 0;
};

/// True iff every edge of g lies inside a clique of exactly one partition and no
/// non-edge lies inside any clique.
inline bool validate_clique_cover(const std::vector<CliquePartition>& partitions, const InteractionGraph& g) {
  for (const auto& p : partitions)
    if (p.n() != g.n()) return false;
  for (std::size_t k = 0; k < g.n(); ++k)
    for (std::size_t l = k + 1; l < g.n(); ++l) {
      std::size_t covered = 0;
      for (const auto& p : partitions)
        if (p.same_clique(k, l)) ++covered;
      if (covered != (g.weight(k, l) != 0 ? 1u : 0u)) return false;
    }
  return true;
}

/// Sign vector x ∈ {+1, -1}^n selecting which spins are conjugated in a step.
class SignPattern {
 public:
  SignPattern() = default;
  explicit SignPattern(std::vector<std::int8_t> signs) : x_(std::move(signs)) {
    for (auto s : x_)
      if (s != 1 && s != -1) throw DomainError("sign pattern entries must be +1 or -1");
  }
  static SignPattern all_plus(std::size_t n) { return SignPattern(std::vector<std::int8_t>(n, 1)); }

  std::size_t size() const { return x_.size(); }
  int operator[](std::size_t i) const { return x_[i]; }
  const std::vector<std::int8_t>& signs() const { return x_; }

  SignPattern negated() const {
    auto y = x_;
    for (auto& s : y) s = static_cast<std::int8_t>(-s);
    return SignPattern(std::move(y));
  }

  /// Representative with x[0] = +1; S(x) = S(-x).
  SignPattern canonical() const { return (!x_.empty() && x_[0] < 0) ? negated() : *this; }

  friend bool operator==(const SignPattern&, const SignPattern&) = default;
  friend auto operator<=>(const SignPattern&, const SignPattern&) = default;

 private:
  std::vector<std::int8_t> x_;
};

/// Seidel matrix S(x): x_k·x_l off the diagonal, zero on it.
inline SymMatrix seidel_matrix(const SignPattern& x) {
  SymMatrix s(x.size());
  for (std::size_t k = 0; k < x.size(); ++k)
    for (std::size_t l = k + 1; l < x.size(); ++l) s.set(k, l, static_cast<double>(x[k] * x[l]));
  return s;
}

inline RationalMatrix seidel_matrix_exact(const SignPattern& x) {
  RationalMatrix s(x.size());
  for (std::size_t k = 0; k < x.size(); ++k)
    for (std::size_t l = 0; l < x.size(); ++l)
      if (k != l) s(k, l) = x[k] * x[l];
  return s;
}

}  // namespace pairsim
