#pragma once

// JSON documents exchanged by the command-line tool. Rationals travel as
// strings "p/q" (or "p") so that exact verification survives a round trip.
//
//   graph:  {"n": 6, "edges": [[0, 1, "1"], ...], "family": "cycle", "params": {"n": 6}}
//   scheme: {"n": 4, "steps": [{"t": "1/2", "signs": [1, 1, -1, -1]}, ...]}

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "pairsim/bounds.hpp"
#include "pairsim/errors.hpp"
#include "pairsim/graphs.hpp"
#include "pairsim/polytope.hpp"
#include "pairsim/schemes.hpp"
#include "pairsim/spectral.hpp"

namespace pairsim::io {

using nlohmann::json;

/// Any malformed document. Reported with exit code 2.
class ParseError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::size_t require_index(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

inline BigRational require_rational(const json& j, const char* what) {
  if (j.is_number_integer()) return BigRational(j.get<long long>());
  if (!j.is_string()) throw ParseError(std::string(what) + " must be a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

}  // namespace detail

/// Regenerates a tagged family; used to reject documents whose tag lies.
inline InteractionGraph family_graph(const std::string& family, const std::map<std::string, long long>& params) {
  auto param = [&](const char* key) {
    auto it = params.find(key);
    if (it == params.end() || it->second < 0) throw ParseError(std::string("family parameter '") + key + "' missing");
    return static_cast<std::size_t>(it->second);
  };
  if (family == "cycle") return cycle(param("n"));
  if (family == "path") return path(param("n"));
  if (family == "complete") return complete(param("n"));
  if (family == "lattice") return square_lattice(param("l"));
  if (family == "wheel") return graph_code_wheel();
  throw ParseError("unknown graph family '" + family + "'");
}

inline json graph_to_json(const InteractionGraph& g) {
  json j;
  j["n"] = g.n();
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.k, e.l, format_rational(g.weight(e.k, e.l))});
  j["edges"] = std::move(edges);
  if (!g.family().empty()) {
    j["family"] = g.family();
    j["params"] = g.params();
  }
  return j;
}

inline InteractionGraph graph_from_json(const json& j) {
  const std::size_t n = detail::require_index(detail::require(j, "n"), "n");
  InteractionGraph g(n);
  const json& edges = detail::require(j, "edges");
  if (!edges.is_array()) throw ParseError("edges must be an array");
  for (const json& e : edges) {
    if (!e.is_array() || e.size() != 3) throw ParseError("each edge must be [k, l, \"weight\"]");
    const std::size_t k = detail::require_index(e[0], "edge endpoint");
    const std::size_t l = detail::require_index(e[1], "edge endpoint");
    if (!(k < l && l < n)) throw ParseError("edge endpoints must satisfy 0 <= k < l < n");
    if (g.weight(k, l) != 0) throw ParseError("duplicate edge");
    const BigRational w = detail::require_rational(e[2], "edge weight");
    if (w == 0) throw ParseError("edge weights must be nonzero");
    g.set_weight(k, l, w);
  }
  if (j.contains("family")) {
    if (!j.at("family").is_string()) throw ParseError("family must be a string");
    std::map<std::string, long long> params;
    if (j.contains("params")) {
      if (!j.at("params").is_object()) throw ParseError("params must be an object");
      for (const auto& [key, value] : j.at("params").items()) {
        if (!value.is_number_integer()) throw ParseError("family parameters must be integers");
        params[key] = value.get<long long>();
      }
    }
    const std::string family = j.at("family").get<std::string>();
    InteractionGraph expected;
    try {
      expected = family_graph(family, params);
    } catch (const DomainError& e) {
      throw ParseError(e.what());
    }
    if (!(expected == g)) throw ParseError("graph does not match its family tag '" + family + "'");
    g.set_family(family, params);
  }
  return g;
}

inline json scheme_to_json(const Scheme& s) {
  json j;
  j["n"] = s.n();
  json steps = json::array();
  for (const auto& st : s.steps()) {
    json signs = json::array();
    for (auto v : st.x.signs()) signs.push_back(static_cast<int>(v));
    steps.push_back({{"t", format_rational(st.t)}, {"signs", std::move(signs)}});
  }
  j["steps"] = std::move(steps);
  return j;
}

inline Scheme scheme_from_json(const json& j) {
  const std::size_t n = detail::require_index(detail::require(j, "n"), "n");
  Scheme s(n);
  const json& steps = detail::require(j, "steps");
  if (!steps.is_array()) throw ParseError("steps must be an array");
  for (const json& st : steps) {
    const BigRational t = detail::require_rational(detail::require(st, "t"), "step duration");
    if (t <= 0) throw ParseError("step durations must be positive");
    const json& signs = detail::require(st, "signs");
    if (!signs.is_array() || signs.size() != n) throw ParseError("signs must be a list of n entries");
    std::vector<std::int8_t> x;
    for (const json& v : signs) {
      if (!v.is_number_integer() || (v.get<int>() != 1 && v.get<int>() != -1))
        throw ParseError("signs must be +1 or -1");
      x.push_back(static_cast<std::int8_t>(v.get<int>()));
    }
    s.add_step(t, SignPattern(std::move(x)));
  }
  return s;
}

/// Coupling file: {"matrix": [[...], ...]} with a square symmetric real matrix.
inline CouplingType coupling_from_json(const json& j) {
  const json& rows = detail::require(j, "matrix");
  if (!rows.is_array() || rows.empty()) throw ParseError("matrix must be a non-empty array of rows");
  const std::size_t m = rows.size();
  std::vector<double> entries;
  for (const json& row : rows) {
    if (!row.is_array() || row.size() != m) throw ParseError("coupling matrix must be square");
    for (const json& v : row) {
      if (!v.is_number()) throw ParseError("coupling entries must be numbers");
      entries.push_back(v.get<double>());
    }
  }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (entries[a * m + b] != entries[b * m + a]) throw ParseError("coupling matrix must be symmetric");
  return CouplingType::custom(SymMatrix(m, std::move(entries)));
}

inline json min_eigenvalue_to_json(const MinEigenvalue& mev) {
  json j;
  j["value"] = mev.value;
  j["multiplicity"] = mev.multiplicity;
  j["verdict"] = to_string(mev.verdict.kind);
  j["exact_multiplicity"] = mev.exact;
  if (mev.verdict.kind == RationalityVerdict::Kind::Rational) j["exact_value"] = format_rational(mev.verdict.value);
  if (mev.verdict.kind == RationalityVerdict::Kind::Irrational) j["integer_separation"] = format_rational(mev.separation);
  return j;
}

inline json spectrum_to_json(const Spectrum& s, const MinEigenvalue& mev) {
  json j;
  j["n"] = s.n;
  json clusters = json::array();
  for (const auto& c : s.clusters) clusters.push_back({{"value", c.value}, {"multiplicity", c.multiplicity}});
  j["clusters"] = std::move(clusters);
  j["min"] = min_eigenvalue_to_json(mev);
  return j;
}

inline json report_to_json(const BoundsReport& r) {
  auto step = [](const StepBound& b) { return json{{"value", b.value}, {"provenance", b.provenance}}; };
  json j;
  j["n"] = r.n;
  j["m"] = r.m;
  j["coupling"] = r.coupling;
  j["mu"] = r.mu ? json(*r.mu) : json(nullptr);
  j["steps_lower"] = r.steps_lower();
  if (r.min_eigenvalue) j["min_eigenvalue"] = min_eigenvalue_to_json(*r.min_eigenvalue);
  j["steps_lower_thm1"] = r.steps_lower_thm1 ? step(*r.steps_lower_thm1) : json(nullptr);
  if (r.steps_lower_thm3) {
    j["steps_lower_thm3"] = {{"value", r.steps_lower_thm3->value},
                             {"case", r.steps_lower_thm3->case_number},
                             {"rationale", r.steps_lower_thm3->rationale}};
  } else {
    j["steps_lower_thm3"] = nullptr;
  }
  j["steps_upper_thm2"] = step(r.steps_upper_thm2);
  j["steps_upper_case3"] = r.steps_upper_case3 ? step(*r.steps_upper_case3) : json(nullptr);
  if (r.overhead_lower) {
    json o{{"value", r.overhead_lower->value}, {"strict", r.overhead_lower->strict}};
    if (r.overhead_lower->exact) o["exact"] = format_rational(*r.overhead_lower->exact);
    j["overhead_lower"] = std::move(o);
  } else {
    j["overhead_lower"] = nullptr;
  }
  j["overhead_upper_coloring"] = r.overhead_upper_coloring ? step(*r.overhead_upper_coloring) : json(nullptr);
  return j;
}

inline json verify_to_json(const VerifyReport& r) {
  json defects = json::array();
  for (const auto& d : r.defects)
    defects.push_back({{"k", d.k}, {"l", d.l}, {"realized", format_rational(d.realized)}, {"target", format_rational(d.target)}});
  return {{"ok", r.ok}, {"overhead", format_rational(r.overhead)}, {"steps", r.steps}, {"defects", std::move(defects)}};
}

inline json signs_to_json(const SignPattern& x) {
  json signs = json::array();
  for (auto v : x.signs()) signs.push_back(static_cast<int>(v));
  return signs;
}

inline json lp_to_json(const ExactLPSolution& s) {
  json support = json::array();
  for (const auto& e : s.support) support.push_back({{"signs", signs_to_json(e.pattern)}, {"t", format_rational(e.t)}});
  return {{"status", s.status == LPStatus::Optimal ? "optimal" : "infeasible"},
          {"mode", "exact"},
          {"tau", format_rational(s.tau)},
          {"tau_value", to_double(s.tau)},
          {"support", std::move(support)}};
}

inline json lp_to_json(const FloatLPSolution& s) {
  json support = json::array();
  for (const auto& e : s.support) support.push_back({{"signs", signs_to_json(e.pattern)}, {"t", e.t}});
  return {{"status", s.status == LPStatus::Optimal ? "optimal" : "infeasible"},
          {"mode", "float"},
          {"tau_value", s.tau},
          {"support", std::move(support)}};
}

}  // namespace pairsim::io
