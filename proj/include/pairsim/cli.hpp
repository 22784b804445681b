#pragma once

// Command-line front end. Structured output is JSON on stdout; a one-line
// human summary goes to stderr unless --quiet is given.
//
// Exit codes: 0 success / verified, 1 verification failure, 2 invalid input
// or size limits.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pairsim/bounds.hpp"
#include "pairsim/graphs.hpp"
#include "pairsim/io.hpp"
#include "pairsim/polytope.hpp"
#include "pairsim/schemes.hpp"
#include "pairsim/spectral.hpp"

namespace pairsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitInvalid = 2;

namespace detail {

inline io::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io::ParseError("cannot open '" + path + "'");
  try {
    return io::json::parse(in);
  } catch (const io::json::parse_error& e) {
    throw io::ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void emit(const io::json& j, const std::string& output, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(output);
  if (!f) throw io::ParseError("cannot write '" + output + "'");
  f << text;
}

}  // namespace detail

/// Runs one command. argv[0] is the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Planner and verifier for pair-interaction Hamiltonian simulation under fast local control",
               "pairsim"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("--quiet", quiet, "Suppress the human-readable summary on stderr");

  // graph
  auto* graph_cmd = app.add_subcommand("graph", "Write an interaction graph of a named family");
  std::string family;
  std::size_t size_n = 0;
  std::size_t size_l = 0;
  std::string graph_output;
  graph_cmd->add_option("family", family, "cycle | path | lattice | wheel | complete")
      ->required()
      ->check(CLI::IsMember({"cycle", "path", "lattice", "wheel", "complete"}));
  graph_cmd->add_option("--n", size_n, "Node count (cycle, path, complete)");
  graph_cmd->add_option("--l", size_l, "Lattice side length");
  graph_cmd->add_option("-o,--output", graph_output, "Output file (default stdout)");

  // spectrum
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Eigenvalue clusters and minimal-eigenvalue verdict");
  std::string spectrum_graph;
  spectrum_cmd->add_option("graph", spectrum_graph, "Graph JSON file")->required();

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "Step and overhead bounds for simulating a target graph");
  std::string bounds_graph;
  std::string coupling = "zz";
  std::size_t coupling_m = 3;
  std::optional<double> mu;
  std::string natural_file;
  bounds_cmd->add_option("graph", bounds_graph, "Target graph JSON file")->required();
  bounds_cmd->add_option("--coupling", coupling, "zz | identity | path to a coupling JSON file");
  bounds_cmd->add_option("--m", coupling_m, "Dimension of the identity coupling")->check(CLI::PositiveNumber);
  bounds_cmd->add_option("--mu", mu, "Time overhead for the eigenvalue-count bound");
  bounds_cmd->add_option("--natural", natural_file, "Natural graph JSON (default: complete, unit weights)");

  // scheme
  auto* scheme_cmd = app.add_subcommand("scheme", "Synthesize a verified sign-flip scheme");
  std::string scheme_graph;
  std::string method = "auto";
  std::string scheme_output;
  scheme_cmd->add_option("graph", scheme_graph, "Target graph JSON file")->required();
  scheme_cmd->add_option("--method", method, "auto | cycle | lattice | wheel")
      ->check(CLI::IsMember({"auto", "cycle", "lattice", "wheel"}));
  scheme_cmd->add_option("-o,--output", scheme_output, "Output file (default stdout)");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Exactly verify a scheme against a target graph");
  std::string verify_scheme;
  std::string verify_graph;
  verify_cmd->add_option("scheme", verify_scheme, "Scheme JSON file")->required();
  verify_cmd->add_option("graph", verify_graph, "Target graph JSON file")->required();

  // optimal-tau
  auto* tau_cmd = app.add_subcommand("optimal-tau", "Optimal time overhead by linear programming");
  std::string tau_graph;
  bool exact = false;
  tau_cmd->add_option("graph", tau_graph, "Target graph JSON file")->required();
  tau_cmd->add_flag("--exact", exact, "Exact rational simplex (default: floating point)");

  // min-steps
  auto* steps_cmd = app.add_subcommand("min-steps", "Minimal number of time steps by exhaustive search");
  std::string steps_graph;
  std::size_t max_steps = kBruteForceMaxSteps;
  steps_cmd->add_option("graph", steps_graph, "Target graph JSON file")->required();
  steps_cmd->add_option("--max-steps", max_steps, "Largest step count to try");

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  auto summary = [&](const std::string& line) {
    if (!quiet) err << line << "\n";
  };
  auto load_graph = [](const std::string& path) { return io::graph_from_json(detail::read_json_file(path)); };

  try {
    if (*graph_cmd) {
      InteractionGraph g;
      if (family == "wheel") {
        g = graph_code_wheel();
      } else if (family == "lattice") {
        g = square_lattice(size_l);
      } else if (family == "cycle") {
        g = cycle(size_n);
      } else if (family == "path") {
        g = path(size_n);
      } else {
        g = complete(size_n);
      }
      detail::emit(io::graph_to_json(g), graph_output, out);
      summary(family + ": " + std::to_string(g.n()) + " nodes, " + std::to_string(g.edge_count()) + " edges");
      return kExitOk;
    }

    if (*spectrum_cmd) {
      const InteractionGraph g = load_graph(spectrum_graph);
      if (g.n() == 0) throw DomainError("graph has no nodes");
      const Spectrum s = spectrum(g.to_sym());
      const MinEigenvalue mev = min_eig_rationality(g.matrix());
      detail::emit(io::spectrum_to_json(s, mev), "", out);
      std::ostringstream line;
      line << "lambda_min = " << mev.value << " (multiplicity " << mev.multiplicity << ", "
           << to_string(mev.verdict.kind) << ")";
      summary(line.str());
      return kExitOk;
    }

    if (*bounds_cmd) {
      const InteractionGraph target = load_graph(bounds_graph);
      const InteractionGraph natural = natural_file.empty()
                                           ? (target.n() >= 2 ? complete(target.n()) : InteractionGraph(target.n()))
                                           : load_graph(natural_file);
      CouplingType c = coupling == "zz"         ? CouplingType::zz()
                       : coupling == "identity" ? CouplingType::identity(coupling_m)
                                                : io::coupling_from_json(detail::read_json_file(coupling));
      const BoundsReport r = build_bounds_report(target, natural, c, mu);
      detail::emit(io::report_to_json(r), "", out);
      std::ostringstream line;
      line << "steps >= " << r.steps_lower();
      if (r.overhead_lower) line << ", overhead " << (r.overhead_lower->strict ? "> " : ">= ") << r.overhead_lower->value;
      summary(line.str());
      return kExitOk;
    }

    if (*scheme_cmd) {
      const InteractionGraph g = load_graph(scheme_graph);
      auto param = [&](const char* key) { return static_cast<std::size_t>(g.params().at(key)); };
      Scheme s;
      if (method == "auto") {
        s = synthesize_by_matchings(g);
      } else if (g.family() != method) {
        throw DomainError("method '" + method + "' needs a graph tagged with family '" + method + "'");
      } else if (method == "cycle") {
        s = preset_cycle(param("n"));
      } else if (method == "lattice") {
        s = preset_lattice(param("l"));
      } else {
        s = preset_wheel();
      }
      const VerifyReport v = verify(s, g.matrix());
      if (!v.ok) {
        err << "internal error: synthesized scheme failed verification\n";
        return kExitVerifyFailed;
      }
      detail::emit(io::scheme_to_json(s), scheme_output, out);
      summary("scheme: " + std::to_string(v.steps) + " steps, overhead " + format_rational(v.overhead));
      return kExitOk;
    }

    if (*verify_cmd) {
      const Scheme s = io::scheme_from_json(detail::read_json_file(verify_scheme));
      const InteractionGraph g = load_graph(verify_graph);
      const VerifyReport v = verify(s, g.matrix());
      detail::emit(io::verify_to_json(v), "", out);
      if (v.ok) {
        summary("verified: overhead " + format_rational(v.overhead) + ", steps " + std::to_string(v.steps));
        return kExitOk;
      }
      summary("not verified: " + std::to_string(v.defects.size()) + " mismatched pairs");
      return kExitVerifyFailed;
    }

    if (*tau_cmd) {
      const InteractionGraph g = load_graph(tau_graph);
      if (exact) {
        const auto sol = optimal_overhead_exact(g.matrix());
        detail::emit(io::lp_to_json(sol), "", out);
        summary("optimal tau = " + format_rational(sol.tau));
      } else {
        const auto sol = optimal_overhead_float(g.matrix());
        detail::emit(io::lp_to_json(sol), "", out);
        std::ostringstream line;
        line << "optimal tau ~ " << sol.tau;
        summary(line.str());
      }
      return kExitOk;
    }

    if (*steps_cmd) {
      const InteractionGraph g = load_graph(steps_graph);
      const auto found = min_steps_bruteforce(g.matrix(), max_steps);
      io::json j;
      j["max_steps"] = max_steps;
      j["found"] = found.has_value();
      j["steps"] = found ? io::json(found->step_count()) : io::json(nullptr);
      if (found) j["scheme"] = io::scheme_to_json(*found);
      detail::emit(j, "", out);
      summary(found ? "minimal steps = " + std::to_string(found->step_count())
                    : "no scheme within " + std::to_string(max_steps) + " steps");
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace pairsim::cli
