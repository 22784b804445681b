#include <gtest/gtest.h>

#include <cstdlib>
#include <sys/wait.h>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pairsim/cli.hpp"
#include "pairsim/io.hpp"

using namespace pairsim;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "pairsim");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("pairsim_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path_of(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path_of(name)) << text;
    return path_of(name);
  }

  std::string write_graph(const std::string& name, const InteractionGraph& g) const {
    return write(name, io::graph_to_json(g).dump(2));
  }

  fs::path dir_;
};

}  // namespace

TEST(GraphDocument, RoundTrip) {
  for (const auto& g : {cycle(6), path(3), square_lattice(3), graph_code_wheel(), complete(4)}) {
    const InteractionGraph back = io::graph_from_json(io::graph_to_json(g));
    EXPECT_EQ(back, g);
    EXPECT_EQ(back.family(), g.family());
    EXPECT_EQ(io::graph_to_json(back).dump(), io::graph_to_json(g).dump());
  }
  InteractionGraph weighted(3);
  weighted.set_weight(0, 2, BigRational(-7, 3));
  EXPECT_EQ(io::graph_from_json(io::graph_to_json(weighted)), weighted);
}

TEST(GraphDocument, Rejects) {
  using io::json;
  EXPECT_THROW(io::graph_from_json(json::parse(R"({"edges": []})")), io::ParseError);
  EXPECT_THROW(io::graph_from_json(json::parse(R"({"n": 3, "edges": [[1, 0, "1"]]})")), io::ParseError);
  EXPECT_THROW(io::graph_from_json(json::parse(R"({"n": 3, "edges": [[0, 3, "1"]]})")), io::ParseError);
  EXPECT_THROW(io::graph_from_json(json::parse(R"({"n": 3, "edges": [[0, 1, "1"], [0, 1, "2"]]})")), io::ParseError);
  EXPECT_THROW(io::graph_from_json(json::parse(R"({"n": 3, "edges": [[0, 1, "0"]]})")), io::ParseError);
  EXPECT_THROW(io::graph_from_json(json::parse(R"({"n": 3, "edges": [[0, 1, "x"]]})")), io::ParseError);
  EXPECT_THROW(io::graph_from_json(json::parse(R"({"n": 3, "edges": [[0, 1, 0.5]]})")), io::ParseError);
  EXPECT_THROW(
      io::graph_from_json(json::parse(R"({"n": 3, "edges": [[0, 1, "1"]], "family": "cycle", "params": {"n": 3}})")),
      io::ParseError);
  EXPECT_THROW(io::graph_from_json(json::parse(R"({"n": 2, "edges": [], "family": "star"})")), io::ParseError);
}

TEST(SchemeDocument, RoundTrip) {
  for (const auto& s : {preset_cycle(8), preset_wheel(), synthesize_by_matchings(path(5)), Scheme(0)}) {
    EXPECT_EQ(io::scheme_from_json(io::scheme_to_json(s)), s);
  }
  Scheme odd(2);
  odd.add_step(BigRational(5, 7), SignPattern({1, -1}));
  EXPECT_EQ(io::scheme_from_json(io::scheme_to_json(odd)), odd);
}

TEST(SchemeDocument, Rejects) {
  using io::json;
  EXPECT_THROW(io::scheme_from_json(json::parse(R"({"n": 2, "steps": [{"t": "0", "signs": [1, 1]}]})")), io::ParseError);
  EXPECT_THROW(io::scheme_from_json(json::parse(R"({"n": 2, "steps": [{"t": "1", "signs": [1]}]})")), io::ParseError);
  EXPECT_THROW(io::scheme_from_json(json::parse(R"({"n": 2, "steps": [{"t": "1", "signs": [1, 2]}]})")), io::ParseError);
  EXPECT_THROW(io::scheme_from_json(json::parse(R"({"n": 2, "steps": [{"signs": [1, 1]}]})")), io::ParseError);
}

TEST(CouplingDocument, Parse) {
  const CouplingType c = io::coupling_from_json(io::json::parse(R"({"matrix": [[1, 0], [0, 2]]})"));
  EXPECT_EQ(c.m(), 2u);
  EXPECT_DOUBLE_EQ(c.lambda_max(), 2);
  EXPECT_THROW(io::coupling_from_json(io::json::parse(R"({"matrix": [[1, 2], [0, 1]]})")), io::ParseError);
  EXPECT_THROW(io::coupling_from_json(io::json::parse(R"({"matrix": [[1, 2]]})")), io::ParseError);
}

TEST_F(CliTest, GraphCommand) {
  Result r = run_cli({"graph", "cycle", "--n", "6"});
  EXPECT_EQ(r.code, 0);
  InteractionGraph g = io::graph_from_json(io::json::parse(r.out));
  EXPECT_EQ(g.n(), 6u);
  EXPECT_EQ(g.edge_count(), 6u);

  r = run_cli({"graph", "wheel", "-o", path_of("wheel.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  g = io::graph_from_json(cli::detail::read_json_file(path_of("wheel.json")));
  EXPECT_EQ(g.n(), 6u);
  EXPECT_EQ(g.edge_count(), 10u);

  r = run_cli({"--quiet", "graph", "lattice", "--l", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.err.empty());
  g = io::graph_from_json(io::json::parse(r.out));
  EXPECT_EQ(g.n(), 16u);
  EXPECT_EQ(g.edge_count(), 24u);

  EXPECT_EQ(run_cli({"graph", "cycle", "--n", "2"}).code, 2);
  EXPECT_EQ(run_cli({"graph", "hexagon"}).code, 2);
  EXPECT_EQ(run_cli({}).code, 2);
}

TEST_F(CliTest, SpectrumCommand) {
  const Result r = run_cli({"spectrum", write_graph("c6.json", cycle(6))});
  ASSERT_EQ(r.code, 0);
  const auto j = io::json::parse(r.out);
  EXPECT_EQ(j["min"]["verdict"], "rational");
  EXPECT_EQ(j["min"]["exact_value"], "-2");
  EXPECT_EQ(j["clusters"].size(), 4u);
}

TEST_F(CliTest, BoundsCommand) {
  Result r = run_cli({"bounds", write_graph("wheel.json", graph_code_wheel()), "--coupling", "zz"});
  ASSERT_EQ(r.code, 0);
  auto j = io::json::parse(r.out);
  EXPECT_EQ(j["steps_lower"], 6);
  EXPECT_TRUE(j["overhead_lower"]["strict"].get<bool>());
  EXPECT_NEAR(j["overhead_lower"]["value"].get<double>(), 1.6180339887, 1e-9);

  r = run_cli({"bounds", write_graph("c6.json", cycle(6)), "--coupling", "zz"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(io::json::parse(r.out)["steps_lower"], 5);

  r = run_cli({"bounds", write_graph("p3.json", path(3)), "--coupling", "identity"});
  ASSERT_EQ(r.code, 0);
  j = io::json::parse(r.out);
  EXPECT_EQ(j["steps_lower_thm3"]["case"], 2);
  EXPECT_EQ(j["steps_lower_thm3"]["value"], 2);

  const std::string coupling = write("c.json", R"({"matrix": [[1, 0], [0, 1]]})");
  r = run_cli({"bounds", path_of("p3.json"), "--coupling", coupling, "--mu", "2"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(io::json::parse(r.out)["mu"], 2.0);

  EXPECT_EQ(run_cli({"bounds", path_of("p3.json"), "--mu", "-1"}).code, 2);
  EXPECT_EQ(run_cli({"bounds", path_of("missing.json")}).code, 2);
  EXPECT_EQ(run_cli({"bounds", write("bad.json", "{not json")}).code, 2);
  EXPECT_EQ(run_cli({"bounds", path_of("p3.json"), "--natural", write_graph("nat.json", path(3))}).code, 2);
}

TEST_F(CliTest, SchemeAndVerify) {
  const std::string c8 = write_graph("c8.json", cycle(8));
  Result r = run_cli({"scheme", c8, "--method", "cycle", "-o", path_of("c8s.json")});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(io::scheme_from_json(cli::detail::read_json_file(path_of("c8s.json"))).step_count(), 8u);

  r = run_cli({"verify", path_of("c8s.json"), c8});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("overhead 2, steps 8"), std::string::npos);

  const std::string wheel = write_graph("wheel.json", graph_code_wheel());
  r = run_cli({"scheme", wheel, "--method", "wheel"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(io::scheme_from_json(io::json::parse(r.out)).step_count(), 12u);
  write("ws.json", r.out);

  r = run_cli({"verify", path_of("ws.json"), write_graph("c6.json", cycle(6))});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(io::json::parse(r.out)["defects"].empty());

  r = run_cli({"scheme", write_graph("p3.json", path(3)), "--method", "auto"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(io::scheme_from_json(io::json::parse(r.out)).step_count(), 4u);

  EXPECT_EQ(run_cli({"scheme", path_of("p3.json"), "--method", "cycle"}).code, 2);
  EXPECT_EQ(run_cli({"scheme", path_of("p3.json"), "--method", "spiral"}).code, 2);

  r = run_cli({"verify", write("empty_s.json", R"({"n": 0, "steps": []})"), write("empty_g.json", R"({"n": 0, "edges": []})")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(run_cli({"verify", write("bad_s.json", R"({"n": 2})"), c8}).code, 2);
}

TEST_F(CliTest, OptimalTauAndMinSteps) {
  const std::string p3 = write_graph("p3.json", path(3));
  Result r = run_cli({"optimal-tau", p3, "--exact"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(io::json::parse(r.out)["tau"], "2");
  r = run_cli({"optimal-tau", write_graph("k3.json", complete(3)), "--exact"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(io::json::parse(r.out)["tau"], "1");
  r = run_cli({"optimal-tau", p3});
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(io::json::parse(r.out)["tau_value"].get<double>(), 2.0, 1e-9);

  r = run_cli({"min-steps", p3, "--max-steps", "4"});
  ASSERT_EQ(r.code, 0);
  auto j = io::json::parse(r.out);
  EXPECT_TRUE(j["found"].get<bool>());
  EXPECT_EQ(j["steps"], 3);
  r = run_cli({"min-steps", p3, "--max-steps", "2"});
  ASSERT_EQ(r.code, 0);
  EXPECT_FALSE(io::json::parse(r.out)["found"].get<bool>());

  EXPECT_EQ(run_cli({"min-steps", write_graph("c6.json", cycle(6))}).code, 2);
  EXPECT_EQ(run_cli({"optimal-tau", write_graph("c16.json", cycle(16)), "--exact"}).code, 2);
}

TEST_F(CliTest, Deterministic) {
  const std::string wheel = write_graph("wheel.json", graph_code_wheel());
  for (const auto& args : std::vector<std::vector<std::string>>{{"bounds", wheel},
                                                                {"spectrum", wheel},
                                                                {"scheme", wheel, "--method", "auto"},
                                                                {"optimal-tau", wheel, "--exact"}}) {
    const Result a = run_cli(args);
    const Result b = run_cli(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.err, b.err);
  }
}

#ifdef PAIRSIM_CLI_PATH
TEST_F(CliTest, BinaryExitCodes) {
  const std::string bin = PAIRSIM_CLI_PATH;
  auto status = [](const std::string& cmd) {
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  const std::string c8 = write_graph("c8.json", cycle(8));
  EXPECT_EQ(status(bin + " --quiet scheme " + c8 + " --method cycle -o " + path_of("s.json")), 0);
  EXPECT_EQ(status(bin + " --quiet verify " + path_of("s.json") + " " + c8 + " > /dev/null"), 0);
  EXPECT_EQ(status(bin + " --quiet verify " + path_of("s.json") + " " + write_graph("p8.json", path(8)) +
                   " > /dev/null"),
            1);
  EXPECT_EQ(status(bin + " nonsense 2> /dev/null"), 2);
}
#endif
