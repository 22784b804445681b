#include <gtest/gtest.h>

#include "pairsim/graphs.hpp"
#include "pairsim/schemes.hpp"

using namespace pairsim;

namespace {

std::vector<Edge> edges_of(std::initializer_list<std::pair<std::size_t, std::size_t>> list) {
  std::vector<Edge> out;
  for (auto [k, l] : list) out.push_back({k, l});
  return out;
}

bool is_matching_cover(const EdgeClasses& classes, const InteractionGraph& g) {
  std::vector<Edge> seen;
  for (const auto& cls : classes) {
    std::vector<bool> used(g.n(), false);
    for (const Edge& e : cls) {
      if (g.weight(e.k, e.l) == 0 || used[e.k] || used[e.l]) return false;
      used[e.k] = used[e.l] = true;
      seen.push_back(e);
    }
  }
  std::sort(seen.begin(), seen.end());
  return seen == g.edges();
}

}  // namespace

TEST(Families, Edges) {
  EXPECT_EQ(cycle(3).edges(), edges_of({{0, 1}, {0, 2}, {1, 2}}));
  const InteractionGraph lat = square_lattice(2);
  EXPECT_EQ(lat.n(), 4u);
  EXPECT_EQ(lat.edges(), edges_of({{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
  EXPECT_EQ(graph_code_wheel().edges(),
            edges_of({{0, 1}, {0, 4}, {0, 5}, {1, 2}, {1, 5}, {2, 3}, {2, 5}, {3, 4}, {3, 5}, {4, 5}}));
  EXPECT_EQ(square_lattice(4).edge_count(), 24u);
  EXPECT_EQ(complete(5).edge_count(), 10u);
  EXPECT_EQ(path(5).edge_count(), 4u);
  EXPECT_TRUE(complete(4).is_complete());
  EXPECT_TRUE(square_lattice(3).is_connected());
}

TEST(Families, Tags) {
  EXPECT_EQ(cycle(6).family(), "cycle");
  EXPECT_EQ(cycle(6).params().at("n"), 6);
  EXPECT_EQ(square_lattice(3).params().at("l"), 3);
  EXPECT_EQ(graph_code_wheel().family(), "wheel");
}

TEST(Families, RejectDegenerateSizes) {
  EXPECT_THROW(cycle(2), DomainError);
  EXPECT_THROW(path(1), DomainError);
  EXPECT_THROW(complete(1), DomainError);
  EXPECT_THROW(square_lattice(1), DomainError);
}

TEST(InteractionGraph, FromMatrixValidates) {
  RationalMatrix m(2);
  m(0, 1) = 1;
  EXPECT_THROW(InteractionGraph::from_matrix(m), DomainError);
  m(1, 0) = 1;
  m(0, 0) = 1;
  EXPECT_THROW(InteractionGraph::from_matrix(m), DomainError);
  InteractionGraph g(2);
  EXPECT_THROW(g.set_weight(0, 0, 1), DomainError);
  EXPECT_THROW(g.set_weight(0, 2, 1), DomainError);
}

TEST(QuotientTarget, Examples) {
  const RationalMatrix k = quotient_target(complete(4), complete(4));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(k(i, j), i == j ? 0 : 1);
  EXPECT_EQ(quotient_target(cycle(6), complete(6)), cycle(6).matrix());
  EXPECT_TRUE(quotient_target(InteractionGraph(5), complete(5)).is_zero());
}

TEST(QuotientTarget, Errors) {
  EXPECT_THROW(quotient_target(complete(3), path(3)), ZeroMismatch);
  EXPECT_THROW(quotient_target(complete(3), complete(4)), DimensionMismatch);
}

TEST(QuotientTarget, DividesWeights) {
  InteractionGraph natural = complete(3);
  natural.set_weight(0, 1, BigRational(2, 3));
  InteractionGraph target(3);
  target.set_weight(0, 1, BigRational(-1, 3));
  EXPECT_EQ(quotient_target(target, natural)(0, 1), BigRational(-1, 2));
}

TEST(EdgeColoring, Examples) {
  const EdgeClasses c8 = greedy_edge_coloring(cycle(8));
  ASSERT_EQ(c8.size(), 2u);
  EXPECT_EQ(c8[0].size(), 4u);
  EXPECT_EQ(c8[1].size(), 4u);
  EXPECT_TRUE(is_matching_cover(c8, cycle(8)));

  const EdgeClasses k3 = greedy_edge_coloring(complete(3));
  ASSERT_EQ(k3.size(), 3u);
  for (const auto& cls : k3) EXPECT_EQ(cls.size(), 1u);

  const EdgeClasses lat = greedy_edge_coloring(square_lattice(4));
  EXPECT_LE(lat.size(), 7u);
  EXPECT_TRUE(is_matching_cover(lat, square_lattice(4)));
}

TEST(EdgeColoring, AlwaysAProperCover) {
  for (std::size_t n = 3; n <= 12; ++n) {
    EXPECT_TRUE(is_matching_cover(greedy_edge_coloring(cycle(n)), cycle(n)));
    EXPECT_TRUE(is_matching_cover(greedy_edge_coloring(complete(n)), complete(n)));
  }
  EXPECT_TRUE(is_matching_cover(greedy_edge_coloring(graph_code_wheel()), graph_code_wheel()));
}

TEST(EdgeColoring, StructuredClasses) {
  EXPECT_TRUE(is_matching_cover(cycle_edge_classes(8), cycle(8)));
  EXPECT_EQ(cycle_edge_classes(8).size(), 2u);
  EXPECT_THROW(cycle_edge_classes(7), DomainError);
  for (std::size_t l = 2; l <= 5; ++l) {
    EXPECT_TRUE(is_matching_cover(lattice_edge_classes(l), square_lattice(l)));
    EXPECT_LE(lattice_edge_classes(l).size(), 4u);
  }
}

TEST(CliquePartition, Construction) {
  const auto p = CliquePartition::from_cliques(5, {{0, 3}, {1}, {2, 4}});
  EXPECT_EQ(p.clique_count(), 3u);
  EXPECT_TRUE(p.same_clique(0, 3));
  EXPECT_FALSE(p.same_clique(0, 1));
  EXPECT_THROW(CliquePartition::from_cliques(3, {{0, 1}}), DomainError);
  EXPECT_THROW(CliquePartition::from_cliques(3, {{0, 1}, {1, 2}}), DomainError);
  EXPECT_THROW(CliquePartition::from_cliques(2, {{0, 5}}), DomainError);

  const auto m = CliquePartition::from_matching(4, edges_of({{1, 2}}));
  EXPECT_EQ(m.clique_count(), 3u);
}

TEST(CliqueCover, Examples) {
  EXPECT_TRUE(validate_clique_cover(wheel_partitions(), graph_code_wheel()));
  EXPECT_TRUE(validate_clique_cover({CliquePartition::from_cliques(5, {{0, 1, 2, 3, 4}})}, complete(5)));
  EXPECT_FALSE(validate_clique_cover({CliquePartition::from_cliques(3, {{0, 1}, {2}})}, path(3)));
  EXPECT_TRUE(validate_clique_cover(cycle_partitions(10), cycle(10)));
  EXPECT_TRUE(validate_clique_cover(lattice_partitions(4), square_lattice(4)));
}

TEST(Seidel, Examples) {
  const SymMatrix k = seidel_matrix(SignPattern({1, 1, 1}));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(k(i, j), i == j ? 0.0 : 1.0);
  const RationalMatrix s = seidel_matrix_exact(SignPattern({1, -1, 1}));
  EXPECT_EQ(s(0, 1), -1);
  EXPECT_EQ(s(1, 2), -1);
  EXPECT_EQ(s(0, 2), 1);
  EXPECT_EQ(s(1, 1), 0);
}

TEST(SignPattern, Canonical) {
  const SignPattern x({-1, 1, -1});
  EXPECT_EQ(x.canonical(), SignPattern({1, -1, 1}));
  EXPECT_EQ(seidel_matrix_exact(x), seidel_matrix_exact(x.negated()));
  EXPECT_THROW(SignPattern({1, 0}), DomainError);
}
