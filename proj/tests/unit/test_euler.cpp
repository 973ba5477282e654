#include <gtest/gtest.h>

#include "oracles.h"
#include "scorenet/error.h"
#include "scorenet/euler.h"

namespace {

scorenet::ErrorCode code_of(const std::set<scorenet::Edge>& support) {
  try {
    scorenet::eulerize_directed(support);
  } catch (const scorenet::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return scorenet::ErrorCode::kIo;
}

}  // namespace

TEST(WalkStats, ShortWalk) {
  const std::vector<int> walk = {0, 1, 0};
  const auto w = scorenet::walk_stats(walk);
  EXPECT_EQ(w.nodes_visited, 3u);
  EXPECT_EQ(w.edges_traversed, 2u);
  EXPECT_EQ(w.distinct_edges, 2u);
  EXPECT_EQ(w.duplicated, 0u);
  EXPECT_EQ(w.self_loops, 0u);
}

TEST(WalkStats, RepeatsAndLoops) {
  const auto w = scorenet::walk_stats(oracle::series_from_ids({0, 1, 0, 1, 1, 0}));
  EXPECT_EQ(w.edges_traversed, 5u);
  EXPECT_EQ(w.distinct_edges, 3u);
  EXPECT_EQ(w.duplicated, 2u);
  EXPECT_EQ(w.self_loops, 1u);
}

TEST(Cpp, CycleNeedsNothing) {
  const auto g = scorenet::eulerize_directed(std::set<scorenet::Edge>{{0, 1}, {1, 2}, {2, 0}});
  EXPECT_EQ(g.total_duplications(), 0u);
  const auto c = scorenet::euler_circuit(g, 0);
  EXPECT_EQ(c.nodes, (std::vector<int>{0, 1, 2, 0}));
  EXPECT_EQ(c.edges_traversed(), 3u);
  EXPECT_FALSE(scorenet::circuit_violation(c, g));
}

TEST(Cpp, TwoTrianglesShareANode) {
  const auto g = scorenet::eulerize_directed(std::set<scorenet::Edge>{{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}});
  EXPECT_EQ(g.total_edges(), 6u);
  const auto c = scorenet::euler_circuit(g, 0);
  EXPECT_EQ(c.edges_traversed(), 6u);
  EXPECT_FALSE(scorenet::circuit_violation(c, g));
}

TEST(Cpp, UnbalancedPathGetsDuplicated) {
  // 0 -> 1 -> 2 -> 0 plus the chord 0 -> 2: node 2 has one surplus in-edge,
  // routed back along 2 -> 0.
  const auto g = scorenet::eulerize_directed(std::set<scorenet::Edge>{{0, 1}, {1, 2}, {2, 0}, {0, 2}});
  EXPECT_EQ(g.total_duplications(), 1u);
  EXPECT_EQ(g.multiplicity({2, 0}), 2u);
  EXPECT_EQ(g.multiplicity({0, 1}), 1u);
  EXPECT_EQ(g.multiplicity({1, 0}), 0u);
  const auto c = scorenet::euler_circuit(g, 1);
  EXPECT_EQ(c.start(), 1);
  EXPECT_EQ(c.duplicated_edges, 1u);
  EXPECT_FALSE(scorenet::circuit_violation(c, g));
}

TEST(Cpp, Errors) {
  EXPECT_EQ(code_of({}), scorenet::ErrorCode::kEmptyInput);
  EXPECT_EQ(code_of({{0, 1}}), scorenet::ErrorCode::kInfeasible);
  EXPECT_EQ(code_of({{0, 1}, {1, 0}, {2, 3}, {3, 2}}), scorenet::ErrorCode::kDisconnected);
  const auto g = scorenet::eulerize_directed(std::set<scorenet::Edge>{{0, 1}, {1, 0}});
  EXPECT_THROW(scorenet::euler_circuit(g, 5), scorenet::Error);
}

TEST(Cpp, ViolationChecker) {
  const auto g = scorenet::eulerize_directed(std::set<scorenet::Edge>{{0, 1}, {1, 2}, {2, 0}});
  EXPECT_TRUE(scorenet::circuit_violation({{0, 1, 2}, 0}, g));
  EXPECT_TRUE(scorenet::circuit_violation({{0, 1, 2, 0, 1, 2, 0}, 0}, g));
  EXPECT_TRUE(scorenet::circuit_violation({{0, 2, 1, 0}, 0}, g));
}

TEST(Cpp, MatchesBruteForceOnSmallDigraphs) {
  std::size_t checked = 0;
  for (const auto& digraph : oracle::enumerate_digraphs(4, 6)) {
    const std::set<scorenet::Edge> support(digraph.begin(), digraph.end());
    const auto expected = oracle::min_duplications(digraph);
    if (!expected) {
      EXPECT_THROW(scorenet::eulerize_directed(support), scorenet::Error);
      continue;
    }
    const auto g = scorenet::eulerize_directed(support);
    ASSERT_EQ(g.total_duplications(), *expected);
    const auto c = scorenet::euler_circuit(g, digraph.front().first);
    ASSERT_FALSE(scorenet::circuit_violation(c, g)) << *scorenet::circuit_violation(c, g);
    ++checked;
  }
  EXPECT_GT(checked, 20u);
}
