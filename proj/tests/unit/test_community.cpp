#include <gtest/gtest.h>

#include <random>

#include "oracles.h"
#include "scorenet/community.h"

using scorenet::ScoreNetwork;

namespace {

ScoreNetwork from_edges(const std::vector<std::tuple<int, int, std::size_t>>& edges) {
  ScoreNetwork net;
  for (const auto& [a, b, w] : edges) {
    net.nodes[a] = {scorenet::PitchClassSet::from_pitches({a}, 64), 1};
    net.nodes[b] = {scorenet::PitchClassSet::from_pitches({b}, 64), 1};
    net.edges[{a, b}] += w;
  }
  return net;
}

// Q = 1/(2m) sum_ij [A_ij - k_i k_j / (2m)] delta(c_i, c_j) on a dense matrix
// with A = W + W^T.
double dense_modularity(const ScoreNetwork& net, const std::map<int, int>& community) {
  std::vector<int> ids;
  for (const auto& [id, node] : net.nodes) ids.push_back(id);
  const std::size_t n = ids.size();
  const auto pos = [&](int id) { return static_cast<std::size_t>(std::find(ids.begin(), ids.end(), id) - ids.begin()); };
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (const auto& [e, w] : net.edges) {
    a[pos(e.first)][pos(e.second)] += static_cast<double>(w);
    a[pos(e.second)][pos(e.first)] += static_cast<double>(w);
  }
  std::vector<double> k(n, 0.0);
  double two_m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) k[i] += a[i][j];
    two_m += k[i];
  }
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (community.at(ids[i]) == community.at(ids[j])) q += a[i][j] - k[i] * k[j] / two_m;
    }
  }
  return q / two_m;
}

ScoreNetwork two_cliques() {
  std::vector<std::tuple<int, int, std::size_t>> edges;
  for (int base : {0, 4}) {
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) edges.emplace_back(base + i, base + j, 1);
    }
  }
  edges.emplace_back(3, 4, 1);
  return from_edges(edges);
}

}  // namespace

TEST(Louvain, TwoCliques) {
  const auto net = two_cliques();
  const auto part = scorenet::detect_communities(net, 0);
  EXPECT_EQ(part.community_count, 2u);
  EXPECT_GE(part.modularity, 0.35);
  for (int v = 0; v < 4; ++v) EXPECT_EQ(part.community.at(v), 0);
  for (int v = 4; v < 8; ++v) EXPECT_EQ(part.community.at(v), 1);
}

TEST(Louvain, ReportedModularityMatchesFormula) {
  std::mt19937_64 engine(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::tuple<int, int, std::size_t>> edges;
    for (int e = 0; e < 40; ++e) {
      edges.emplace_back(static_cast<int>(engine() % 15), static_cast<int>(engine() % 15), 1 + engine() % 3);
    }
    const auto net = from_edges(edges);
    const auto part = scorenet::detect_communities(net, static_cast<std::uint64_t>(trial));
    EXPECT_NEAR(part.modularity, dense_modularity(net, part.community), 1e-9);
    EXPECT_NEAR(scorenet::modularity(net, part.community), part.modularity, 1e-12);
  }
}

TEST(Louvain, DeterministicPerSeed) {
  const auto net = scorenet::build_network(oracle::planted_series(4).series);
  const auto a = scorenet::detect_communities(net, 9);
  const auto b = scorenet::detect_communities(net, 9);
  EXPECT_EQ(a.community, b.community);
  EXPECT_EQ(a.modularity, b.modularity);
}

TEST(Modularity, SingleCommunityIsZero) {
  const auto net = two_cliques();
  std::map<int, int> all;
  for (const auto& [id, node] : net.nodes) all[id] = 0;
  EXPECT_NEAR(scorenet::modularity(net, all), 0.0, 1e-12);
}
