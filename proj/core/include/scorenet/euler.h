#pragma once

// Directed Chinese postman: minimal edge duplication so every node is
// balanced, then a Hierholzer circuit over the duplicated multigraph.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "scorenet/network.h"
#include "scorenet/sequence.h"

namespace scorenet {

struct WalkStats {
  std::size_t nodes_visited = 0;    // events in the walk
  std::size_t edges_traversed = 0;  // nodes_visited - 1
  std::size_t distinct_edges = 0;
  std::size_t duplicated = 0;       // edges_traversed - distinct_edges
  std::size_t self_loops = 0;       // distinct edges from a chord to itself
};

WalkStats walk_stats(std::span<const int> walk);
WalkStats walk_stats(const LabeledSeries& series);

struct EulerizedGraph {
  std::set<Edge> support;               // each required once
  std::map<Edge, std::size_t> duplications;  // extra traversals, only nonzero entries

  std::size_t multiplicity(const Edge& e) const;
  std::size_t total_duplications() const;
  std::size_t total_edges() const { return support.size() + total_duplications(); }
};

/// Minimum-cost flow from nodes with in > out to nodes with out > in, one unit
/// of cost per hop along the support. Throws kEmptyInput on an empty support,
/// kDisconnected when the support is not weakly connected and kInfeasible
/// when some imbalance cannot be routed (the support is not strongly
/// connected).
EulerizedGraph eulerize_directed(const std::set<Edge>& support);
EulerizedGraph eulerize_directed(const ScoreNetwork& network);

struct Circuit {
  std::vector<int> nodes;  // closed: front() == back()
  std::size_t duplicated_edges = 0;

  int start() const { return nodes.front(); }
  std::size_t edges_traversed() const { return nodes.empty() ? 0 : nodes.size() - 1; }
  std::size_t nodes_visited() const { return nodes.size(); }
};

/// Hierholzer traversal from `start`, taking the lowest-id unused successor
/// first. Throws when the graph is unbalanced or `start` has no edges.
Circuit euler_circuit(const EulerizedGraph& graph, int start);

/// Empty when `circuit` is closed and its consecutive pairs use every edge of
/// `graph` exactly its multiplicity; otherwise the first violation found.
std::optional<std::string> circuit_violation(const Circuit& circuit, const EulerizedGraph& graph);

}  // namespace scorenet
