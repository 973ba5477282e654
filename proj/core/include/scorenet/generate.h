#pragma once

// Scale-free surrogate networks: Barabasi-Albert growth, degree-ranked chord
// assignment, undirected Eulerization and voice-leading statistics.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "scorenet/network.h"
#include "scorenet/pcset.h"

namespace scorenet {

struct GenConfig {
  std::size_t n = 0;
  std::size_t m = 1;
  std::uint64_t seed = 0;
};

struct UndirectedGraph {
  std::size_t node_count = 0;
  /// (u, v) with u > v for generated graphs: the arriving node first.
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::vector<std::size_t> degrees() const;
};

/// m isolated seed nodes, then each new node links to m distinct existing
/// nodes drawn with probability proportional to degree (weight 1 while a
/// node has degree 0). Edge count is (n - m) m. Throws unless 1 <= m < n.
UndirectedGraph barabasi_albert(const GenConfig& config);

/// max(1, round(edges / nodes)), capped at nodes - 1.
std::size_t choose_m(const ScoreNetwork& reference);

struct GeneratedScoreNetwork {
  UndirectedGraph graph;
  std::vector<PitchClassSet> labels;  // per generated node
  std::vector<int> reference_ids;     // per generated node
};

/// Generated nodes by descending degree (ties: lower index) are paired with
/// reference nodes by descending total degree (ties: higher count, then lower
/// id). Throws on a node-count mismatch.
GeneratedScoreNetwork assign_chords(const UndirectedGraph& graph, const ScoreNetwork& reference);

struct UndirectedEulerization {
  /// The original edges followed by the duplicated ones.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t duplicated = 0;
  /// False when the odd-vertex matching used the greedy fallback.
  bool exact = true;
};

inline constexpr std::size_t kExactMatchingLimit = 14;

/// Pairs odd-degree vertices by a minimum-total-hop matching (exact up to
/// kExactMatchingLimit odd vertices, greedy nearest pair beyond) and
/// duplicates the edges of each pair's shortest path. Throws kDisconnected
/// when some edge-bearing part of the graph is unreachable.
UndirectedEulerization eulerize_undirected(const UndirectedGraph& graph);

/// Hierholzer over an all-even multigraph, lowest-id neighbour first.
std::vector<std::size_t> undirected_euler_circuit(std::size_t node_count,
                                                  std::span<const std::pair<std::size_t, std::size_t>> edges,
                                                  std::size_t start);

/// Relative frequency of each canonical voice-leading operator.
using OperatorHistogram = std::map<std::vector<int>, double>;

/// Histogram over consecutive pairs of a pcset walk. Throws with fewer than
/// two entries.
OperatorHistogram vl_histogram(std::span<const PitchClassSet> walk);

/// Total-variation distance: half the L1 distance over the union of keys.
double compare_histograms(const OperatorHistogram& a, const OperatorHistogram& b);

}  // namespace scorenet
