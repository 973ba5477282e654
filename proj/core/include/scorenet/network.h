#pragma once

// Directed weighted score networks: nodes are pcset ids, edges count the
// successions observed in a series.

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "scorenet/pcset.h"
#include "scorenet/segmentation.h"
#include "scorenet/sequence.h"

namespace scorenet {

using Edge = std::pair<int, int>;  // (source id, target id)

struct NetworkNode {
  PitchClassSet label;
  std::size_t count = 0;  // occurrences in the series the network was built from
};

struct ScoreNetwork {
  std::map<int, NetworkNode> nodes;
  std::map<Edge, std::size_t> edges;  // traversal counts, all >= 1

  std::size_t node_count() const noexcept { return nodes.size(); }
  std::size_t edge_count() const noexcept { return edges.size(); }
  std::size_t total_weight() const;
  bool has_node(int id) const { return nodes.count(id) != 0; }
};

/// One directed edge increment per consecutive pair. Throws when |series| < 2.
ScoreNetwork build_network(const LabeledSeries& series);

enum class DegreeKey { kTotal, kOut, kIn };

struct NodeDegree {
  std::size_t in = 0;   // distinct incoming edges
  std::size_t out = 0;  // distinct outgoing edges
  std::size_t weighted_in = 0;
  std::size_t weighted_out = 0;

  std::size_t total() const noexcept { return in + out; }
  std::size_t weighted() const noexcept { return weighted_in + weighted_out; }
  std::size_t by(DegreeKey key) const noexcept;
};

struct DegreeStats {
  std::map<int, NodeDegree> nodes;
  /// Distinct edges per node (the mean out-degree, equal to the mean in-degree).
  double mean_degree = 0.0;

  std::vector<int> degrees(DegreeKey key = DegreeKey::kTotal) const;
};

DegreeStats degree_stats(const ScoreNetwork& network);

struct LayerNetwork {
  ScoreNetwork network;
  std::size_t segment = 0;
  std::size_t begin = 0;  // event range [begin, end) in the parent series
  std::size_t end = 0;
  int first_bar = 1;
  int last_bar = 1;
};

/// One network per segment, built from that segment's consecutive pairs only.
std::vector<LayerNetwork> layer_networks(const LabeledSeries& series,
                                         const Segmentation& segmentation);

/// Ids present in both layers: the pivot chords between them.
std::vector<int> shared_nodes(const ScoreNetwork& a, const ScoreNetwork& b);

/// Maximal-common-subgraph similarity on pcset-labelled graphs: node count of
/// the largest weakly connected component of the intersection graph, divided
/// by the larger node count. Throws on an empty graph.
double mcs_similarity(const ScoreNetwork& a, const ScoreNetwork& b);
double mcs_distance(const ScoreNetwork& a, const ScoreNetwork& b);

/// Symmetric layer-by-layer similarity matrix.
std::vector<std::vector<double>> similarity_matrix(const std::vector<LayerNetwork>& layers);

}  // namespace scorenet
