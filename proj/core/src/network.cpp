#include "scorenet/network.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "scorenet/error.h"

namespace scorenet {
namespace {

ScoreNetwork network_of(const LabeledSeries& series) {
  ScoreNetwork net;
  for (int v : series.values) {
    auto [it, inserted] = net.nodes.try_emplace(v);
    if (inserted) it->second.label = series.pcset(v);
    ++it->second.count;
  }
  for (std::size_t i = 0; i + 1 < series.values.size(); ++i) {
    ++net.edges[{series.values[i], series.values[i + 1]}];
  }
  return net;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::size_t ScoreNetwork::total_weight() const {
  std::size_t total = 0;
  for (const auto& [edge, weight] : edges) total += weight;
  return total;
}

ScoreNetwork build_network(const LabeledSeries& series) {
  if (series.size() < 2) throw Error(ErrorCode::kInvalidArgument, "network needs at least two events");
  return network_of(series);
}

std::size_t NodeDegree::by(DegreeKey key) const noexcept {
  switch (key) {
    case DegreeKey::kOut: return out;
    case DegreeKey::kIn: return in;
    case DegreeKey::kTotal: break;
  }
  return total();
}

std::vector<int> DegreeStats::degrees(DegreeKey key) const {
  std::vector<int> out;
  out.reserve(nodes.size());
  for (const auto& [id, d] : nodes) out.push_back(static_cast<int>(d.by(key)));
  return out;
}

DegreeStats degree_stats(const ScoreNetwork& network) {
  DegreeStats stats;
  for (const auto& [id, node] : network.nodes) stats.nodes[id];
  for (const auto& [edge, weight] : network.edges) {
    auto& src = stats.nodes[edge.first];
    auto& dst = stats.nodes[edge.second];
    ++src.out;
    src.weighted_out += weight;
    ++dst.in;
    dst.weighted_in += weight;
  }
  if (!network.nodes.empty()) {
    stats.mean_degree =
        static_cast<double>(network.edge_count()) / static_cast<double>(network.node_count());
  }
  return stats;
}

std::vector<LayerNetwork> layer_networks(const LabeledSeries& series,
                                         const Segmentation& segmentation) {
  if (segmentation.breakpoints.empty() || segmentation.breakpoints.back() != series.size()) {
    throw Error(ErrorCode::kInvalidArgument, "segmentation does not match the series");
  }
  std::vector<LayerNetwork> layers;
  for (const auto& [begin, end] : segmentation.segments()) {
    const LabeledSeries part = slice_series(series, begin, end);
    LayerNetwork layer;
    layer.network = network_of(part);
    layer.segment = layers.size();
    layer.begin = begin;
    layer.end = end;
    layer.first_bar = series.bars[begin];
    layer.last_bar = series.bars[end - 1];
    layers.push_back(std::move(layer));
  }
  return layers;
}

std::vector<int> shared_nodes(const ScoreNetwork& a, const ScoreNetwork& b) {
  std::vector<int> out;
  for (const auto& [id, node] : a.nodes) {
    if (b.has_node(id)) out.push_back(id);
  }
  return out;
}

double mcs_similarity(const ScoreNetwork& a, const ScoreNetwork& b) {
  if (a.nodes.empty() || b.nodes.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "similarity of an empty graph");
  }
  // Nodes are matched by pcset label, so the common subgraph is the
  // intersection graph and its largest connected piece is the MCS.
  std::map<PitchClassSet, std::size_t> common;
  std::set<PitchClassSet> labels_b;
  for (const auto& [id, node] : b.nodes) labels_b.insert(node.label);
  for (const auto& [id, node] : a.nodes) {
    if (labels_b.count(node.label)) common.emplace(node.label, common.size());
  }
  if (common.empty()) return 0.0;

  std::set<std::pair<PitchClassSet, PitchClassSet>> edges_b;
  for (const auto& [edge, w] : b.edges) {
    edges_b.emplace(b.nodes.at(edge.first).label, b.nodes.at(edge.second).label);
  }
  DisjointSets components(common.size());
  for (const auto& [edge, w] : a.edges) {
    const auto& s = a.nodes.at(edge.first).label;
    const auto& t = a.nodes.at(edge.second).label;
    if (common.count(s) && common.count(t) && edges_b.count({s, t})) {
      components.unite(common.at(s), common.at(t));
    }
  }
  std::map<std::size_t, std::size_t> sizes;
  std::size_t largest = 0;
  for (std::size_t i = 0; i < common.size(); ++i) largest = std::max(largest, ++sizes[components.find(i)]);
  return static_cast<double>(largest) /
         static_cast<double>(std::max(a.node_count(), b.node_count()));
}

double mcs_distance(const ScoreNetwork& a, const ScoreNetwork& b) { return 1.0 - mcs_similarity(a, b); }

std::vector<std::vector<double>> similarity_matrix(const std::vector<LayerNetwork>& layers) {
  const std::size_t n = layers.size();
  std::vector<std::vector<double>> out(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      out[i][j] = out[j][i] = mcs_similarity(layers[i].network, layers[j].network);
    }
  }
  return out;
}

}  // namespace scorenet
