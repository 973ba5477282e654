#include "scorenet/generate.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "scorenet/error.h"
#include "scorenet/random.h"

namespace scorenet {
namespace {

using Adjacency = std::vector<std::vector<std::size_t>>;

Adjacency adjacency(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges) {
  Adjacency adj(n);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return adj;
}

// BFS parents from `source`, neighbours visited in ascending order.
std::vector<std::size_t> bfs_parents(const Adjacency& adj, std::size_t source, std::vector<std::size_t>& dist) {
  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> parent(adj.size(), kUnseen);
  dist.assign(adj.size(), kUnseen);
  dist[source] = 0;
  parent[source] = source;
  std::queue<std::size_t> queue;
  queue.push(source);
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop();
    for (std::size_t v : adj[u]) {
      if (dist[v] == kUnseen) {
        dist[v] = dist[u] + 1;
        parent[v] = u;
        queue.push(v);
      }
    }
  }
  return parent;
}

// Minimum-weight perfect matching on a complete graph by DP over subsets:
// the lowest unmatched vertex is always paired next.
std::vector<std::pair<std::size_t, std::size_t>> exact_matching(const std::vector<std::vector<std::size_t>>& d) {
  const std::size_t k = d.size();
  const std::size_t full = (std::size_t{1} << k) - 1;
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> best(full + 1, kInf);
  std::vector<std::size_t> choice(full + 1, 0);
  best[0] = 0;
  for (std::size_t mask = 0; mask < full; ++mask) {
    if (best[mask] == kInf) continue;
    std::size_t i = 0;
    while (mask & (std::size_t{1} << i)) ++i;
    for (std::size_t j = i + 1; j < k; ++j) {
      if (mask & (std::size_t{1} << j)) continue;
      const std::size_t next = mask | (std::size_t{1} << i) | (std::size_t{1} << j);
      const std::size_t cost = best[mask] + d[i][j];
      if (cost < best[next]) {
        best[next] = cost;
        choice[next] = (i << 8) | j;
      }
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t mask = full; mask != 0;) {
    const std::size_t i = choice[mask] >> 8;
    const std::size_t j = choice[mask] & 0xff;
    pairs.emplace_back(i, j);
    mask &= ~((std::size_t{1} << i) | (std::size_t{1} << j));
  }
  std::reverse(pairs.begin(), pairs.end());
  return pairs;
}

std::vector<std::pair<std::size_t, std::size_t>> greedy_matching(const std::vector<std::vector<std::size_t>>& d) {
  const std::size_t k = d.size();
  std::vector<bool> used(k, false);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t round = 0; round < k / 2; ++round) {
    std::size_t bi = 0, bj = 0;
    std::size_t bd = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < k; ++i) {
      if (used[i]) continue;
      for (std::size_t j = i + 1; j < k; ++j) {
        if (!used[j] && d[i][j] < bd) {
          bd = d[i][j];
          bi = i;
          bj = j;
        }
      }
    }
    used[bi] = used[bj] = true;
    pairs.emplace_back(bi, bj);
  }
  return pairs;
}

}  // namespace

std::vector<std::size_t> UndirectedGraph::degrees() const {
  std::vector<std::size_t> deg(node_count, 0);
  for (const auto& [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

UndirectedGraph barabasi_albert(const GenConfig& config) {
  if (config.m < 1 || config.m >= config.n) {
    throw Error(ErrorCode::kInvalidArgument, "Barabasi-Albert needs 1 <= m < n");
  }
  UndirectedGraph g;
  g.node_count = config.n;
  g.edges.reserve((config.n - config.m) * config.m);
  std::vector<std::uint64_t> degree(config.n, 0);
  Rng rng(config.seed);
  std::vector<std::size_t> targets;
  for (std::size_t node = config.m; node < config.n; ++node) {
    targets.clear();
    std::uint64_t total = 0;
    for (std::size_t v = 0; v < node; ++v) total += std::max<std::uint64_t>(degree[v], 1);
    for (std::size_t draw = 0; draw < config.m; ++draw) {
      std::uint64_t r = rng.below(total);
      std::size_t pick = 0;
      for (std::size_t v = 0; v < node; ++v) {
        if (std::find(targets.begin(), targets.end(), v) != targets.end()) continue;
        const std::uint64_t w = std::max<std::uint64_t>(degree[v], 1);
        if (r < w) {
          pick = v;
          break;
        }
        r -= w;
      }
      targets.push_back(pick);
      total -= std::max<std::uint64_t>(degree[pick], 1);
    }
    for (std::size_t t : targets) {
      g.edges.emplace_back(node, t);
      ++degree[t];
      ++degree[node];
    }
  }
  return g;
}

std::size_t choose_m(const ScoreNetwork& reference) {
  const std::size_t n = reference.node_count();
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "reference network needs at least two nodes");
  const auto m = static_cast<std::size_t>(
      std::llround(static_cast<double>(reference.edge_count()) / static_cast<double>(n)));
  return std::clamp<std::size_t>(m, 1, n - 1);
}

GeneratedScoreNetwork assign_chords(const UndirectedGraph& graph, const ScoreNetwork& reference) {
  if (graph.node_count != reference.node_count()) {
    throw Error(ErrorCode::kInvalidArgument, "generated graph has " + std::to_string(graph.node_count) +
                                                 " nodes, reference has " + std::to_string(reference.node_count()));
  }
  const std::vector<std::size_t> deg = graph.degrees();
  std::vector<std::size_t> generated(graph.node_count);
  std::iota(generated.begin(), generated.end(), 0);
  std::stable_sort(generated.begin(), generated.end(),
                   [&](std::size_t a, std::size_t b) { return deg[a] > deg[b]; });

  const DegreeStats stats = degree_stats(reference);
  std::vector<int> ref;
  for (const auto& [id, node] : reference.nodes) ref.push_back(id);
  std::sort(ref.begin(), ref.end(), [&](int a, int b) {
    const auto da = stats.nodes.at(a).total();
    const auto db = stats.nodes.at(b).total();
    if (da != db) return da > db;
    const auto ca = reference.nodes.at(a).count;
    const auto cb = reference.nodes.at(b).count;
    if (ca != cb) return ca > cb;
    return a < b;
  });

  GeneratedScoreNetwork out;
  out.graph = graph;
  out.labels.resize(graph.node_count);
  out.reference_ids.resize(graph.node_count);
  for (std::size_t rank = 0; rank < generated.size(); ++rank) {
    out.reference_ids[generated[rank]] = ref[rank];
    out.labels[generated[rank]] = reference.nodes.at(ref[rank]).label;
  }
  return out;
}

UndirectedEulerization eulerize_undirected(const UndirectedGraph& graph) {
  const Adjacency adj = adjacency(graph.node_count, graph.edges);
  UndirectedEulerization out;
  out.edges = graph.edges;
  if (graph.edges.empty()) return out;

  std::vector<std::size_t> dist;
  const std::size_t root = graph.edges.front().first;
  bfs_parents(adj, root, dist);
  for (std::size_t v = 0; v < graph.node_count; ++v) {
    if (!adj[v].empty() && dist[v] == std::numeric_limits<std::size_t>::max()) {
      throw Error(ErrorCode::kDisconnected, "graph is not connected");
    }
  }

  const std::vector<std::size_t> deg = graph.degrees();
  std::vector<std::size_t> odd;
  for (std::size_t v = 0; v < graph.node_count; ++v) {
    if (deg[v] % 2) odd.push_back(v);
  }
  if (odd.empty()) return out;

  std::vector<std::vector<std::size_t>> parents(odd.size());
  std::vector<std::vector<std::size_t>> d(odd.size(), std::vector<std::size_t>(odd.size(), 0));
  for (std::size_t i = 0; i < odd.size(); ++i) {
    parents[i] = bfs_parents(adj, odd[i], dist);
    for (std::size_t j = 0; j < odd.size(); ++j) d[i][j] = dist[odd[j]];
  }
  out.exact = odd.size() <= kExactMatchingLimit;
  const auto pairs = out.exact ? exact_matching(d) : greedy_matching(d);
  for (const auto& [i, j] : pairs) {
    for (std::size_t v = odd[j]; v != odd[i]; v = parents[i][v]) {
      out.edges.emplace_back(v, parents[i][v]);
      ++out.duplicated;
    }
  }
  return out;
}

std::vector<std::size_t> undirected_euler_circuit(std::size_t node_count,
                                                  std::span<const std::pair<std::size_t, std::size_t>> edges,
                                                  std::size_t start) {
  if (start >= node_count) throw Error(ErrorCode::kInvalidArgument, "start node out of range");
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> inc(node_count);  // (neighbour, edge)
  for (std::size_t e = 0; e < edges.size(); ++e) {
    inc[edges[e].first].emplace_back(edges[e].second, e);
    inc[edges[e].second].emplace_back(edges[e].first, e);
  }
  for (std::size_t v = 0; v < node_count; ++v) {
    if (inc[v].size() % 2) throw Error(ErrorCode::kInvalidArgument, "graph has odd-degree vertices");
    std::sort(inc[v].begin(), inc[v].end());
  }
  if (inc[start].empty()) throw Error(ErrorCode::kInvalidArgument, "start node has no edges");
  std::vector<bool> used(edges.size(), false);
  std::vector<std::size_t> next(node_count, 0);
  std::vector<std::size_t> stack{start};
  std::vector<std::size_t> circuit;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    auto& i = next[v];
    while (i < inc[v].size() && used[inc[v][i].second]) ++i;
    if (i < inc[v].size()) {
      used[inc[v][i].second] = true;
      stack.push_back(inc[v][i].first);
    } else {
      circuit.push_back(v);
      stack.pop_back();
    }
  }
  if (circuit.size() != edges.size() + 1) throw Error(ErrorCode::kDisconnected, "edges unreachable from the start node");
  std::reverse(circuit.begin(), circuit.end());
  return circuit;
}

OperatorHistogram vl_histogram(std::span<const PitchClassSet> walk) {
  if (walk.size() < 2) throw Error(ErrorCode::kInvalidArgument, "histogram needs at least one transition");
  std::map<std::vector<int>, std::size_t> counts;
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) ++counts[vl_operator_between(walk[i], walk[i + 1]).canonical()];
  const double total = static_cast<double>(walk.size() - 1);
  OperatorHistogram out;
  for (const auto& [key, c] : counts) out[key] = static_cast<double>(c) / total;
  return out;
}

double compare_histograms(const OperatorHistogram& a, const OperatorHistogram& b) {
  double sum = 0.0;
  for (const auto& [key, p] : a) {
    const auto it = b.find(key);
    sum += std::abs(p - (it == b.end() ? 0.0 : it->second));
  }
  for (const auto& [key, q] : b) {
    if (!a.count(key)) sum += q;
  }
  return 0.5 * sum;
}

}  // namespace scorenet
