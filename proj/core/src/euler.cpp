#include "scorenet/euler.h"

#include <algorithm>
#include <limits>
#include <numeric>

#include "scorenet/error.h"

namespace scorenet {
namespace {

// Successive shortest paths with Bellman-Ford; graphs here have at most a
// few hundred nodes.
class MinCostFlow {
 public:
  explicit MinCostFlow(std::size_t n) : adj_(n) {}

  std::size_t add_arc(std::size_t from, std::size_t to, long long cap, long long cost) {
    adj_[from].push_back(arcs_.size());
    arcs_.push_back({to, cap, cost});
    adj_[to].push_back(arcs_.size());
    arcs_.push_back({from, 0, -cost});
    return arcs_.size() - 2;
  }

  /// Pushes up to `limit` units from s to t; returns the amount sent.
  long long run(std::size_t s, std::size_t t, long long limit) {
    constexpr long long kInf = std::numeric_limits<long long>::max() / 4;
    const std::size_t n = adj_.size();
    long long sent = 0;
    while (sent < limit) {
      std::vector<long long> dist(n, kInf);
      std::vector<std::size_t> via(n, SIZE_MAX);
      dist[s] = 0;
      for (std::size_t round = 0; round + 1 < n; ++round) {
        bool changed = false;
        for (std::size_t u = 0; u < n; ++u) {
          if (dist[u] == kInf) continue;
          for (std::size_t a : adj_[u]) {
            const Arc& arc = arcs_[a];
            if (arc.cap > 0 && dist[u] + arc.cost < dist[arc.to]) {
              dist[arc.to] = dist[u] + arc.cost;
              via[arc.to] = a;
              changed = true;
            }
          }
        }
        if (!changed) break;
      }
      if (dist[t] == kInf) break;
      long long push = limit - sent;
      for (std::size_t v = t; v != s; v = arcs_[via[v] ^ 1].to) push = std::min(push, arcs_[via[v]].cap);
      for (std::size_t v = t; v != s; v = arcs_[via[v] ^ 1].to) {
        arcs_[via[v]].cap -= push;
        arcs_[via[v] ^ 1].cap += push;
      }
      sent += push;
    }
    return sent;
  }

  long long flow(std::size_t arc) const { return arcs_[arc ^ 1].cap; }

 private:
  struct Arc {
    std::size_t to;
    long long cap;
    long long cost;
  };
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Arc> arcs_;
};

bool weakly_connected(const std::map<int, std::size_t>& index, const std::set<Edge>& support) {
  std::vector<std::size_t> parent(index.size());
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = index.size();
  for (const auto& [a, b] : support) {
    const std::size_t ra = find(index.at(a));
    const std::size_t rb = find(index.at(b));
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return components == 1;
}

}  // namespace

WalkStats walk_stats(std::span<const int> walk) {
  WalkStats stats;
  stats.nodes_visited = walk.size();
  stats.edges_traversed = walk.empty() ? 0 : walk.size() - 1;
  std::set<Edge> distinct;
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) distinct.emplace(walk[i], walk[i + 1]);
  stats.distinct_edges = distinct.size();
  stats.self_loops = static_cast<std::size_t>(
      std::count_if(distinct.begin(), distinct.end(), [](const Edge& e) { return e.first == e.second; }));
  stats.duplicated = stats.edges_traversed - stats.distinct_edges;
  return stats;
}

WalkStats walk_stats(const LabeledSeries& series) { return walk_stats(series.values); }

std::size_t EulerizedGraph::multiplicity(const Edge& e) const {
  if (!support.count(e)) return 0;
  const auto it = duplications.find(e);
  return 1 + (it == duplications.end() ? 0 : it->second);
}

std::size_t EulerizedGraph::total_duplications() const {
  std::size_t total = 0;
  for (const auto& [e, k] : duplications) total += k;
  return total;
}

EulerizedGraph eulerize_directed(const std::set<Edge>& support) {
  if (support.empty()) throw Error(ErrorCode::kEmptyInput, "cannot eulerize a graph without edges");
  std::map<int, std::size_t> index;
  for (const auto& [a, b] : support) {
    index.try_emplace(a, index.size());
    index.try_emplace(b, index.size());
  }
  if (!weakly_connected(index, support)) {
    throw Error(ErrorCode::kDisconnected, "edge support is not weakly connected");
  }
  const std::size_t n = index.size();
  std::vector<long long> balance(n, 0);  // in - out
  for (const auto& [a, b] : support) {
    --balance[index.at(a)];
    ++balance[index.at(b)];
  }

  EulerizedGraph out;
  out.support = support;
  const std::size_t source = n;
  const std::size_t sink = n + 1;
  MinCostFlow mcf(n + 2);
  long long needed = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (balance[v] > 0) {
      mcf.add_arc(source, v, balance[v], 0);
      needed += balance[v];
    } else if (balance[v] < 0) {
      mcf.add_arc(v, sink, -balance[v], 0);
    }
  }
  if (needed == 0) return out;
  const long long unbounded = needed;
  std::vector<std::pair<Edge, std::size_t>> edge_arcs;
  for (const Edge& e : support) {
    if (e.first == e.second) continue;
    edge_arcs.emplace_back(e, mcf.add_arc(index.at(e.first), index.at(e.second), unbounded, 1));
  }
  if (mcf.run(source, sink, needed) != needed) {
    throw Error(ErrorCode::kInfeasible,
                "imbalance cannot be routed along the support (graph is not strongly connected)");
  }
  for (const auto& [e, arc] : edge_arcs) {
    if (const long long f = mcf.flow(arc); f > 0) out.duplications[e] = static_cast<std::size_t>(f);
  }
  return out;
}

EulerizedGraph eulerize_directed(const ScoreNetwork& network) {
  std::set<Edge> support;
  for (const auto& [e, w] : network.edges) support.insert(e);
  return eulerize_directed(support);
}

Circuit euler_circuit(const EulerizedGraph& graph, int start) {
  std::map<int, std::vector<int>> succ;  // targets ascending, repeated by multiplicity
  std::map<int, long long> balance;
  for (const Edge& e : graph.support) {
    const std::size_t k = graph.multiplicity(e);
    auto& list = succ[e.first];
    list.insert(list.end(), k, e.second);
    succ.try_emplace(e.second);
    balance[e.first] -= static_cast<long long>(k);
    balance[e.second] += static_cast<long long>(k);
  }
  for (const auto& [v, b] : balance) {
    if (b != 0) throw Error(ErrorCode::kInvalidArgument, "graph is not balanced; eulerize it first");
  }
  if (!succ.count(start) || succ.at(start).empty()) {
    throw Error(ErrorCode::kInvalidArgument, "start node " + std::to_string(start) + " has no outgoing edges");
  }
  std::map<int, std::size_t> next;
  std::vector<int> stack{start};
  Circuit circuit;
  while (!stack.empty()) {
    const int v = stack.back();
    auto& i = next[v];
    const auto& list = succ[v];
    if (i < list.size()) {
      stack.push_back(list[i++]);
    } else {
      circuit.nodes.push_back(v);
      stack.pop_back();
    }
  }
  std::reverse(circuit.nodes.begin(), circuit.nodes.end());
  if (circuit.edges_traversed() != graph.total_edges()) {
    throw Error(ErrorCode::kDisconnected, "edges unreachable from the start node");
  }
  circuit.duplicated_edges = graph.total_duplications();
  return circuit;
}

std::optional<std::string> circuit_violation(const Circuit& circuit, const EulerizedGraph& graph) {
  if (circuit.nodes.size() < 2) return "circuit has no edges";
  if (circuit.nodes.front() != circuit.nodes.back()) return "circuit is not closed";
  std::map<Edge, std::size_t> used;
  for (std::size_t i = 0; i + 1 < circuit.nodes.size(); ++i) ++used[{circuit.nodes[i], circuit.nodes[i + 1]}];
  for (const auto& [e, k] : used) {
    const std::size_t want = graph.multiplicity(e);
    if (want == 0) return "edge " + std::to_string(e.first) + "->" + std::to_string(e.second) + " is not in the graph";
    if (k != want) {
      return "edge " + std::to_string(e.first) + "->" + std::to_string(e.second) + " used " + std::to_string(k) +
             " times, expected " + std::to_string(want);
    }
  }
  for (const Edge& e : graph.support) {
    if (!used.count(e)) return "edge " + std::to_string(e.first) + "->" + std::to_string(e.second) + " not covered";
  }
  return std::nullopt;
}

}  // namespace scorenet
