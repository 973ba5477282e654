#include "scorenet/community.h"

#include <algorithm>
#include <numeric>
#include <vector>

#include "scorenet/random.h"

namespace scorenet {
namespace {

// Symmetric weight matrix in adjacency-list form. A self-loop of weight w
// contributes 2w to the diagonal so that k_i = sum_j A_ij.
struct Projection {
  std::vector<std::map<std::size_t, double>> adj;
  std::vector<double> strength;
  double two_m = 0.0;

  void finish() {
    strength.assign(adj.size(), 0.0);
    for (std::size_t i = 0; i < adj.size(); ++i) {
      for (const auto& [j, a] : adj[i]) strength[i] += a;
    }
    two_m = std::accumulate(strength.begin(), strength.end(), 0.0);
  }
};

Projection project(const ScoreNetwork& network, std::map<int, std::size_t>& index) {
  for (const auto& [id, node] : network.nodes) index.emplace(id, index.size());
  Projection p;
  p.adj.resize(index.size());
  for (const auto& [edge, weight] : network.edges) {
    const std::size_t s = index.at(edge.first);
    const std::size_t t = index.at(edge.second);
    const double w = static_cast<double>(weight);
    if (s == t) {
      p.adj[s][s] += 2.0 * w;
    } else {
      p.adj[s][t] += w;
      p.adj[t][s] += w;
    }
  }
  p.finish();
  return p;
}

// One Louvain level: local moves until no node changes community.
// Returns true when at least one node moved.
bool local_moves(const Projection& g, std::vector<std::size_t>& comm, double resolution, Rng& rng) {
  const std::size_t n = g.adj.size();
  std::vector<double> total(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) total[comm[i]] += g.strength[i];
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);

  bool any = false;
  for (int pass = 0; pass < 1000; ++pass) {
    bool moved = false;
    for (std::size_t i : order) {
      const std::size_t current = comm[i];
      std::map<std::size_t, double> links;
      for (const auto& [j, a] : g.adj[i]) {
        if (j != i) links[comm[j]] += a;
      }
      total[current] -= g.strength[i];
      const double scale = resolution * g.strength[i] / g.two_m;
      std::size_t best = current;
      double best_gain = links[current] - total[current] * scale;
      for (const auto& [c, w] : links) {
        const double gain = w - total[c] * scale;
        if (gain > best_gain + 1e-12) {
          best = c;
          best_gain = gain;
        }
      }
      total[best] += g.strength[i];
      if (best != current) {
        comm[i] = best;
        moved = true;
      }
    }
    if (!moved) break;
    any = true;
  }
  return any;
}

// Renumbers communities densely (in order of first member) and returns the count.
std::size_t compact(std::vector<std::size_t>& comm) {
  std::map<std::size_t, std::size_t> remap;
  for (auto& c : comm) c = remap.try_emplace(c, remap.size()).first->second;
  return remap.size();
}

Projection aggregate(const Projection& g, const std::vector<std::size_t>& comm, std::size_t count) {
  Projection out;
  out.adj.resize(count);
  for (std::size_t i = 0; i < g.adj.size(); ++i) {
    for (const auto& [j, a] : g.adj[i]) out.adj[comm[i]][comm[j]] += a;
  }
  out.finish();
  return out;
}

}  // namespace

double modularity(const ScoreNetwork& network, const std::map<int, int>& community,
                  double resolution) {
  std::map<int, std::size_t> index;
  const Projection g = project(network, index);
  if (g.two_m <= 0.0) return 0.0;
  std::vector<int> label(g.adj.size());
  for (const auto& [id, i] : index) label[i] = community.at(id);

  std::map<int, double> inside;
  std::map<int, double> total;
  for (std::size_t i = 0; i < g.adj.size(); ++i) {
    total[label[i]] += g.strength[i];
    for (const auto& [j, a] : g.adj[i]) {
      if (label[j] == label[i]) inside[label[i]] += a;
    }
  }
  double q = 0.0;
  for (const auto& [c, tot] : total) {
    q += inside[c] / g.two_m - resolution * (tot / g.two_m) * (tot / g.two_m);
  }
  return q;
}

CommunityPartition detect_communities(const ScoreNetwork& network, std::uint64_t seed,
                                      double resolution) {
  std::map<int, std::size_t> index;
  Projection g = project(network, index);
  const std::size_t n = g.adj.size();

  std::vector<std::size_t> membership(n);
  std::iota(membership.begin(), membership.end(), 0);
  CommunityPartition out;
  if (n > 0 && g.two_m > 0.0) {
    Rng rng(seed);
    for (int level = 0; level < 64; ++level) {
      std::vector<std::size_t> comm(g.adj.size());
      std::iota(comm.begin(), comm.end(), 0);
      if (!local_moves(g, comm, resolution, rng)) break;
      const std::size_t count = compact(comm);
      for (auto& m : membership) m = comm[m];
      if (count == g.adj.size()) break;
      g = aggregate(g, comm, count);
    }
  }
  compact(membership);
  for (const auto& [id, i] : index) out.community[id] = static_cast<int>(membership[i]);
  out.community_count = n == 0 ? 0 : *std::max_element(membership.begin(), membership.end()) + 1;
  out.modularity = modularity(network, out.community, resolution);
  return out;
}

}  // namespace scorenet
