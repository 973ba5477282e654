#pragma once

#include <cstddef>
#include <cstdint>
#include <map>

#include "scorenet/network.h"

namespace scorenet {

struct CommunityPartition {
  std::map<int, int> community;  // node id -> community, numbered 0.. by lowest member id
  double modularity = 0.0;
  std::size_t community_count = 0;
};

/// Louvain modularity maximisation on the undirected projection of the
/// network (edge weight = sum of both directions). Node visiting order is
/// shuffled from `seed`, so results are reproducible per seed.
CommunityPartition detect_communities(const ScoreNetwork& network, std::uint64_t seed = 0,
                                      double resolution = 1.0);

/// Newman modularity of `community` on the same undirected projection.
double modularity(const ScoreNetwork& network, const std::map<int, int>& community,
                  double resolution = 1.0);

}  // namespace scorenet
