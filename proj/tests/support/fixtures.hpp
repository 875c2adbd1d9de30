#pragma once

#include <algorithm>
#include <random>

#include "degmatch/graph.hpp"
#include "degmatch/rng.hpp"

namespace fixtures {

using degmatch::BipartiteGraph;
using degmatch::NodeIndex;

// n = m = 6: u1..u3 see v1..v3, and u4, u5, u6 see (v1, v4), (v2, v5),
// (v3, v6). MinPredictedDegree with true degrees matches only u4..u6 while a
// perfect matching exists.
inline BipartiteGraph hard_instance() {
  return BipartiteGraph(6, {{0, 1, 2, 3}, {0, 1, 2, 4}, {0, 1, 2, 5}, {3}, {4}, {5}});
}

// Each of the n * m edges present independently with probability p.
inline BipartiteGraph random_graph(std::size_t n, std::size_t m, double p,
                                   degmatch::Rng& rng) {
  std::bernoulli_distribution edge(p);
  BipartiteGraph::AdjacencyLists adj(m);
  for (auto& list : adj) {
    for (NodeIndex u = 0; u < n; ++u) {
      if (edge(rng)) list.push_back(u);
    }
  }
  return BipartiteGraph(n, std::move(adj));
}

// Random arrival order on top of random_graph.
inline BipartiteGraph shuffled_random_graph(std::size_t n, std::size_t m, double p,
                                            degmatch::Rng& rng) {
  auto g = random_graph(n, m, p, rng);
  std::vector<NodeIndex> order(m);
  for (std::size_t j = 0; j < m; ++j) order[j] = static_cast<NodeIndex>(j);
  std::shuffle(order.begin(), order.end(), rng);
  return g.with_arrival_order(std::move(order));
}

}  // namespace fixtures
