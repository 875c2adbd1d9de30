#include "degmatch/oracle.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <queue>
#include <stdexcept>

namespace degmatch {
namespace {

constexpr NodeIndex kNil = std::numeric_limits<NodeIndex>::max();
constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

// Hopcroft-Karp with the online side as the BFS side.
class HopcroftKarp {
 public:
  explicit HopcroftKarp(const BipartiteGraph& g)
      : g_(g),
        mate_online_(g.m_online(), kNil),
        mate_offline_(g.n_offline(), kNil),
        dist_(g.m_online(), kInf),
        next_edge_(g.m_online(), 0) {}

  void run() {
    while (bfs()) {
      std::fill(next_edge_.begin(), next_edge_.end(), 0);
      for (NodeIndex v = 0; v < g_.m_online(); ++v) {
        if (mate_online_[v] == kNil) dfs(v);
      }
    }
  }

  Matching matching() const {
    Matching m;
    for (NodeIndex v = 0; v < g_.m_online(); ++v) {
      if (mate_online_[v] != kNil) m.pairs.push_back({mate_online_[v], v});
    }
    return m;
  }

 private:
  bool bfs() {
    std::queue<NodeIndex> queue;
    for (NodeIndex v = 0; v < g_.m_online(); ++v) {
      if (mate_online_[v] == kNil) {
        dist_[v] = 0;
        queue.push(v);
      } else {
        dist_[v] = kInf;
      }
    }
    bool found = false;
    while (!queue.empty()) {
      const NodeIndex v = queue.front();
      queue.pop();
      for (NodeIndex u : g_.neighbors(v)) {
        const NodeIndex w = mate_offline_[u];
        if (w == kNil) {
          found = true;
        } else if (dist_[w] == kInf) {
          dist_[w] = dist_[v] + 1;
          queue.push(w);
        }
      }
    }
    return found;
  }

  // Recursion depth is bounded by the number of BFS layers.
  bool dfs(NodeIndex v) {
    const auto nbrs = g_.neighbors(v);
    for (auto& k = next_edge_[v]; k < nbrs.size(); ++k) {
      const NodeIndex u = nbrs[k];
      const NodeIndex w = mate_offline_[u];
      if (w == kNil || (dist_[w] == dist_[v] + 1 && dfs(w))) {
        mate_offline_[u] = v;
        mate_online_[v] = u;
        ++k;
        return true;
      }
    }
    dist_[v] = kInf;
    return false;
  }

  const BipartiteGraph& g_;
  std::vector<NodeIndex> mate_online_;
  std::vector<NodeIndex> mate_offline_;
  std::vector<std::size_t> dist_;
  std::vector<std::size_t> next_edge_;
};

}  // namespace

Matching maximum_matching(const BipartiteGraph& g) {
  require_valid(g);
  HopcroftKarp hk(g);
  hk.run();
  return hk.matching();
}

std::size_t max_matching(const BipartiteGraph& g) {
  return maximum_matching(g).size();
}

std::size_t brute_force_matching(const BipartiteGraph& g) {
  require_valid(g);
  if (g.n_offline() > kBruteForceMaxOffline) {
    throw std::invalid_argument("brute_force_matching: n_offline = " +
                                std::to_string(g.n_offline()) +
                                " exceeds the cap of " +
                                std::to_string(kBruteForceMaxOffline));
  }
  // reachable[mask]: some matching of the online nodes seen so far covers
  // exactly the offline set `mask`.
  const std::size_t states = std::size_t{1} << g.n_offline();
  std::vector<bool> reachable(states, false), next;
  reachable[0] = true;
  for (NodeIndex v = 0; v < g.m_online(); ++v) {
    next = reachable;
    for (std::size_t mask = 0; mask < states; ++mask) {
      if (!reachable[mask]) continue;
      for (NodeIndex u : g.neighbors(v)) {
        const std::size_t bit = std::size_t{1} << u;
        if (!(mask & bit)) next[mask | bit] = true;
      }
    }
    reachable.swap(next);
  }
  std::size_t best = 0;
  for (std::size_t mask = 0; mask < states; ++mask) {
    if (reachable[mask]) {
      best = std::max<std::size_t>(best, std::popcount(mask));
    }
  }
  return best;
}

HallCertificate hall_subset(const BipartiteGraph& g) {
  require_valid(g);
  const auto deg = g.offline_degrees();

  std::vector<bool> in_neighborhood(g.m_online(), false);
  for (NodeIndex v = 0; v < g.m_online(); ++v) {
    for (NodeIndex u : g.neighbors(v)) {
      if (deg[u] == 1) in_neighborhood[v] = true;
    }
  }

  // An offline node qualifies unless one of its neighbours is outside N(U1).
  std::vector<bool> qualifies(g.n_offline(), true);
  for (NodeIndex v = 0; v < g.m_online(); ++v) {
    if (in_neighborhood[v]) continue;
    for (NodeIndex u : g.neighbors(v)) qualifies[u] = false;
  }

  HallCertificate cert;
  for (NodeIndex u = 0; u < g.n_offline(); ++u) {
    if (qualifies[u]) cert.s_star.push_back(u);
  }
  for (NodeIndex v = 0; v < g.m_online(); ++v) {
    if (in_neighborhood[v]) cert.n_s_star.push_back(v);
  }
  cert.bound = g.n_offline() - (cert.s_star.size() - cert.n_s_star.size());
  return cert;
}

}  // namespace degmatch
