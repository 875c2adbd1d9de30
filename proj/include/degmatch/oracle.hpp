#pragma once

#include <cstddef>
#include <vector>

#include "degmatch/graph.hpp"

namespace degmatch {

/// Maximum matching via Hopcroft-Karp, O(E sqrt(V)).
Matching maximum_matching(const BipartiteGraph& g);
std::size_t max_matching(const BipartiteGraph& g);

inline constexpr std::size_t kBruteForceMaxOffline = 12;

/// Exhaustive subset DP; throws std::invalid_argument when n_offline > 12.
std::size_t brute_force_matching(const BipartiteGraph& g);

/// Hall deficiency certificate. U1 are the offline nodes of true degree 1,
/// n_s_star = N(U1), and s_star holds every offline node whose whole
/// neighbourhood lies in N(U1) (isolated nodes included). Then
/// mu(G) <= bound = n - (|s_star| - |n_s_star|).
struct HallCertificate {
  std::vector<NodeIndex> s_star;
  std::vector<NodeIndex> n_s_star;
  std::size_t bound = 0;
};

HallCertificate hall_subset(const BipartiteGraph& g);

}  // namespace degmatch
