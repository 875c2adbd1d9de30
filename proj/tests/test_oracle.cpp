#include <algorithm>
#include <set>

#include "doctest.h"
#include "degmatch/oracle.hpp"
#include "fixtures.hpp"

using namespace degmatch;

TEST_CASE("hopcroft-karp equals brute force on small random graphs") {
  Rng rng(61);
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = 1 + rng() % 10, m = 1 + rng() % 10;
    const double p = 0.05 + 0.1 * static_cast<double>(rng() % 6);
    const auto g = fixtures::random_graph(n, m, p, rng);
    const auto matching = maximum_matching(g);
    CHECK_FALSE(validate_matching(g, matching).has_value());
    CHECK(matching.size() == brute_force_matching(g));
  }
  CHECK_THROWS_AS(brute_force_matching(BipartiteGraph(13, {{0}})), std::invalid_argument);
}

TEST_CASE("complete and empty graphs") {
  for (std::size_t k : {1u, 2u, 5u, 40u}) {
    std::vector<NodeIndex> all(k);
    for (std::size_t u = 0; u < k; ++u) all[u] = static_cast<NodeIndex>(u);
    const BipartiteGraph complete(k, BipartiteGraph::AdjacencyLists(k, all));
    CHECK(max_matching(complete) == k);
  }
  CHECK(max_matching(BipartiteGraph(4, {{}, {}})) == 0);
  CHECK(max_matching(BipartiteGraph(0, {})) == 0);
}

TEST_CASE("hall subset on the hard instance") {
  const auto h = hall_subset(fixtures::hard_instance());
  CHECK(h.s_star.empty());
  CHECK(h.n_s_star.empty());
  CHECK(h.bound == 6);
}

TEST_CASE("hall subset with shared degree-one neighbours") {
  // Offline 0, 1 and 2 only see online 0; offline 3 sees online 0 and 1.
  const BipartiteGraph g(4, {{0, 1, 2, 3}, {3}});
  const auto h = hall_subset(g);
  CHECK(h.n_s_star == std::vector<NodeIndex>{0});
  CHECK(h.s_star == std::vector<NodeIndex>{0, 1, 2});
  CHECK(h.bound == 2);
  CHECK(max_matching(g) == 2);
}

TEST_CASE("hall subset counts isolated offline nodes") {
  const BipartiteGraph g(3, {{0}});
  const auto h = hall_subset(g);
  CHECK(h.s_star == std::vector<NodeIndex>{0, 1, 2});
  CHECK(h.bound == 1);
}

TEST_CASE("hall bound dominates the maximum matching and S* is maximal") {
  Rng rng(71);
  for (int k = 0; k < 300; ++k) {
    const std::size_t n = 1 + rng() % 30, m = 1 + rng() % 30;
    const auto g = fixtures::random_graph(n, m, 0.08, rng);
    const auto h = hall_subset(g);
    CHECK(h.bound >= max_matching(g));
    const std::set<NodeIndex> ns(h.n_s_star.begin(), h.n_s_star.end());
    const std::set<NodeIndex> s(h.s_star.begin(), h.s_star.end());
    CHECK(h.bound == n - (s.size() - ns.size()));
    std::vector<std::vector<NodeIndex>> nbrs(n);
    for (NodeIndex v = 0; v < m; ++v) {
      for (NodeIndex u : g.neighbors(v)) nbrs[u].push_back(v);
    }
    for (NodeIndex u = 0; u < n; ++u) {
      const bool inside = std::all_of(nbrs[u].begin(), nbrs[u].end(),
                                      [&](NodeIndex v) { return ns.count(v) > 0; });
      CHECK(inside == (s.count(u) > 0));
      if (nbrs[u].size() == 1) CHECK(ns.count(nbrs[u][0]) == 1);
    }
  }
}
