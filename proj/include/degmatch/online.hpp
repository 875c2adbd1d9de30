#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "degmatch/graph.hpp"
#include "degmatch/rng.hpp"

namespace degmatch {

/// An online matching policy. One instance serves one run at a time: begin()
/// is called before the first arrival, then choose() once per arriving online
/// node that has at least one unmatched neighbor. The policy never sees
/// future arrivals.
class OnlineAlgorithm {
 public:
  virtual ~OnlineAlgorithm() = default;

  virtual void begin(std::size_t n_offline, Rng& rng) {
    (void)n_offline;
    (void)rng;
  }

  /// Must return a member of `unmatched` or nullopt (skip).
  virtual std::optional<NodeIndex> choose(NodeIndex online,
                                          std::span<const NodeIndex> unmatched,
                                          Rng& rng) = 0;

  /// Greedy policies never skip a node that has an unmatched neighbor.
  virtual bool is_greedy() const { return true; }

  virtual std::string name() const = 0;
};

/// Feeds arrivals to `algo` in g.arrival_order() and collects its picks.
/// Throws ContractViolation if the policy returns a node it was not offered.
Matching run_online(const BipartiteGraph& g, OnlineAlgorithm& algo, Rng& rng);

/// Same, with the policy's random stream derived from `seed`.
Matching run_online(const BipartiteGraph& g, OnlineAlgorithm& algo,
                    const TrialSeed& seed);

}  // namespace degmatch
