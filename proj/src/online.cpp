#include "degmatch/online.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace degmatch {

Matching run_online(const BipartiteGraph& g, OnlineAlgorithm& algo, Rng& rng) {
  require_valid(g);

  Matching result;
  std::vector<bool> matched(g.n_offline(), false);
  std::vector<NodeIndex> unmatched;
  algo.begin(g.n_offline(), rng);

  for (NodeIndex v : g.arrival_order()) {
    unmatched.clear();
    for (NodeIndex u : g.neighbors(v)) {
      if (!matched[u]) unmatched.push_back(u);
    }
    if (unmatched.empty()) continue;

    const auto pick = algo.choose(v, unmatched, rng);
    if (!pick) continue;
    if (std::find(unmatched.begin(), unmatched.end(), *pick) == unmatched.end()) {
      std::ostringstream os;
      os << algo.name() << " picked offline node " << *pick
         << " for online node " << v
         << ", which is matched already or not a neighbor";
      throw ContractViolation(os.str());
    }
    matched[*pick] = true;
    result.pairs.push_back({*pick, v});
  }
  return result;
}

Matching run_online(const BipartiteGraph& g, OnlineAlgorithm& algo,
                    const TrialSeed& seed) {
  Rng rng = seed.engine(Stream::algorithm);
  return run_online(g, algo, rng);
}

}  // namespace degmatch
