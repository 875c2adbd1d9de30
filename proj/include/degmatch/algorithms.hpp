#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "degmatch/graph.hpp"
#include "degmatch/online.hpp"

namespace degmatch {

using AlgorithmPtr = std::unique_ptr<OnlineAlgorithm>;

/// Matches each arrival to its unmatched neighbor of smallest sigma. Ties go
/// to the smallest offline index. Never skips.
AlgorithmPtr min_predicted_degree(DegreePredictor sigma);

/// min_predicted_degree with sigma = true degrees of g.
AlgorithmPtr min_degree(const BipartiteGraph& g);

/// Draws one U(0,1) cost per offline node at begin(), then behaves like
/// min_predicted_degree over those costs.
AlgorithmPtr ranking();

/// Uniformly random unmatched neighbor.
AlgorithmPtr random_greedy();

/// Runs `base` unchanged; whenever it skips a node that has unmatched
/// neighbors, falls back to the min-predicted-degree rule.
AlgorithmPtr mpd_augment(AlgorithmPtr base, DegreePredictor sigma);

/// Never matches anything. Useful as an augmentation base.
AlgorithmPtr always_skip();

/// Non-greedy demo policy: skips every second offered arrival and matches
/// the others to their lowest-index unmatched neighbor.
AlgorithmPtr skip_alternate();

/// Side information a named policy may need.
struct AlgorithmContext {
  const BipartiteGraph* graph = nullptr;
  const DegreePredictor* predictor = nullptr;
};

/// Builds a policy from its CLI name: "mpd", "mindegree", "ranking",
/// "greedy", "skip-alternate", "always-skip" or "mpd-augment:<base>".
/// Throws std::invalid_argument for unknown names or missing context.
AlgorithmPtr make_algorithm(std::string_view name, const AlgorithmContext& ctx);

/// True when make_algorithm would accept `name` given full context.
bool is_known_algorithm(std::string_view name);

}  // namespace degmatch
