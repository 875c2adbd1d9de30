#include "degmatch/algorithms.hpp"

#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace degmatch {
namespace {

// argmin over `candidates` of cost[u], smallest index on ties.
NodeIndex argmin_cost(std::span<const NodeIndex> candidates,
                      const std::vector<double>& cost) {
  NodeIndex best = candidates.front();
  for (NodeIndex u : candidates.subspan(1)) {
    if (cost[u] < cost[best] || (cost[u] == cost[best] && u < best)) best = u;
  }
  return best;
}

class MinPredictedDegree final : public OnlineAlgorithm {
 public:
  MinPredictedDegree(DegreePredictor sigma, std::string name)
      : sigma_(std::move(sigma)), name_(std::move(name)) {}

  void begin(std::size_t n_offline, Rng&) override {
    if (sigma_.size() != n_offline) {
      throw std::invalid_argument(name_ + ": predictor covers " +
                                  std::to_string(sigma_.size()) +
                                  " offline nodes, graph has " +
                                  std::to_string(n_offline));
    }
  }

  std::optional<NodeIndex> choose(NodeIndex, std::span<const NodeIndex> unmatched,
                                  Rng&) override {
    return argmin_cost(unmatched, sigma_.values());
  }

  std::string name() const override { return name_; }

 private:
  DegreePredictor sigma_;
  std::string name_;
};

class Ranking final : public OnlineAlgorithm {
 public:
  void begin(std::size_t n_offline, Rng& rng) override {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    cost_.resize(n_offline);
    for (auto& c : cost_) c = unit(rng);
  }

  std::optional<NodeIndex> choose(NodeIndex, std::span<const NodeIndex> unmatched,
                                  Rng&) override {
    return argmin_cost(unmatched, cost_);
  }

  std::string name() const override { return "ranking"; }

 private:
  std::vector<double> cost_;
};

class RandomGreedy final : public OnlineAlgorithm {
 public:
  std::optional<NodeIndex> choose(NodeIndex, std::span<const NodeIndex> unmatched,
                                  Rng& rng) override {
    std::uniform_int_distribution<std::size_t> pick(0, unmatched.size() - 1);
    return unmatched[pick(rng)];
  }

  std::string name() const override { return "greedy"; }
};

class MpdAugment final : public OnlineAlgorithm {
 public:
  MpdAugment(AlgorithmPtr base, DegreePredictor sigma)
      : base_(std::move(base)),
        fallback_(std::move(sigma), "mpd") {}

  void begin(std::size_t n_offline, Rng& rng) override {
    fallback_.begin(n_offline, rng);
    base_->begin(n_offline, rng);
  }

  std::optional<NodeIndex> choose(NodeIndex online,
                                  std::span<const NodeIndex> unmatched,
                                  Rng& rng) override {
    if (auto pick = base_->choose(online, unmatched, rng)) return pick;
    return fallback_.choose(online, unmatched, rng);
  }

  std::string name() const override { return "mpd-augment:" + base_->name(); }

 private:
  AlgorithmPtr base_;
  MinPredictedDegree fallback_;
};

class AlwaysSkip final : public OnlineAlgorithm {
 public:
  std::optional<NodeIndex> choose(NodeIndex, std::span<const NodeIndex>,
                                  Rng&) override {
    return std::nullopt;
  }
  bool is_greedy() const override { return false; }
  std::string name() const override { return "always-skip"; }
};

class SkipAlternate final : public OnlineAlgorithm {
 public:
  void begin(std::size_t, Rng&) override { offered_ = 0; }

  std::optional<NodeIndex> choose(NodeIndex, std::span<const NodeIndex> unmatched,
                                  Rng&) override {
    if (offered_++ % 2 == 0) return std::nullopt;
    NodeIndex best = unmatched.front();
    for (NodeIndex u : unmatched) best = std::min(best, u);
    return best;
  }
  bool is_greedy() const override { return false; }
  std::string name() const override { return "skip-alternate"; }

 private:
  std::size_t offered_ = 0;
};

constexpr std::string_view kAugmentPrefix = "mpd-augment:";

}  // namespace

AlgorithmPtr min_predicted_degree(DegreePredictor sigma) {
  return std::make_unique<MinPredictedDegree>(std::move(sigma), "mpd");
}

AlgorithmPtr min_degree(const BipartiteGraph& g) {
  return std::make_unique<MinPredictedDegree>(DegreePredictor::true_degrees(g),
                                              "mindegree");
}

AlgorithmPtr ranking() { return std::make_unique<Ranking>(); }

AlgorithmPtr random_greedy() { return std::make_unique<RandomGreedy>(); }

AlgorithmPtr mpd_augment(AlgorithmPtr base, DegreePredictor sigma) {
  return std::make_unique<MpdAugment>(std::move(base), std::move(sigma));
}

AlgorithmPtr always_skip() { return std::make_unique<AlwaysSkip>(); }

AlgorithmPtr skip_alternate() { return std::make_unique<SkipAlternate>(); }

bool is_known_algorithm(std::string_view name) {
  if (name.starts_with(kAugmentPrefix)) {
    return is_known_algorithm(name.substr(kAugmentPrefix.size()));
  }
  return name == "mpd" || name == "mindegree" || name == "ranking" ||
         name == "greedy" || name == "skip-alternate" || name == "always-skip";
}

AlgorithmPtr make_algorithm(std::string_view name, const AlgorithmContext& ctx) {
  auto need_predictor = [&]() -> const DegreePredictor& {
    if (!ctx.predictor) {
      throw std::invalid_argument("algorithm '" + std::string(name) +
                                  "' needs a degree predictor");
    }
    return *ctx.predictor;
  };

  if (name.starts_with(kAugmentPrefix)) {
    auto base = make_algorithm(name.substr(kAugmentPrefix.size()), ctx);
    return mpd_augment(std::move(base), need_predictor());
  }
  if (name == "mpd") return min_predicted_degree(need_predictor());
  if (name == "mindegree") {
    if (!ctx.graph) throw std::invalid_argument("mindegree needs the full graph");
    return min_degree(*ctx.graph);
  }
  if (name == "ranking") return ranking();
  if (name == "greedy") return random_greedy();
  if (name == "skip-alternate") return skip_alternate();
  if (name == "always-skip") return always_skip();
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

}  // namespace degmatch
