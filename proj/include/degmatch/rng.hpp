#pragma once

#include <cstdint>
#include <random>

namespace degmatch {

using Rng = std::mt19937_64;

/// Independent sub-streams inside one trial.
enum class Stream : std::uint64_t {
  graph = 1,
  arrivals = 2,
  predictor = 3,
  algorithm = 4,
  type_graph = 5,
  labels = 6,
};

/// Identifies one trial of a seeded experiment. Distinct (master_seed,
/// trial_index) pairs map to distinct engine seeds; the same pair always
/// reproduces the same streams.
struct TrialSeed {
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;

  std::uint64_t derive(Stream stream) const;
  Rng engine(Stream stream) const { return Rng(derive(stream)); }

  friend bool operator==(const TrialSeed&, const TrialSeed&) = default;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace degmatch
