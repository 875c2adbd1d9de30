#include "degmatch/rng.hpp"

namespace degmatch {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Chained hashing keeps (a, b) and (b, a) apart.
std::uint64_t TrialSeed::derive(Stream stream) const {
  std::uint64_t h = splitmix64(master_seed);
  h = splitmix64(h ^ trial_index);
  return splitmix64(h ^ static_cast<std::uint64_t>(stream));
}

}  // namespace degmatch
