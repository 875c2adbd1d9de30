#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "degmatch/graph.hpp"
#include "degmatch/rng.hpp"

namespace degmatch {

/// One unique expected degree and the share of offline nodes carrying it.
/// In grouped profiles `weight` is a fraction; after grouping a per-node
/// profile it is a node count.
struct DegreeClass {
  double degree;
  double weight;
};

/// Expected offline degrees, either one value per node or as (degree,
/// fraction) classes with strictly increasing degrees.
class DegreeProfile {
 public:
  enum class Kind { per_node, grouped };

  /// Throws std::invalid_argument on negative or non-finite entries.
  static DegreeProfile per_node(std::vector<double> degrees);
  /// Classes must have strictly increasing degrees, positive weights and
  /// weights summing to 1 within `sum_tolerance`.
  static DegreeProfile grouped(std::vector<DegreeClass> classes,
                               double sum_tolerance = 1e-9);

  Kind kind() const { return kind_; }
  bool is_per_node() const { return kind_ == Kind::per_node; }

  /// Per-node degrees (empty for grouped profiles).
  const std::vector<double>& degrees() const { return degrees_; }
  /// Grouped classes; for a per-node profile the weights are node counts.
  std::vector<DegreeClass> classes() const;

  /// Number of nodes (per-node) or classes (grouped).
  std::size_t size() const {
    return is_per_node() ? degrees_.size() : classes_.size();
  }

  /// Throws if some per-node degree exceeds m.
  void check_for(std::size_t m) const;

 private:
  Kind kind_ = Kind::per_node;
  std::vector<double> degrees_;
  std::vector<DegreeClass> classes_;
};

/// Known-i.i.d. type graph: online nodes of `base` are types, drawn with
/// probabilities `type_distribution`.
struct TypeGraph {
  BipartiteGraph base;
  std::vector<double> type_distribution;
};

/// Throws InvalidGraph if the base graph or the distribution is invalid.
void validate_type_graph(const TypeGraph& t);

/// d_i = C * i^(-alpha), i = 1..n.
DegreeProfile zipf_profile(std::size_t n, double c, double alpha);

/// Classes d = 1, 2, ... with mass proportional to d^(-alpha) e^(-d/cutoff),
/// truncated at the smallest D whose remaining tail mass is below tail_eps
/// and renormalised.
DegreeProfile expcutoff_profile(double alpha, double cutoff,
                                double tail_eps = 1e-9);

/// CLV-B: edge (i, j) present independently with probability d_i / m.
/// Arrival order is the identity.
BipartiteGraph clvb_sample(const DegreeProfile& profile, std::size_t m,
                           Rng& rng);
BipartiteGraph clvb_sample(const DegreeProfile& profile, std::size_t m,
                           const TrialSeed& seed);

/// sigma(u) = degree of u among a uniform ceil(fraction * m) subset of online
/// nodes, divided by fraction.
DegreePredictor subsample_predictor(const BipartiteGraph& g, double fraction,
                                    Rng& rng);

/// Instance with m_hat online nodes drawn i.i.d. from the type distribution,
/// plus the predictor sigma(u) = type-graph degree of u * m_hat / |V|.
std::pair<BipartiteGraph, DegreePredictor> known_iid_sample(
    const TypeGraph& t, std::size_t m_hat, Rng& rng);

struct MolloyReedParams {
  std::size_t n_offline = 1000;
  std::size_t n_online = 1000;
  double alpha = 1.0;
  double cutoff = 10.0;
  double tail_eps = 1e-9;
  /// Re-draw attempts for a stub pair that would duplicate an edge.
  std::size_t retry_cap = 32;
};

/// Bipartite configuration model. Node degrees on both sides are drawn from
/// expcutoff_profile(alpha, cutoff) (capped at the opposite side's size);
/// surplus stubs on the heavier side are removed uniformly at random; stubs
/// are paired by random shuffle. A pair that repeats an existing edge is
/// swapped with a random later stub up to retry_cap times, then dropped.
/// Uniform type distribution.
TypeGraph molloy_reed_typegraph(const MolloyReedParams& params, Rng& rng);

struct PrefAttachmentParams {
  std::size_t n_offline = 1000;
  std::size_t n_online = 1000;
  /// Total edges = edges_per_online_node * n_online.
  double edges_per_online_node = 1.0;
  std::size_t retry_cap = 32;
};

/// Sequential edge insertion; each endpoint is drawn with probability
/// proportional to (current degree + 1). Uniform type distribution.
TypeGraph pref_attachment_typegraph(const PrefAttachmentParams& params,
                                    Rng& rng);

/// Undirected edges on nodes 0..n-1 become (u'_i, v'_j) and (u'_j, v'_i);
/// a self-loop {i, i} becomes the single edge (u'_i, v'_i).
BipartiteGraph bipartite_double_cover(
    const std::vector<std::pair<std::size_t, std::size_t>>& edges,
    std::size_t n);

}  // namespace degmatch
