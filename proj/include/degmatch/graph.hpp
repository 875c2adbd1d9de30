#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace degmatch {

using NodeIndex = std::uint32_t;

class InvalidGraph : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an online policy picks something it was not offered.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Offline side U of size n_offline is known up front. Online node j (of
/// m_online) reveals adjacency(j) when it arrives; arrivals happen in
/// arrival_order(). Adjacency storage is shared between copies, so
/// re-ordering arrivals is cheap.
class BipartiteGraph {
 public:
  using AdjacencyLists = std::vector<std::vector<NodeIndex>>;

  BipartiteGraph() : BipartiteGraph(0, {}) {}

  /// An empty arrival_order means identity order. No validation happens
  /// here; see validate_graph / require_valid.
  BipartiteGraph(std::size_t n_offline, AdjacencyLists adjacency,
                 std::vector<NodeIndex> arrival_order = {});

  std::size_t n_offline() const { return n_offline_; }
  std::size_t m_online() const { return adjacency_->size(); }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const NodeIndex> neighbors(NodeIndex online) const {
    return (*adjacency_)[online];
  }
  const AdjacencyLists& adjacency() const { return *adjacency_; }
  std::span<const NodeIndex> arrival_order() const { return arrival_order_; }

  /// True offline degrees, deg_g(u).
  std::vector<std::size_t> offline_degrees() const;

  bool has_edge(NodeIndex offline, NodeIndex online) const;

  /// Same edges, different arrival order.
  BipartiteGraph with_arrival_order(std::vector<NodeIndex> order) const;
  /// Isomorphic copy where offline node u becomes perm[u]; adjacency lists
  /// stay sorted. Throws InvalidGraph unless perm is a permutation of U.
  BipartiteGraph with_offline_labels(std::span<const NodeIndex> perm) const;

 private:
  std::size_t n_offline_;
  std::shared_ptr<const AdjacencyLists> adjacency_;
  std::vector<NodeIndex> arrival_order_;
  std::size_t edge_count_ = 0;
};

/// Returns a description of the first violated invariant, or nullopt.
std::optional<std::string> validate_graph(const BipartiteGraph& g);

/// Throws InvalidGraph if validate_graph reports a problem.
void require_valid(const BipartiteGraph& g);

/// sigma: U -> R_{>=0}.
class DegreePredictor {
 public:
  DegreePredictor() = default;
  explicit DegreePredictor(std::vector<double> sigma);

  static DegreePredictor true_degrees(const BipartiteGraph& g);

  double operator()(NodeIndex offline) const { return sigma_[offline]; }
  std::size_t size() const { return sigma_.size(); }
  const std::vector<double>& values() const { return sigma_; }

 private:
  std::vector<double> sigma_;
};

struct MatchedPair {
  NodeIndex offline;
  NodeIndex online;

  friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

struct Matching {
  std::vector<MatchedPair> pairs;

  std::size_t size() const { return pairs.size(); }
};

std::size_t matching_size(const Matching& m);

/// nullopt when every pair is an edge of g and no endpoint repeats.
std::optional<std::string> validate_matching(const BipartiteGraph& g,
                                             const Matching& m);

/// No edge of g has both endpoints unmatched.
bool is_maximal(const BipartiteGraph& g, const Matching& m);

/// sqrt(sum_u (sigma(u) - deg_g(u))^2).
double predictor_l2_error(const DegreePredictor& sigma, const BipartiteGraph& g);

}  // namespace degmatch
