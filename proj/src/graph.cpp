#include "degmatch/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace degmatch {

BipartiteGraph::BipartiteGraph(std::size_t n_offline, AdjacencyLists adjacency,
                               std::vector<NodeIndex> arrival_order)
    : n_offline_(n_offline),
      adjacency_(std::make_shared<const AdjacencyLists>(std::move(adjacency))),
      arrival_order_(std::move(arrival_order)) {
  if (arrival_order_.empty()) {
    arrival_order_.resize(adjacency_->size());
    std::iota(arrival_order_.begin(), arrival_order_.end(), NodeIndex{0});
  }
  for (const auto& list : *adjacency_) edge_count_ += list.size();
}

std::vector<std::size_t> BipartiteGraph::offline_degrees() const {
  std::vector<std::size_t> deg(n_offline_, 0);
  for (const auto& list : *adjacency_) {
    for (NodeIndex u : list) {
      if (u < n_offline_) ++deg[u];
    }
  }
  return deg;
}

bool BipartiteGraph::has_edge(NodeIndex offline, NodeIndex online) const {
  if (online >= m_online()) return false;
  for (NodeIndex u : (*adjacency_)[online]) {
    if (u == offline) return true;
  }
  return false;
}

BipartiteGraph BipartiteGraph::with_arrival_order(
    std::vector<NodeIndex> order) const {
  BipartiteGraph copy = *this;
  copy.arrival_order_ = std::move(order);
  return copy;
}

BipartiteGraph BipartiteGraph::with_offline_labels(
    std::span<const NodeIndex> perm) const {
  if (perm.size() != n_offline_) {
    throw InvalidGraph("offline relabeling has the wrong length");
  }
  std::vector<bool> seen(n_offline_, false);
  for (NodeIndex u : perm) {
    if (u >= n_offline_ || seen[u]) {
      throw InvalidGraph("offline relabeling is not a permutation");
    }
    seen[u] = true;
  }
  AdjacencyLists adjacency(m_online());
  for (std::size_t v = 0; v < m_online(); ++v) {
    for (NodeIndex u : neighbors(static_cast<NodeIndex>(v))) {
      adjacency[v].push_back(perm[u]);
    }
    std::sort(adjacency[v].begin(), adjacency[v].end());
  }
  return BipartiteGraph(n_offline_, std::move(adjacency), arrival_order_);
}

std::optional<std::string> validate_graph(const BipartiteGraph& g) {
  const std::size_t n = g.n_offline();
  const std::size_t m = g.m_online();
  std::vector<std::size_t> last_seen(n, m);  // m == "never"
  for (std::size_t j = 0; j < m; ++j) {
    for (NodeIndex u : g.neighbors(static_cast<NodeIndex>(j))) {
      if (u >= n) {
        std::ostringstream os;
        os << "index out of range: online node " << j << " lists offline node "
           << u << " but n_offline = " << n;
        return os.str();
      }
      if (last_seen[u] == j) {
        std::ostringstream os;
        os << "duplicate edge: online node " << j << " lists offline node "
           << u << " twice";
        return os.str();
      }
      last_seen[u] = j;
    }
  }

  const auto order = g.arrival_order();
  if (order.size() != m) {
    std::ostringstream os;
    os << "arrival order has " << order.size() << " entries, expected " << m;
    return os.str();
  }
  std::vector<bool> seen(m, false);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const NodeIndex v = order[pos];
    if (v >= m || seen[v]) {
      std::ostringstream os;
      os << "arrival order is not a permutation: position " << pos
         << " holds online node " << v;
      return os.str();
    }
    seen[v] = true;
  }
  return std::nullopt;
}

void require_valid(const BipartiteGraph& g) {
  if (auto err = validate_graph(g)) throw InvalidGraph(*err);
}

DegreePredictor::DegreePredictor(std::vector<double> sigma)
    : sigma_(std::move(sigma)) {
  for (std::size_t u = 0; u < sigma_.size(); ++u) {
    if (!(sigma_[u] >= 0.0) || !std::isfinite(sigma_[u])) {
      std::ostringstream os;
      os << "predicted degree of offline node " << u
         << " must be finite and nonnegative, got " << sigma_[u];
      throw std::invalid_argument(os.str());
    }
  }
}

DegreePredictor DegreePredictor::true_degrees(const BipartiteGraph& g) {
  const auto deg = g.offline_degrees();
  return DegreePredictor(std::vector<double>(deg.begin(), deg.end()));
}

std::size_t matching_size(const Matching& m) { return m.pairs.size(); }

std::optional<std::string> validate_matching(const BipartiteGraph& g,
                                             const Matching& m) {
  std::vector<bool> offline_used(g.n_offline(), false);
  std::vector<bool> online_used(g.m_online(), false);
  for (const auto& [u, v] : m.pairs) {
    std::ostringstream os;
    if (u >= g.n_offline() || v >= g.m_online() || !g.has_edge(u, v)) {
      os << "pair (" << u << ", " << v << ") is not an edge";
      return os.str();
    }
    if (offline_used[u]) {
      os << "offline node " << u << " matched twice";
      return os.str();
    }
    if (online_used[v]) {
      os << "online node " << v << " matched twice";
      return os.str();
    }
    offline_used[u] = true;
    online_used[v] = true;
  }
  return std::nullopt;
}

bool is_maximal(const BipartiteGraph& g, const Matching& m) {
  std::vector<bool> offline_used(g.n_offline(), false);
  std::vector<bool> online_used(g.m_online(), false);
  for (const auto& [u, v] : m.pairs) {
    offline_used[u] = true;
    online_used[v] = true;
  }
  for (std::size_t j = 0; j < g.m_online(); ++j) {
    if (online_used[j]) continue;
    for (NodeIndex u : g.neighbors(static_cast<NodeIndex>(j))) {
      if (!offline_used[u]) return false;
    }
  }
  return true;
}

double predictor_l2_error(const DegreePredictor& sigma,
                          const BipartiteGraph& g) {
  if (sigma.size() != g.n_offline()) {
    throw std::invalid_argument("predictor size does not match n_offline");
  }
  const auto deg = g.offline_degrees();
  double sum = 0.0;
  for (std::size_t u = 0; u < deg.size(); ++u) {
    const double diff = sigma(static_cast<NodeIndex>(u)) - static_cast<double>(deg[u]);
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

}  // namespace degmatch
