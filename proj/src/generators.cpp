#include "degmatch/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace degmatch {

DegreeProfile DegreeProfile::per_node(std::vector<double> degrees) {
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (!(degrees[i] >= 0.0) || !std::isfinite(degrees[i])) {
      std::ostringstream os;
      os << "expected degree of node " << i << " must be finite and >= 0, got "
         << degrees[i];
      throw std::invalid_argument(os.str());
    }
  }
  DegreeProfile p;
  p.kind_ = Kind::per_node;
  p.degrees_ = std::move(degrees);
  return p;
}

DegreeProfile DegreeProfile::grouped(std::vector<DegreeClass> classes,
                                     double sum_tolerance) {
  double total = 0.0;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& c = classes[i];
    if (!(c.degree >= 0.0) || !std::isfinite(c.degree)) {
      throw std::invalid_argument("class degree must be finite and >= 0");
    }
    if (!(c.weight > 0.0)) {
      throw std::invalid_argument("class fractions must be positive");
    }
    if (i > 0 && !(classes[i - 1].degree < c.degree)) {
      throw std::invalid_argument("class degrees must be strictly increasing");
    }
    total += c.weight;
  }
  if (!classes.empty() && std::abs(total - 1.0) > sum_tolerance) {
    std::ostringstream os;
    os << "class fractions sum to " << total << ", expected 1";
    throw std::invalid_argument(os.str());
  }
  DegreeProfile p;
  p.kind_ = Kind::grouped;
  p.classes_ = std::move(classes);
  return p;
}

std::vector<DegreeClass> DegreeProfile::classes() const {
  if (!is_per_node()) return classes_;
  std::vector<double> sorted = degrees_;
  std::sort(sorted.begin(), sorted.end());
  std::vector<DegreeClass> out;
  for (double d : sorted) {
    if (!out.empty() && out.back().degree == d) {
      out.back().weight += 1.0;
    } else {
      out.push_back({d, 1.0});
    }
  }
  return out;
}

void DegreeProfile::check_for(std::size_t m) const {
  const auto limit = static_cast<double>(m);
  if (is_per_node()) {
    for (std::size_t i = 0; i < degrees_.size(); ++i) {
      if (degrees_[i] > limit) {
        std::ostringstream os;
        os << "invalid profile: expected degree " << degrees_[i] << " of node "
           << i << " exceeds m = " << m;
        throw std::invalid_argument(os.str());
      }
    }
  } else {
    for (const auto& c : classes_) {
      if (c.degree > limit) {
        std::ostringstream os;
        os << "invalid profile: class degree " << c.degree << " exceeds m = "
           << m;
        throw std::invalid_argument(os.str());
      }
    }
  }
}

void validate_type_graph(const TypeGraph& t) {
  require_valid(t.base);
  if (t.type_distribution.size() != t.base.m_online()) {
    throw InvalidGraph("type distribution has " +
                       std::to_string(t.type_distribution.size()) +
                       " entries for " + std::to_string(t.base.m_online()) +
                       " types");
  }
  double total = 0.0;
  for (double p : t.type_distribution) {
    if (!(p >= 0.0)) throw InvalidGraph("type probabilities must be >= 0");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "type distribution sums to " << total;
    throw InvalidGraph(os.str());
  }
}

DegreeProfile zipf_profile(std::size_t n, double c, double alpha) {
  if (n < 1) throw std::invalid_argument("zipf_profile: n must be >= 1");
  if (!(c > 0.0)) throw std::invalid_argument("zipf_profile: C must be > 0");
  if (!(alpha >= 0.0)) throw std::invalid_argument("zipf_profile: alpha must be >= 0");
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = c * std::pow(static_cast<double>(i + 1), -alpha);
  }
  return DegreeProfile::per_node(std::move(d));
}

DegreeProfile expcutoff_profile(double alpha, double cutoff, double tail_eps) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("expcutoff: alpha must be >= 0");
  if (!(cutoff > 0.0)) throw std::invalid_argument("expcutoff: cutoff must be > 0");
  if (!(tail_eps > 0.0 && tail_eps < 1.0)) {
    throw std::invalid_argument("expcutoff: tail_eps must lie in (0, 1)");
  }

  // Weights relative to d = 1. For alpha >= 0 consecutive ratios are at most
  // e^(-1/cutoff), which bounds everything past the last term geometrically.
  const double decay = std::exp(-1.0 / cutoff);
  const double geometric = -std::expm1(-1.0 / cutoff);
  auto weight = [&](double d) {
    return std::exp(-alpha * std::log(d) - (d - 1.0) / cutoff);
  };

  constexpr std::size_t kMaxTerms = 200'000'000;
  std::vector<double> w;
  double running = 0.0;
  for (std::size_t d = 1;; ++d) {
    const double wd = weight(static_cast<double>(d));
    w.push_back(wd);
    running += wd;
    const double remainder_bound = wd * decay / geometric;
    if (remainder_bound < 1e-3 * tail_eps * running) break;
    if (d >= kMaxTerms) {
      throw std::runtime_error("expcutoff: tail does not decay fast enough");
    }
  }

  // suffix[k] = sum_{d > k} w_d (0-based k = d - 1), Kahan-compensated.
  std::vector<double> suffix(w.size() + 1, 0.0);
  double sum = 0.0, comp = 0.0;
  for (std::size_t k = w.size(); k-- > 0;) {
    const double y = w[k] - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    suffix[k] = sum;
  }
  const double total = suffix[0];
  std::size_t keep = w.size();
  for (std::size_t k = 1; k <= w.size(); ++k) {
    if (suffix[k] / total < tail_eps) {
      keep = k;
      break;
    }
  }

  const double kept_mass = total - suffix[keep];
  std::vector<DegreeClass> classes;
  classes.reserve(keep);
  for (std::size_t k = 0; k < keep; ++k) {
    if (w[k] > 0.0) {
      classes.push_back({static_cast<double>(k + 1), w[k] / kept_mass});
    }
  }
  return DegreeProfile::grouped(std::move(classes), 1e-9);
}

BipartiteGraph clvb_sample(const DegreeProfile& profile, std::size_t m,
                           Rng& rng) {
  if (!profile.is_per_node()) {
    throw std::invalid_argument("clvb_sample needs a per-node profile");
  }
  profile.check_for(m);
  const auto& d = profile.degrees();
  BipartiteGraph::AdjacencyLists adjacency(m);
  const auto md = static_cast<double>(m);

  for (std::size_t i = 0; i < d.size(); ++i) {
    const double p = d[i] / md;
    const auto u = static_cast<NodeIndex>(i);
    if (p <= 0.0) continue;
    if (p >= 1.0) {
      for (auto& list : adjacency) list.push_back(u);
      continue;
    }
    // Skip ahead by geometric gaps instead of flipping m coins.
    std::geometric_distribution<std::int64_t> gap(p);
    for (std::int64_t j = gap(rng); j < static_cast<std::int64_t>(m);
         j += 1 + gap(rng)) {
      adjacency[static_cast<std::size_t>(j)].push_back(u);
    }
  }
  return BipartiteGraph(d.size(), std::move(adjacency));
}

BipartiteGraph clvb_sample(const DegreeProfile& profile, std::size_t m,
                           const TrialSeed& seed) {
  Rng rng = seed.engine(Stream::graph);
  return clvb_sample(profile, m, rng);
}

DegreePredictor subsample_predictor(const BipartiteGraph& g, double fraction,
                                    Rng& rng) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("subsample fraction must lie in (0, 1]");
  }
  const std::size_t m = g.m_online();
  // Guard against 0.1 * 1000 = 100.00000000000001 rounding up.
  auto k = static_cast<std::size_t>(
      std::ceil(fraction * static_cast<double>(m) - 1e-9));
  k = std::min(k, m);

  std::vector<NodeIndex> online(m);
  std::iota(online.begin(), online.end(), NodeIndex{0});
  std::vector<NodeIndex> chosen;
  chosen.reserve(k);
  std::sample(online.begin(), online.end(), std::back_inserter(chosen), k, rng);

  std::vector<double> sigma(g.n_offline(), 0.0);
  for (NodeIndex v : chosen) {
    for (NodeIndex u : g.neighbors(v)) sigma[u] += 1.0;
  }
  for (auto& s : sigma) s /= fraction;
  return DegreePredictor(std::move(sigma));
}

std::pair<BipartiteGraph, DegreePredictor> known_iid_sample(
    const TypeGraph& t, std::size_t m_hat, Rng& rng) {
  validate_type_graph(t);
  const auto& types = t.base;
  if (types.m_online() == 0) {
    throw std::invalid_argument("known_iid_sample: type graph has no types");
  }

  std::discrete_distribution<std::size_t> draw(t.type_distribution.begin(),
                                               t.type_distribution.end());
  BipartiteGraph::AdjacencyLists adjacency(m_hat);
  for (auto& list : adjacency) {
    const auto type = static_cast<NodeIndex>(draw(rng));
    const auto nbrs = types.neighbors(type);
    list.assign(nbrs.begin(), nbrs.end());
  }

  const double scale =
      static_cast<double>(m_hat) / static_cast<double>(types.m_online());
  const auto type_deg = types.offline_degrees();
  std::vector<double> sigma(type_deg.size());
  for (std::size_t u = 0; u < sigma.size(); ++u) {
    sigma[u] = static_cast<double>(type_deg[u]) * scale;
  }
  return {BipartiteGraph(types.n_offline(), std::move(adjacency)),
          DegreePredictor(std::move(sigma))};
}

namespace {

std::uint64_t edge_key(NodeIndex u, NodeIndex v) {
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

BipartiteGraph from_edges(std::size_t n, std::size_t m,
                          const std::vector<std::pair<NodeIndex, NodeIndex>>& edges) {
  BipartiteGraph::AdjacencyLists adjacency(m);
  for (const auto& [u, v] : edges) adjacency[v].push_back(u);
  for (auto& list : adjacency) std::sort(list.begin(), list.end());
  return BipartiteGraph(n, std::move(adjacency));
}

std::vector<double> uniform_distribution(std::size_t k) {
  return std::vector<double>(k, k == 0 ? 0.0 : 1.0 / static_cast<double>(k));
}

}  // namespace

TypeGraph molloy_reed_typegraph(const MolloyReedParams& params, Rng& rng) {
  if (params.n_offline == 0 || params.n_online == 0) {
    throw std::invalid_argument("molloy_reed: both sides need at least one node");
  }
  const auto profile =
      expcutoff_profile(params.alpha, params.cutoff, params.tail_eps);
  const auto classes = profile.classes();
  std::vector<double> mass;
  for (const auto& c : classes) mass.push_back(c.weight);
  std::discrete_distribution<std::size_t> draw(mass.begin(), mass.end());

  auto make_stubs = [&](std::size_t count, std::size_t cap) {
    std::vector<NodeIndex> stubs;
    for (std::size_t node = 0; node < count; ++node) {
      auto deg = static_cast<std::size_t>(classes[draw(rng)].degree);
      deg = std::min(deg, cap);
      stubs.insert(stubs.end(), deg, static_cast<NodeIndex>(node));
    }
    return stubs;
  };
  auto offline_stubs = make_stubs(params.n_offline, params.n_online);
  auto online_stubs = make_stubs(params.n_online, params.n_offline);

  // Uniform removal of surplus stubs = shuffle and truncate.
  std::shuffle(offline_stubs.begin(), offline_stubs.end(), rng);
  std::shuffle(online_stubs.begin(), online_stubs.end(), rng);
  const std::size_t stubs = std::min(offline_stubs.size(), online_stubs.size());
  offline_stubs.resize(stubs);
  online_stubs.resize(stubs);

  std::unordered_set<std::uint64_t> present;
  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  edges.reserve(stubs);
  for (std::size_t k = 0; k < stubs; ++k) {
    bool placed = false;
    for (std::size_t attempt = 0; attempt <= params.retry_cap; ++attempt) {
      if (!present.count(edge_key(offline_stubs[k], online_stubs[k]))) {
        placed = true;
        break;
      }
      if (k + 1 >= stubs) break;
      std::uniform_int_distribution<std::size_t> other(k + 1, stubs - 1);
      std::swap(online_stubs[k], online_stubs[other(rng)]);
    }
    if (!placed) continue;
    present.insert(edge_key(offline_stubs[k], online_stubs[k]));
    edges.emplace_back(offline_stubs[k], online_stubs[k]);
  }

  return {from_edges(params.n_offline, params.n_online, edges),
          uniform_distribution(params.n_online)};
}

TypeGraph pref_attachment_typegraph(const PrefAttachmentParams& params,
                                    Rng& rng) {
  if (params.n_offline == 0 || params.n_online == 0) {
    throw std::invalid_argument("pref_attachment: both sides need at least one node");
  }
  if (!(params.edges_per_online_node >= 0.0)) {
    throw std::invalid_argument("pref_attachment: edges per node must be >= 0");
  }
  const auto capacity =
      static_cast<double>(params.n_offline) * static_cast<double>(params.n_online);
  const auto target = static_cast<std::size_t>(std::llround(std::min(
      capacity, params.edges_per_online_node * static_cast<double>(params.n_online))));

  // Urn with one ticket per node plus one per incident edge: drawing a ticket
  // uniformly selects a node with probability proportional to degree + 1.
  std::vector<NodeIndex> offline_urn(params.n_offline), online_urn(params.n_online);
  std::iota(offline_urn.begin(), offline_urn.end(), NodeIndex{0});
  std::iota(online_urn.begin(), online_urn.end(), NodeIndex{0});

  std::unordered_set<std::uint64_t> present;
  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  edges.reserve(target);
  for (std::size_t e = 0; e < target; ++e) {
    for (std::size_t attempt = 0; attempt <= params.retry_cap; ++attempt) {
      std::uniform_int_distribution<std::size_t> pu(0, offline_urn.size() - 1);
      std::uniform_int_distribution<std::size_t> pv(0, online_urn.size() - 1);
      const NodeIndex u = offline_urn[pu(rng)];
      const NodeIndex v = online_urn[pv(rng)];
      if (present.insert(edge_key(u, v)).second) {
        edges.emplace_back(u, v);
        offline_urn.push_back(u);
        online_urn.push_back(v);
        break;
      }
    }
  }

  return {from_edges(params.n_offline, params.n_online, edges),
          uniform_distribution(params.n_online)};
}

BipartiteGraph bipartite_double_cover(
    const std::vector<std::pair<std::size_t, std::size_t>>& edges,
    std::size_t n) {
  BipartiteGraph::AdjacencyLists adjacency(n);
  for (const auto& [i, j] : edges) {
    if (i >= n || j >= n) {
      std::ostringstream os;
      os << "index out of range: edge {" << i << ", " << j << "} on " << n
         << " nodes";
      throw InvalidGraph(os.str());
    }
    adjacency[j].push_back(static_cast<NodeIndex>(i));
    if (i != j) adjacency[i].push_back(static_cast<NodeIndex>(j));
  }
  for (auto& list : adjacency) std::sort(list.begin(), list.end());
  BipartiteGraph g(n, std::move(adjacency));
  require_valid(g);
  return g;
}

}  // namespace degmatch
