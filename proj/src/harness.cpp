#include "degmatch/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "degmatch/algorithms.hpp"
#include "degmatch/analysis.hpp"
#include "degmatch/generators.hpp"
#include "degmatch/online.hpp"
#include "degmatch/oracle.hpp"
#include "numeric.hpp"

namespace degmatch {
namespace {

struct GeneratorSchema {
  const char* name;
  std::vector<const char*> keys;
};

const std::vector<GeneratorSchema>& generator_schemas() {
  static const std::vector<GeneratorSchema> schemas = {
      {"clvb-zipf", {"n", "m", "c", "alpha"}},
      {"molloy-reed", {"n_offline", "n_online", "alpha", "cutoff", "m_hat"}},
      {"pref-attachment",
       {"n_offline", "n_online", "edges_per_online_node", "m_hat"}},
      {"edge-list", {"path", "kind"}},
  };
  return schemas;
}

class Params {
 public:
  Params(const std::string& generator,
         const std::map<std::string, std::string>& values)
      : generator_(generator), values_(values) {}

  double number(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(it->second, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != it->second.size() || !std::isfinite(x)) {
      throw std::invalid_argument(generator_ + ": parameter " + key +
                                  " is not a number: '" + it->second + "'");
    }
    return x;
  }

  std::size_t count(const std::string& key, std::size_t fallback) const {
    const double x = number(key, static_cast<double>(fallback));
    if (x < 0.0 || x != std::floor(x)) {
      throw std::invalid_argument(generator_ + ": parameter " + key +
                                  " must be a non-negative integer");
    }
    return static_cast<std::size_t>(x);
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }

 private:
  std::string generator_;
  const std::map<std::string, std::string>& values_;
};

// Parsed predictor spec: expected, true or subsample:<fraction>.
struct PredictorSpec {
  enum class Kind { expected, truth, subsample } kind = Kind::expected;
  double fraction = 1.0;
};

PredictorSpec parse_predictor(const std::string& text) {
  PredictorSpec spec;
  if (text == "expected") return spec;
  if (text == "true") {
    spec.kind = PredictorSpec::Kind::truth;
    return spec;
  }
  constexpr std::string_view prefix = "subsample:";
  if (text.starts_with(prefix)) {
    spec.kind = PredictorSpec::Kind::subsample;
    const std::string value = text.substr(prefix.size());
    std::size_t used = 0;
    try {
      spec.fraction = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || !(spec.fraction > 0.0 && spec.fraction <= 1.0)) {
      throw std::invalid_argument("predictor " + text +
                                  ": fraction must be in (0, 1]");
    }
    return spec;
  }
  throw std::invalid_argument("unknown predictor '" + text +
                              "' (expected, true or subsample:<fraction>)");
}

EdgeListKind parse_kind(const std::string& text) {
  if (text == "bipartite") return EdgeListKind::bipartite;
  if (text == "undirected") return EdgeListKind::undirected;
  throw std::invalid_argument("edge-list: kind must be bipartite or undirected, got '" +
                              text + "'");
}

std::vector<NodeIndex> random_permutation(std::size_t size, Rng& rng) {
  std::vector<NodeIndex> perm(size);
  std::iota(perm.begin(), perm.end(), NodeIndex{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

// Builds trial instances; the edge-list graph is loaded once.
class InstanceFactory {
 public:
  explicit InstanceFactory(const ExperimentConfig& cfg)
      : cfg_(cfg),
        params_(cfg.generator, cfg.generator_params),
        predictor_(parse_predictor(cfg.predictor)) {
    if (cfg.generator == "clvb-zipf") {
      const std::size_t n = params_.count("n", 1000);
      const std::size_t m = params_.count("m", 1000);
      profile_ = zipf_profile(n, params_.number("c", 0.5 * static_cast<double>(m)),
                              params_.number("alpha", 1.0));
      profile_->check_for(m);
    } else if (cfg.generator == "edge-list") {
      if (!params_.has("path")) throw std::invalid_argument("edge-list: missing path");
      fixed_ = load_edge_list(params_.text("path", ""),
                              parse_kind(params_.text("kind", "bipartite")))
                   .graph;
    }
  }

  TrialInstance make(const TrialSeed& seed) const {
    auto [graph, sigma] = generate(seed);
    const bool synthetic = cfg_.generator != "edge-list";
    if (cfg_.relabel && synthetic) {
      auto rng = seed.engine(Stream::labels);
      const auto perm = random_permutation(graph.n_offline(), rng);
      graph = graph.with_offline_labels(perm);
      if (sigma) {
        std::vector<double> moved(perm.size());
        for (std::size_t u = 0; u < perm.size(); ++u) moved[perm[u]] = (*sigma)(u);
        sigma = DegreePredictor(std::move(moved));
      }
    }
    if (cfg_.shuffle) {
      auto rng = seed.engine(Stream::arrivals);
      graph = graph.with_arrival_order(random_permutation(graph.m_online(), rng));
    }
    switch (predictor_.kind) {
      case PredictorSpec::Kind::expected:
        if (!sigma) {
          throw std::invalid_argument("predictor 'expected' is not available for generator " +
                                      cfg_.generator);
        }
        break;
      case PredictorSpec::Kind::truth:
        sigma = DegreePredictor::true_degrees(graph);
        break;
      case PredictorSpec::Kind::subsample: {
        auto rng = seed.engine(Stream::predictor);
        sigma = subsample_predictor(graph, predictor_.fraction, rng);
        break;
      }
    }
    return {std::move(graph), std::move(*sigma)};
  }

 private:
  std::pair<BipartiteGraph, std::optional<DegreePredictor>> generate(
      const TrialSeed& seed) const {
    const auto& name = cfg_.generator;
    if (name == "clvb-zipf") {
      const std::size_t m = params_.count("m", 1000);
      return {clvb_sample(*profile_, m, seed), DegreePredictor(profile_->degrees())};
    }
    if (name == "edge-list") return {*fixed_, std::nullopt};

    auto type_rng = seed.engine(Stream::type_graph);
    TypeGraph types;
    std::size_t n_online = 0;
    if (name == "molloy-reed") {
      MolloyReedParams p;
      p.n_offline = params_.count("n_offline", p.n_offline);
      p.n_online = params_.count("n_online", p.n_online);
      p.alpha = params_.number("alpha", p.alpha);
      p.cutoff = params_.number("cutoff", p.cutoff);
      n_online = p.n_online;
      types = molloy_reed_typegraph(p, type_rng);
    } else {
      PrefAttachmentParams p;
      p.n_offline = params_.count("n_offline", p.n_offline);
      p.n_online = params_.count("n_online", p.n_online);
      p.edges_per_online_node =
          params_.number("edges_per_online_node", p.edges_per_online_node);
      n_online = p.n_online;
      types = pref_attachment_typegraph(p, type_rng);
    }
    auto rng = seed.engine(Stream::graph);
    auto [graph, sigma] = known_iid_sample(types, params_.count("m_hat", n_online), rng);
    return {std::move(graph), std::move(sigma)};
  }

  const ExperimentConfig& cfg_;
  Params params_;
  PredictorSpec predictor_;
  std::optional<DegreeProfile> profile_;
  std::optional<BipartiteGraph> fixed_;
};

double ratio_of(std::size_t size, std::size_t best) {
  if (best == 0) return 1.0;
  return static_cast<double>(size) / static_cast<double>(best);
}

std::string trial_context(std::size_t trial, const std::string& what) {
  return "trial " + std::to_string(trial) + ": " + what;
}

// Runs the algorithms on one instance and checks the per-trial invariants.
TrialResult evaluate(const BipartiteGraph& g, const DegreePredictor& sigma,
                     const std::vector<std::string>& algorithms,
                     const TrialSeed& seed, std::size_t max_size,
                     std::size_t hall_bound) {
  TrialResult r;
  r.trial_index = seed.trial_index;
  r.max_matching = max_size;
  r.hall_bound = hall_bound;
  r.degenerate = max_size == 0;
  if (max_size > hall_bound) {
    throw InvariantViolation(trial_context(
        seed.trial_index, "maximum matching " + std::to_string(max_size) +
                              " exceeds the Hall bound " + std::to_string(hall_bound)));
  }
  const AlgorithmContext ctx{&g, &sigma};
  for (const auto& name : algorithms) {
    auto algo = make_algorithm(name, ctx);
    const Matching matching = run_online(g, *algo, seed);
    const std::size_t size = matching.size();
    if (size > max_size) {
      throw InvariantViolation(trial_context(
          seed.trial_index, name + " matched " + std::to_string(size) +
                                " edges, more than the maximum " +
                                std::to_string(max_size)));
    }
    if (algo->is_greedy() && (2 * size < max_size || !is_maximal(g, matching))) {
      throw InvariantViolation(trial_context(
          seed.trial_index, "greedy policy " + name + " returned a matching of size " +
                                std::to_string(size) + " that is not maximal or below half of " +
                                std::to_string(max_size)));
    }
    r.sizes.push_back(size);
    r.ratios.push_back(ratio_of(size, max_size));
  }
  return r;
}

void add_degenerate_warning(ExperimentSummary& summary) {
  if (summary.degenerate_trials > 0) {
    summary.warnings.push_back(std::to_string(summary.degenerate_trials) +
                               " trial(s) had an empty maximum matching; their "
                               "ratios are reported as 1");
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  if (algorithms.empty()) throw std::invalid_argument("no algorithms configured");
  for (const auto& name : algorithms) {
    if (!is_known_algorithm(name)) {
      throw std::invalid_argument("unknown algorithm '" + name + "'");
    }
  }
  const auto& schemas = generator_schemas();
  const auto schema = std::find_if(schemas.begin(), schemas.end(), [&](const auto& s) {
    return generator == s.name;
  });
  if (schema == schemas.end()) {
    throw std::invalid_argument("unknown generator '" + generator +
                                "' (clvb-zipf, molloy-reed, pref-attachment, edge-list)");
  }
  for (const auto& [key, value] : generator_params) {
    const bool known = std::any_of(schema->keys.begin(), schema->keys.end(),
                                   [&](const char* k) { return key == k; });
    if (!known) {
      throw std::invalid_argument(generator + ": unknown parameter '" + key + "'");
    }
  }
  const auto spec = parse_predictor(predictor);
  if (generator == "edge-list" && spec.kind == PredictorSpec::Kind::expected) {
    throw std::invalid_argument("edge-list graphs have no expected degrees; use "
                                "predictor = true or subsample:<fraction>");
  }
}

TrialInstance make_trial_instance(const ExperimentConfig& cfg,
                                  const TrialSeed& seed) {
  cfg.validate();
  return InstanceFactory(cfg).make(seed);
}

ExperimentSummary summarize(const std::vector<std::string>& algorithms,
                            const std::vector<TrialResult>& trials) {
  ExperimentSummary s;
  s.trials = trials.size();
  if (trials.empty()) return s;
  const auto count = static_cast<double>(trials.size());
  detail::CompensatedSum max_sum, hall_sum, error_sum;
  for (const auto& t : trials) {
    max_sum.add(static_cast<double>(t.max_matching));
    hall_sum.add(static_cast<double>(t.hall_bound));
    error_sum.add(t.predictor_error);
    if (t.degenerate) ++s.degenerate_trials;
  }
  s.mean_max_matching = max_sum.value() / count;
  s.mean_hall_bound = hall_sum.value() / count;
  s.mean_predictor_error = error_sum.value() / count;
  for (std::size_t a = 0; a < algorithms.size(); ++a) {
    AlgorithmSummary alg;
    alg.algorithm = algorithms[a];
    detail::CompensatedSum ratio_sum, size_sum;
    for (const auto& t : trials) {
      ratio_sum.add(t.ratios.at(a));
      size_sum.add(static_cast<double>(t.sizes.at(a)));
    }
    alg.mean_ratio = ratio_sum.value() / count;
    alg.mean_size = size_sum.value() / count;
    detail::CompensatedSum sq;
    for (const auto& t : trials) {
      const double d = t.ratios[a] - alg.mean_ratio;
      sq.add(d * d);
    }
    alg.std_ratio = std::sqrt(sq.value() / count);
    s.algorithms.push_back(alg);
  }
  add_degenerate_warning(s);
  return s;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const InstanceFactory factory(cfg);
  ExperimentResult result;
  result.config = cfg;
  result.trials.resize(cfg.trials);
  parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
    const auto start = std::chrono::steady_clock::now();
    const TrialSeed seed{cfg.seed, t};
    const auto inst = factory.make(seed);
    TrialResult r = evaluate(inst.graph, inst.predictor, cfg.algorithms, seed,
                             max_matching(inst.graph), hall_subset(inst.graph).bound);
    r.predictor_error = predictor_l2_error(inst.predictor, inst.graph);
    r.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    result.trials[t] = std::move(r);
  });
  result.summary = summarize(cfg.algorithms, result.trials);
  return result;
}

CsvTable run_analysis(const AnalysisConfig& cfg) {
  CsvTable table;
  struct Cell {
    double alpha;
    double cutoff;
    std::size_t n;
  };
  std::vector<Cell> cells;
  if (cfg.grid == "table1") {
    table.header = {"alpha", "cutoff", "mpd_expected", "hall_bound", "ratio"};
    for (double a : cfg.alphas) {
      for (double c : cfg.cutoffs) cells.push_back({a, c, 0});
    }
  } else if (cfg.grid == "zipf") {
    if (!(cfg.c_ratio > 0.0 && cfg.c_ratio < 1.0)) {
      throw std::invalid_argument("zipf grid: c_ratio must be in (0, 1)");
    }
    table.header = {"alpha", "n", "m", "c", "mpd_expected", "hall_bound", "ratio"};
    for (double a : cfg.alphas) {
      for (std::size_t n : cfg.sizes) {
        if (n == 0) throw std::invalid_argument("zipf grid: sizes must be positive");
        cells.push_back({a, 0.0, n});
      }
    }
  } else {
    throw std::invalid_argument("unknown analysis grid '" + cfg.grid +
                                "' (table1 or zipf)");
  }

  table.rows.resize(cells.size());
  parallel_for(cells.size(), cfg.threads, [&](std::size_t k) {
    const Cell& cell = cells[k];
    if (cfg.grid == "table1") {
      const auto r = asymptotic_ratio(expcutoff_profile(cell.alpha, cell.cutoff));
      table.rows[k] = {format_double(cell.alpha), format_double(cell.cutoff),
                       format_double(r.mpd), format_double(r.hall),
                       format_double(r.ratio)};
    } else {
      const double c = cfg.c_ratio * static_cast<double>(cell.n);
      const auto r = analytic_ratio(zipf_profile(cell.n, c, cell.alpha), cell.n, cell.n);
      table.rows[k] = {format_double(cell.alpha), std::to_string(cell.n),
                       std::to_string(cell.n), format_double(c), format_double(r.mpd),
                       format_double(r.hall), format_double(r.ratio)};
    }
  });
  return table;
}

std::vector<SnapshotSummary> snapshot_experiment(const SnapshotConfig& cfg) {
  if (cfg.trials == 0) throw std::invalid_argument("trials must be at least 1");
  for (const auto& name : cfg.algorithms) {
    if (!is_known_algorithm(name)) {
      throw std::invalid_argument("unknown algorithm '" + name + "'");
    }
  }
  const LoadedGraph first = load_edge_list(cfg.first, cfg.kind);
  std::vector<SnapshotSummary> out;
  for (const auto& path : cfg.later) {
    const LoadedGraph later = load_edge_list(path, cfg.kind);
    const DegreePredictor sigma = first_snapshot_predictor(first, later.offline_ids);
    const std::size_t best = max_matching(later.graph);
    const std::size_t hall = hall_subset(later.graph).bound;
    std::vector<TrialResult> trials(cfg.trials);
    parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
      const TrialSeed seed{cfg.seed, t};
      auto rng = seed.engine(Stream::arrivals);
      const auto g = later.graph.with_arrival_order(
          random_permutation(later.graph.m_online(), rng));
      trials[t] = evaluate(g, sigma, cfg.algorithms, seed, best, hall);
    });
    SnapshotSummary s;
    s.path = path.string();
    s.n_offline = later.graph.n_offline();
    s.m_online = later.graph.m_online();
    s.predictor_error = predictor_l2_error(sigma, later.graph);
    s.algorithms = summarize(cfg.algorithms, trials).algorithms;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> rewire_edges(
    std::vector<std::pair<std::size_t, std::size_t>> edges, std::size_t n_nodes,
    double rate, Rng& rng) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw std::invalid_argument("rewire rate must be in [0, 1]");
  }
  if (n_nodes < 2) return edges;
  constexpr int kRetries = 32;
  auto normal = [](std::size_t a, std::size_t b) {
    return a < b ? std::pair{a, b} : std::pair{b, a};
  };
  std::set<std::pair<std::size_t, std::size_t>> present;
  for (const auto& [a, b] : edges) present.insert(normal(a, b));
  std::bernoulli_distribution move(rate), side(0.5);
  std::uniform_int_distribution<std::size_t> node(0, n_nodes - 1);
  for (auto& edge : edges) {
    if (!move(rng)) continue;
    for (int attempt = 0; attempt < kRetries; ++attempt) {
      auto candidate = edge;
      (side(rng) ? candidate.first : candidate.second) = node(rng);
      const auto key = normal(candidate.first, candidate.second);
      if (candidate.first == candidate.second || present.count(key)) continue;
      present.erase(normal(edge.first, edge.second));
      present.insert(key);
      edge = candidate;
      break;
    }
  }
  return edges;
}

}  // namespace degmatch
