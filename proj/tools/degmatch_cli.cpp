#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "degmatch/algorithms.hpp"
#include "degmatch/analysis.hpp"
#include "degmatch/edge_list.hpp"
#include "degmatch/harness.hpp"
#include "degmatch/online.hpp"
#include "degmatch/oracle.hpp"

using namespace degmatch;

namespace {

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::string out;
  std::string format;
  std::optional<std::size_t> threads;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "key = value config file");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--trials", f.trials, "number of trials");
  cmd->add_option("--out", f.out, "output path (stdout when omitted)");
  cmd->add_option("--format", f.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", f.threads, "worker threads (0 = all cores)");
}

ExperimentConfig experiment_config(const CommonFlags& f) {
  ExperimentConfig cfg = f.config.empty() ? ExperimentConfig{} : load_config(f.config);
  if (f.seed) cfg.seed = *f.seed;
  if (f.trials) cfg.trials = *f.trials;
  if (!f.out.empty()) cfg.output = f.out;
  if (!f.format.empty()) cfg.format = parse_output_format(f.format);
  if (f.threads) cfg.threads = *f.threads;
  return cfg;
}

// Writes to `path`, or to stdout when it is empty.
template <class Write>
void emit(const std::string& path, Write write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write(out);
}

void emit_table(const std::string& path, const std::string& format,
                const CsvTable& table) {
  emit(path, [&](std::ostream& out) {
    if (format == "json") {
      out << table_json(table) << '\n';
    } else {
      write_csv(out, table);
    }
  });
}

void print_summary(const ExperimentResult& result) {
  const auto& s = result.summary;
  std::cout << "trials " << s.trials << ", mean max matching " << s.mean_max_matching
            << ", mean Hall bound " << s.mean_hall_bound << '\n';
  for (const auto& alg : s.algorithms) {
    std::cout << std::left << std::setw(24) << alg.algorithm << " ratio "
              << std::fixed << std::setprecision(4) << alg.mean_ratio << " +- "
              << alg.std_ratio << std::defaultfloat << '\n';
  }
  for (const auto& w : s.warnings) std::cerr << "warning: " << w << '\n';
}

int cmd_generate(const CommonFlags& f, std::size_t trial) {
  const ExperimentConfig cfg = experiment_config(f);
  const auto inst = make_trial_instance(cfg, TrialSeed{cfg.seed, trial});
  const std::string format = f.format.empty() ? "csv" : f.format;
  emit(f.out, [&](std::ostream& out) {
    if (format == "json") {
      out << "{\"n_offline\": " << inst.graph.n_offline()
          << ", \"m_online\": " << inst.graph.m_online() << ", \"edges\": [";
      bool first = true;
      for (std::size_t v = 0; v < inst.graph.m_online(); ++v) {
        for (NodeIndex u : inst.graph.neighbors(static_cast<NodeIndex>(v))) {
          out << (first ? "" : ", ") << '[' << u << ", " << v << ']';
          first = false;
        }
      }
      out << "], \"arrival_order\": [";
      const auto& order = inst.graph.arrival_order();
      for (std::size_t k = 0; k < order.size(); ++k) out << (k ? ", " : "") << order[k];
      out << "], \"sigma\": [";
      for (std::size_t u = 0; u < inst.predictor.size(); ++u) {
        out << (u ? ", " : "") << format_double(inst.predictor(static_cast<NodeIndex>(u)));
      }
      out << "]}\n";
    } else {
      out << "# offline online\n";
      write_edge_list(out, inst.graph, {}, {});
    }
  });
  return 0;
}

int cmd_run(const CommonFlags& f) {
  const ExperimentConfig cfg = experiment_config(f);
  const auto result = run_experiment(cfg);
  if (!cfg.output.empty()) save_experiment(result);
  print_summary(result);
  return 0;
}

int cmd_analyze(const CommonFlags& f, const std::string& grid) {
  AnalysisConfig cfg = f.config.empty() ? AnalysisConfig{} : load_analysis_config(f.config);
  if (!grid.empty()) cfg.grid = grid;
  if (f.threads) cfg.threads = *f.threads;
  emit_table(f.out, f.format, run_analysis(cfg));
  return 0;
}

int cmd_snapshot(const CommonFlags& f, const std::string& first,
                 const std::vector<std::string>& later, const std::string& kind) {
  SnapshotConfig cfg;
  cfg.first = first;
  for (const auto& p : later) cfg.later.emplace_back(p);
  cfg.kind = kind == "bipartite" ? EdgeListKind::bipartite : EdgeListKind::undirected;
  if (f.seed) cfg.seed = *f.seed;
  if (f.trials) cfg.trials = *f.trials;
  if (f.threads) cfg.threads = *f.threads;
  emit_table(f.out, f.format, snapshot_table(snapshot_experiment(cfg)));
  return 0;
}

// Quick oracle cross-checks; returns the number of failures.
int cmd_selftest() {
  int failures = 0;
  auto report = [&](bool ok, const std::string& what) {
    std::cout << (ok ? "PASS " : "FAIL ") << what << '\n';
    if (!ok) ++failures;
  };

  {
    // u1..u3 adjacent to v1..v3; u4..u6 each adjacent to one of v1..v3 and a
    // private v4..v6.
    BipartiteGraph::AdjacencyLists adj = {{0, 1, 2, 3}, {0, 1, 2, 4}, {0, 1, 2, 5},
                                          {3},          {4},          {5}};
    const BipartiteGraph g(6, adj);
    auto mpd = min_predicted_degree(DegreePredictor::true_degrees(g));
    std::mt19937_64 rng(1);
    const auto size = run_online(g, *mpd, rng).size();
    report(size == 3 && max_matching(g) == 6, "hard instance: MPD 3, maximum 6");
  }
  {
    std::mt19937_64 rng(7);
    std::size_t mismatches = 0;
    for (int k = 0; k < 200; ++k) {
      const std::size_t n = 1 + rng() % 10, m = 1 + rng() % 10;
      std::bernoulli_distribution edge(0.3);
      BipartiteGraph::AdjacencyLists adj(m);
      for (auto& list : adj) {
        for (NodeIndex u = 0; u < n; ++u) {
          if (edge(rng)) list.push_back(u);
        }
      }
      const BipartiteGraph g(n, adj);
      if (max_matching(g) != brute_force_matching(g)) ++mismatches;
    }
    report(mismatches == 0, "Hopcroft-Karp equals brute force on 200 graphs");
  }
  {
    const auto r = asymptotic_ratio(expcutoff_profile(2.0, 10.0));
    report(std::abs(r.ratio - 0.928) <= 0.0015, "asymptotic ratio alpha=2 cutoff=10 ~ 0.928");
  }
  {
    const auto p = zipf_profile(30, 10.0, 1.0);
    const auto a = hall_expectation(p, 30, 30, BetaMethod::occupancy);
    const auto b = hall_expectation(p, 30, 30, BetaMethod::inclusion_exclusion);
    report(std::abs(a.bound - b.bound) < 1e-9, "Hall expectation: occupancy equals inclusion-exclusion");
  }
  return failures;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online bipartite matching with degree predictions"};
  app.require_subcommand(1);

  CommonFlags gen_flags, run_flags, analyze_flags, snap_flags;
  std::size_t gen_trial = 0;
  auto* gen = app.add_subcommand("generate", "Emit one generated instance as an edge list");
  add_common(gen, gen_flags);
  gen->add_option("--trial", gen_trial, "trial index whose instance is emitted");

  auto* run = app.add_subcommand("run", "Run an experiment from a config file");
  add_common(run, run_flags);

  std::string grid;
  auto* analyze = app.add_subcommand("analyze", "Evaluate analytic ratio grids");
  add_common(analyze, analyze_flags);
  analyze->add_option("--grid", grid, "table1 or zipf")
      ->check(CLI::IsMember({"table1", "zipf"}));

  std::string first, kind = "undirected";
  std::vector<std::string> later;
  auto* snap = app.add_subcommand("snapshot", "Predict from a first snapshot, run on later ones");
  add_common(snap, snap_flags);
  snap->add_option("--first", first, "edge list used for predictions")->required();
  snap->add_option("--later", later, "edge lists to run on")->required();
  snap->add_option("--kind", kind, "bipartite or undirected")
      ->check(CLI::IsMember({"bipartite", "undirected"}));

  auto* self = app.add_subcommand("selftest", "Oracle cross-checks");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*gen) return cmd_generate(gen_flags, gen_trial);
    if (*run) return cmd_run(run_flags);
    if (*analyze) return cmd_analyze(analyze_flags, grid);
    if (*snap) return cmd_snapshot(snap_flags, first, later, kind);
    if (*self) return cmd_selftest() == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
