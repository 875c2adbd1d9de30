#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "degmatch/edge_list.hpp"
#include "degmatch/graph.hpp"
#include "degmatch/rng.hpp"

namespace degmatch {

enum class OutputFormat { csv, json };

/// Parses "csv" or "json"; throws std::invalid_argument otherwise.
OutputFormat parse_output_format(const std::string& text);

/// Flat key = value experiment description. See README for the schema.
///
/// Generators and their parameters (generator.<key>):
///   clvb-zipf        n, m, c, alpha
///   molloy-reed      n_offline, n_online, alpha, cutoff, m_hat
///   pref-attachment  n_offline, n_online, edges_per_online_node, m_hat
///   edge-list        path, kind (bipartite | undirected)
/// Predictors: expected, true, subsample:<fraction>.
struct ExperimentConfig {
  std::string generator = "clvb-zipf";
  std::map<std::string, std::string> generator_params;
  std::string predictor = "expected";
  std::vector<std::string> algorithms = {"mpd", "ranking"};
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  /// Randomise the arrival order in every trial.
  bool shuffle = true;
  /// Randomly relabel offline nodes in every trial (synthetic generators
  /// only). Generators list nodes by decreasing expected degree, which would
  /// make MPD's smallest-index tie-break systematically pick the node most
  /// likely to be needed later.
  bool relabel = true;
  std::string output;
  OutputFormat format = OutputFormat::csv;
  /// Worker threads; 0 means hardware concurrency.
  std::size_t threads = 0;

  /// Throws std::invalid_argument describing the first problem found.
  void validate() const;
};

/// Reads the key = value format; '#' starts a comment. Unknown keys and
/// malformed values throw ParseError with the line number.
ExperimentConfig parse_config(std::istream& in, const std::string& source);
ExperimentConfig load_config(const std::filesystem::path& path);
void write_config(std::ostream& out, const ExperimentConfig& cfg);

/// Aborts a run when a per-trial invariant fails.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TrialResult {
  std::size_t trial_index = 0;
  /// Matching size per configured algorithm, in config order.
  std::vector<std::size_t> sizes;
  std::vector<double> ratios;
  std::size_t max_matching = 0;
  std::size_t hall_bound = 0;
  double predictor_error = 0.0;
  double wall_seconds = 0.0;
  /// Edgeless instance: every ratio is 0 / 0, reported as 1.
  bool degenerate = false;
};

struct AlgorithmSummary {
  std::string algorithm;
  double mean_ratio = 0.0;
  /// Population standard deviation of the per-trial ratios.
  double std_ratio = 0.0;
  double mean_size = 0.0;
};

struct ExperimentSummary {
  std::size_t trials = 0;
  std::size_t degenerate_trials = 0;
  double mean_max_matching = 0.0;
  double mean_hall_bound = 0.0;
  double mean_predictor_error = 0.0;
  std::vector<AlgorithmSummary> algorithms;
  std::vector<std::string> warnings;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TrialResult> trials;
  ExperimentSummary summary;
};

/// One generated trial: graph, predictor and the true-degree reference.
struct TrialInstance {
  BipartiteGraph graph;
  DegreePredictor predictor;
};

/// Builds the instance for trial `seed.trial_index` (generation, relabeling,
/// arrival shuffle, predictor). Deterministic in (cfg, seed).
TrialInstance make_trial_instance(const ExperimentConfig& cfg,
                                  const TrialSeed& seed);

/// Runs every trial (in parallel), checks per-trial invariants and
/// summarises. Results are stored in trial-index order.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Recomputes the summary from per-trial records.
ExperimentSummary summarize(const std::vector<std::string>& algorithms,
                            const std::vector<TrialResult>& trials);

/// Header plus rows of cells; numbers are printed with 17 significant digits.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
};

std::string format_double(double x);
void write_csv(std::ostream& out, const CsvTable& table);
/// Throws ParseError on ragged rows.
CsvTable read_csv(std::istream& in, const std::string& source);
/// Array of row objects; cells that parse fully as numbers become numbers.
std::string table_json(const CsvTable& table);

/// One row per algorithm: algorithm, trials, mean_ratio, std_ratio,
/// mean_size, mean_max_matching, mean_hall_bound, mean_predictor_error.
CsvTable summary_table(const ExperimentResult& result);
/// One row per trial: trial, max_matching, hall_bound, predictor_error,
/// then size_<alg> and ratio_<alg> for each algorithm. No wall time, so
/// identical seeds give identical files.
CsvTable trials_table(const ExperimentResult& result);
/// Config, summary and per-trial records (with wall time) as JSON.
std::string experiment_json(const ExperimentResult& result);

/// Writes the result to cfg.output in cfg.format. CSV writes the summary to
/// the output path and the per-trial table next to it as <stem>.trials.csv.
void save_experiment(const ExperimentResult& result);

/// Analytic grids.
///   table1: asymptotic ratio per (alpha, cutoff); columns
///           alpha, cutoff, mpd_expected, hall_bound, ratio.
///   zipf:   finite CLV-B Zipf with n = m and C = c_ratio * m; columns
///           alpha, n, m, c, mpd_expected, hall_bound, ratio.
struct AnalysisConfig {
  std::string grid = "table1";
  std::vector<double> alphas = {0.5, 1.0, 1.5, 2.0};
  std::vector<double> cutoffs = {10.0, 100.0, 1000.0, 10000.0, 100000.0};
  std::vector<std::size_t> sizes = {10, 100, 1000, 10000};
  double c_ratio = 0.5;
  std::size_t threads = 0;
};

/// Keys: grid, alphas, cutoffs, sizes (comma lists), c_ratio, threads.
AnalysisConfig parse_analysis_config(std::istream& in, const std::string& source);
AnalysisConfig load_analysis_config(const std::filesystem::path& path);

CsvTable run_analysis(const AnalysisConfig& cfg);

/// Result of the first-snapshot pipeline for one later snapshot.
struct SnapshotSummary {
  std::string path;
  std::size_t n_offline = 0;
  std::size_t m_online = 0;
  double predictor_error = 0.0;
  std::vector<AlgorithmSummary> algorithms;
};

struct SnapshotConfig {
  std::filesystem::path first;
  std::vector<std::filesystem::path> later;
  EdgeListKind kind = EdgeListKind::undirected;
  std::vector<std::string> algorithms = {"mpd", "mindegree", "ranking"};
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::size_t threads = 0;
};

/// Degree predictions come from the first snapshot; every later snapshot is
/// run with a fresh arrival shuffle per trial.
std::vector<SnapshotSummary> snapshot_experiment(const SnapshotConfig& cfg);

/// Columns: snapshot, n_offline, m_online, predictor_error, then
/// mean_ratio_<alg> and std_ratio_<alg> per algorithm.
CsvTable snapshot_table(const std::vector<SnapshotSummary>& summaries);

/// Undirected edge drift: each edge independently, with probability `rate`,
/// has one endpoint moved to a uniformly random node. Self-loops and
/// duplicates are re-drawn (up to 32 times, then the edge is kept).
std::vector<std::pair<std::size_t, std::size_t>> rewire_edges(
    std::vector<std::pair<std::size_t, std::size_t>> edges,
    std::size_t n_nodes, double rate, Rng& rng);

/// Runs fn(i) for i in [0, count) on up to `threads` workers (0 = hardware
/// concurrency). The exception of the lowest failing index is rethrown.
template <class Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn);

}  // namespace degmatch

#include "degmatch/detail/parallel.hpp"
