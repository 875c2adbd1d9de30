// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>
#include <vector>

#include "degmatch/algorithms.hpp"
#include "degmatch/analysis.hpp"
#include "degmatch/harness.hpp"
#include "degmatch/online.hpp"
#include "degmatch/oracle.hpp"
#include "fixtures.hpp"
#include "ode_oracle.hpp"

using namespace degmatch;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

ExperimentConfig zipf_config(std::size_t n, double alpha, std::size_t trials) {
  ExperimentConfig cfg;
  cfg.generator = "clvb-zipf";
  cfg.generator_params = {{"n", std::to_string(n)},
                          {"m", std::to_string(n)},
                          {"c", format_double(static_cast<double>(n) / 2.0)},
                          {"alpha", format_double(alpha)}};
  cfg.trials = trials;
  cfg.seed = 20240601;
  return cfg;
}

double mean_ratio(const ExperimentResult& r, const std::string& algorithm) {
  for (const auto& a : r.summary.algorithms) {
    if (a.algorithm == algorithm) return a.mean_ratio;
  }
  throw std::logic_error("missing algorithm " + algorithm);
}

void hard_instance() {
  const auto g = fixtures::hard_instance();
  auto mpd = min_predicted_degree(DegreePredictor::true_degrees(g));
  const auto size = run_online(g, *mpd, TrialSeed{1, 0}).size();
  const auto best = max_matching(g);
  const double ratio = static_cast<double>(size) / static_cast<double>(best);
  report(1, size == 3 && best == 6 && ratio == 0.5,
         fmt("hard instance MPD %zu, maximum %zu, ratio %.3f", size, best, ratio));
}

void table_one() {
  const auto start = std::chrono::steady_clock::now();
  const auto table = run_analysis(AnalysisConfig{});
  const double elapsed = seconds_since(start);
  const double printed[4][5] = {{0.967, 0.998, 1.000, 1.000, 1.000},
                                {0.948, 0.986, 0.995, 0.997, 0.998},
                                {0.934, 0.958, 0.966, 0.969, 0.970},
                                {0.928, 0.937, 0.940, 0.940, 0.940}};
  const double alphas[] = {0.5, 1.0, 1.5, 2.0};
  const double cutoffs[] = {10.0, 100.0, 1000.0, 10000.0, 100000.0};
  double worst = 0.0;
  std::size_t matched = 0;
  for (std::size_t row = 0; row < table.rows.size(); ++row) {
    for (int a = 0; a < 4; ++a) {
      for (int c = 0; c < 5; ++c) {
        if (table.number(row, "alpha") == alphas[a] && table.number(row, "cutoff") == cutoffs[c]) {
          worst = std::max(worst, std::abs(table.number(row, "ratio") - printed[a][c]));
          ++matched;
        }
      }
    }
  }
  report(2, matched == 20 && worst <= 0.0015 && elapsed < 60.0,
         fmt("%zu/20 cells, max deviation %.5f (limit 0.0015), %.1f s", matched, worst, elapsed));
}

void zipf_experiment() {
  auto cfg = zipf_config(1000, 0.8, 100);
  cfg.algorithms = {"mpd", "ranking"};
  const auto mid = run_experiment(cfg);
  const double mpd = mean_ratio(mid, "mpd"), rank = mean_ratio(mid, "ranking");
  cfg.algorithms = {"mpd"};
  cfg.generator_params["alpha"] = "0.2";
  const double low = mean_ratio(run_experiment(cfg), "mpd");
  cfg.generator_params["alpha"] = "2";
  const double high = mean_ratio(run_experiment(cfg), "mpd");
  const bool ok = mpd >= 0.91 && mpd <= 0.95 && rank >= 0.84 && rank <= 0.88 && low > 0.995 &&
                  high > 0.995;
  report(3, ok,
         fmt("alpha 0.8: MPD %.4f in [0.91, 0.95], Ranking %.4f in [0.84, 0.88]; "
             "alpha 0.2 MPD %.4f, alpha 2 MPD %.4f (> 0.995)",
             mpd, rank, low, high));
}

void noise_experiment() {
  auto cfg = zipf_config(1000, 1.0, 100);
  cfg.algorithms = {"mpd", "ranking"};
  std::vector<double> mpd;
  double rank = 0.0;
  for (const char* fraction : {"1", "0.1", "0.01"}) {
    cfg.predictor = std::string("subsample:") + fraction;
    const auto r = run_experiment(cfg);
    mpd.push_back(mean_ratio(r, "mpd"));
    rank = mean_ratio(r, "ranking");
  }
  const bool ok = mpd[0] >= mpd[1] && mpd[1] >= mpd[2] && mpd[2] > rank;
  report(4, ok,
         fmt("MPD at fractions 1, 0.1, 0.01: %.4f, %.4f, %.4f; Ranking %.4f", mpd[0], mpd[1],
             mpd[2], rank));
}

void ode_fidelity() {
  Rng rng(424242);
  double worst_scaled = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = 50 + rng() % 951;
    const std::size_t classes = 1 + rng() % 5;
    std::vector<double> degrees;
    std::uniform_real_distribution<double> degree(0.5, static_cast<double>(m) / 10.0);
    while (degrees.size() < classes) {
      const double d = degree(rng);
      if (std::find(degrees.begin(), degrees.end(), d) == degrees.end()) degrees.push_back(d);
    }
    std::sort(degrees.begin(), degrees.end());
    std::uniform_real_distribution<double> unit(0.05, 1.0);
    std::vector<double> w(classes);
    for (auto& x : w) x = unit(rng);
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    std::vector<DegreeClass> cls;
    for (std::size_t i = 0; i < classes; ++i) cls.push_back({degrees[i], w[i] / total});
    const auto sol = closed_form_solution(DegreeProfile::grouped(cls), m, m);

    const auto& k = sol.rates();
    oracle::State z0(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) z0[i] = -k[i] * sol.populations()[i];
    const auto path = oracle::integrate(
        [&](const oracle::State& z) { return oracle::mean_field_rhs(k, z); }, z0, 0.0,
        static_cast<double>(m));
    double worst = 0.0;
    for (const auto& s : path) {
      const auto exact = sol.z(s.t);
      for (std::size_t i = 0; i < k.size(); ++i) worst = std::max(worst, std::abs(exact[i] - s.z[i]));
    }
    worst_scaled = std::max(worst_scaled, worst / static_cast<double>(m));
  }
  report(5, worst_scaled < 1e-6,
         fmt("50 profiles, max |closed form - RK45| / m = %.3g (limit 1e-6)", worst_scaled));
}

void analytic_vs_simulation() {
  bool ok = true;
  std::string detail;
  for (double alpha : {0.5, 1.0, 1.5}) {
    auto cfg = zipf_config(2000, alpha, 200);
    cfg.algorithms = {"mpd"};
    const auto r = run_experiment(cfg);
    const auto profile = zipf_profile(2000, 1000.0, alpha);
    const double expected = expected_mpd_size(profile, 2000, 2000);
    const double hall = hall_expectation(profile, 2000, 2000).bound;
    const double simulated = r.summary.algorithms[0].mean_size;
    const double rel = std::abs(expected - simulated) / simulated;
    const double best = r.summary.mean_max_matching;
    double sq = 0.0;
    for (const auto& t : r.trials) {
      const double x = static_cast<double>(t.max_matching) - best;
      sq += x * x;
    }
    const double se = std::sqrt(sq / static_cast<double>(r.trials.size())) /
                      std::sqrt(static_cast<double>(r.trials.size()));
    const bool cell = rel < 0.01 && hall >= best;
    ok = ok && cell;
    detail += fmt("%salpha %.1f: analytic %.2f vs simulated %.2f (rel %.4f), Hall %.2f >= max "
                  "%.2f (se %.2f)",
                  detail.empty() ? "" : "; ", alpha, expected, simulated, rel, hall, best, se);
  }
  report(6, ok, detail);
}

void hall_tightness() {
  const auto profile = zipf_profile(1000, 500.0, 1.0);
  std::size_t valid = 0, tight = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    const auto g = clvb_sample(profile, 1000, TrialSeed{77, t});
    const auto best = max_matching(g);
    const auto bound = hall_subset(g).bound;
    if (bound >= best) ++valid;
    if (static_cast<double>(bound) <= 1.02 * static_cast<double>(best)) ++tight;
  }
  report(7, valid == 100 && tight >= 95,
         fmt("bound >= maximum in %zu/100, within 2%% in %zu/100", valid, tight));
}

void oracle_equivalence() {
  Rng rng(8080);
  std::size_t mismatches = 0;
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = 1 + rng() % 10, m = 1 + rng() % 10;
    const double p = 0.05 + 0.9 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const auto g = fixtures::random_graph(n, m, p, rng);
    if (max_matching(g) != brute_force_matching(g)) ++mismatches;
  }
  report(8, mismatches == 0, fmt("Hopcroft-Karp vs brute force, %zu mismatches on 500 graphs", mismatches));
}

void greedy_properties() {
  const std::vector<std::string> policies = {"mpd", "mindegree", "ranking", "greedy",
                                             "mpd-augment:skip-alternate",
                                             "mpd-augment:always-skip", "mpd-augment:ranking"};
  Rng rng(9090);
  std::size_t violations = 0, runs = 0;
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 1 + rng() % 40, m = 1 + rng() % 40;
    const double p = std::uniform_real_distribution<double>(0.01, 0.5)(rng);
    const auto g = fixtures::shuffled_random_graph(n, m, p, rng);
    const std::size_t best = max_matching(g);
    std::vector<double> noise(n);
    for (auto& x : noise) x = std::uniform_real_distribution<double>(0.0, 10.0)(rng);
    const DegreePredictor sigma(noise);
    for (const auto& name : policies) {
      auto algo = make_algorithm(name, {&g, &sigma});
      const auto matching = run_online(g, *algo, TrialSeed{12, static_cast<std::uint64_t>(k)});
      ++runs;
      if (validate_matching(g, matching) || !is_maximal(g, matching) ||
          2 * matching.size() < best) {
        ++violations;
      }
    }
  }
  report(9, violations == 0,
         fmt("%zu runs over 1000 graphs and %zu greedy policies, %zu violations", runs,
             policies.size(), violations));
}

void concentration() {
  auto cfg = zipf_config(1000, 0.8, 100);
  cfg.algorithms = {"mpd"};
  const auto r = run_experiment(cfg);
  std::vector<double> sizes, hall;
  for (const auto& t : r.trials) {
    sizes.push_back(static_cast<double>(t.sizes[0]));
    hall.push_back(1000.0 - static_cast<double>(t.hall_bound));
  }
  const auto a = mpd_concentration_check(sizes, 1000);
  const auto b = hall_concentration_check(hall, 1000, 2.0);
  report(10, a.exceedances == 0 && b.exceedances == 0 && !a.violated && !b.violated,
         fmt("MPD max deviation %.2f < %.2f, Hall statistic max deviation %.2f < %.2f",
             a.max_deviation, a.radius, b.max_deviation, b.radius));
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  hard_instance();
  table_one();
  zipf_experiment();
  noise_experiment();
  ode_fidelity();
  analytic_vs_simulation();
  hall_tightness();
  oracle_equivalence();
  greedy_properties();
  concentration();
  std::printf("%d of 10 criteria failed (%.1f s)\n", failures, seconds_since(start));
  return failures == 0 ? 0 : 1;
}
