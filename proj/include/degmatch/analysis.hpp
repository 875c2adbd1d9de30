#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "degmatch/generators.hpp"

namespace degmatch {

/// Unmatched offline nodes per expected-degree class after t arrivals of
/// MinPredictedDegree on a CLV-B graph (the Markov chain Y_d^t).
struct MarkovState {
  std::vector<double> degrees;    // strictly increasing
  std::vector<double> unmatched;  // Y_d^t >= 0
};

/// E[Y_d^{t+1} - Y_d^t] for every class:
///   -(1 - (1 - d/m)^{Y_d}) * prod_{d' < d} (1 - d'/m)^{Y_d'}.
std::vector<double> markov_step_expectation(const MarkovState& state,
                                            std::size_t m);

/// Closed-form solution of the mean-field system
///   dz_d/dt = k_d (1 - e^{z_d}) prod_{d' < d} e^{z_d'},  z_d(0) = -k_d f_d,
/// where -z_d / k_d tracks the unmatched nodes of class d.
///
/// Finite model: f_d are node counts and k_d = -log(1 - d/m), t in [0, m].
/// Asymptotic model: f_d are fractions lambda_d, k_d = d, t = tau in [0, 1].
///
/// The auxiliary chain alpha_i and the constants C_i grow like e^{k t}, so
/// both are held as logarithms. Classes with degree 0 have rate 0; they are
/// never matched and keep z = 0.
class AnalyticSolution {
 public:
  const std::vector<double>& degrees() const { return degrees_; }
  const std::vector<double>& populations() const { return populations_; }
  const std::vector<double>& rates() const { return rates_; }
  /// m for the finite model, 1 for the asymptotic one.
  double horizon() const { return horizon_; }

  /// log C_i; -inf for inactive (degree 0) classes.
  const std::vector<double>& log_constants() const { return log_constants_; }
  /// C_i, possibly +inf when it exceeds the double range.
  double constant(std::size_t i) const;

  /// log alpha_i(t) for every class; NaN where undefined (first active
  /// class and degree-0 classes).
  std::vector<double> log_alpha(double t) const;
  /// z_i(t) for every class.
  std::vector<double> z(double t) const;
  /// -z_i(t) / k_i, i.e. f_i for degree-0 classes.
  std::vector<double> unmatched(double t) const;
  /// sum_i f_i - unmatched_i(t).
  double matched(double t) const;

 private:
  friend AnalyticSolution closed_form_solution(const DegreeProfile&,
                                               std::size_t, std::size_t);
  friend AnalyticSolution asymptotic_solution(const DegreeProfile&);

  static AnalyticSolution build(std::vector<DegreeClass> classes,
                                std::vector<double> rates, double horizon);

  std::vector<double> degrees_;
  std::vector<double> populations_;
  std::vector<double> rates_;
  double horizon_ = 0.0;
  std::vector<double> log_constants_;
  std::vector<double> ratio_;  // k_i / k_{previous active}
  std::vector<std::size_t> active_;
};

/// Finite-size solution. Grouped profiles use f = fraction * n; per-node
/// profiles must have n entries. Throws std::invalid_argument if some class
/// degree is >= m (k undefined).
AnalyticSolution closed_form_solution(const DegreeProfile& profile,
                                      std::size_t n, std::size_t m);

/// Large-n limit (k -> d, f -> lambda, t -> tau).
AnalyticSolution asymptotic_solution(const DegreeProfile& grouped);

/// Expected matching size of MinPredictedDegree with the expected-degree
/// predictor: sum_i f_i + z_i(m) / k_i.
double expected_mpd_size(const DegreeProfile& profile, std::size_t n,
                         std::size_t m);

/// Expected matched fraction in the limit: sum_i lambda_i + z_i(1) / delta_i.
double asymptotic_mpd_fraction(const DegreeProfile& grouped);

/// How the conditional probability beta^Delta (all Delta neighbours of a node
/// touch a degree-1 offline node) is evaluated.
enum class BetaMethod {
  /// Occupancy recursion over the other offline nodes. Every step is a
  /// convex combination, so it stays in [0, 1] for any Delta.
  occupancy,
  /// The alternating inclusion-exclusion sum, compensated. Loses all digits
  /// once C(Delta, Delta/2) outgrows 1/eps; throws NumericalError then.
  inclusion_exclusion,
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Expected |N(S*)|, |S*| and the resulting upper bound
/// n - (E|S*| - E|N(S*)|) on the expected maximum matching.
struct HallExpectation {
  double neighborhood = 0.0;
  double subset = 0.0;
  double bound = 0.0;
};

/// Finite CLV-B version. Grouped profiles need integral fraction * n.
HallExpectation hall_expectation(const DegreeProfile& profile, std::size_t n,
                                 std::size_t m,
                                 BetaMethod method = BetaMethod::occupancy);

/// beta_i^Delta for offline node `node` of a per-node profile.
double hall_beta(const DegreeProfile& profile, std::size_t m, std::size_t node,
                 std::size_t delta, BetaMethod method = BetaMethod::occupancy);

/// Limit fractions E|N(S*)|/m, E|S*|/m and the bound fraction
/// 1 - (E|S*|/m - E|N(S*)|/m).
HallExpectation asymptotic_hall_bound(const DegreeProfile& grouped);

/// Limit beta^Delta = 1 + sum_{r=1}^{Delta} (-1)^r C(Delta, r) e^{-r p} with
/// p = sum_i delta_i lambda_i e^{-delta_i}. The occupancy method uses the
/// binomial-theorem form (1 - e^{-p})^Delta.
double asymptotic_beta(const DegreeProfile& grouped, std::size_t delta,
                       BetaMethod method = BetaMethod::occupancy);

struct AnalyticRatio {
  double mpd = 0.0;
  double hall = 0.0;
  /// mpd / hall, with 0 / 0 defined as 1.
  double ratio = 1.0;
};

AnalyticRatio analytic_ratio(const DegreeProfile& profile, std::size_t n,
                             std::size_t m);
AnalyticRatio asymptotic_ratio(const DegreeProfile& grouped);

/// Empirical check of a concentration inequality
///   Pr(|X - E X| >= radius) <= tail_probability
/// with E X estimated by the sample mean.
struct ConcentrationReport {
  std::size_t samples = 0;
  double mean = 0.0;
  double max_deviation = 0.0;
  double radius = 0.0;
  std::size_t exceedances = 0;
  double tail_probability = 0.0;
  /// Largest exceedance count consistent with tail_probability: N p plus
  /// three binomial standard deviations.
  double allowed_exceedances = 0.0;
  bool violated = false;
};

/// Throws std::invalid_argument with fewer than 30 samples.
ConcentrationReport concentration_check(std::span<const double> results,
                                        double radius, double tail_probability);

/// MinPredictedDegree matching sizes: radius 2 sqrt(m) log m, tail 2/m.
ConcentrationReport mpd_concentration_check(std::span<const double> results,
                                            std::size_t m);

/// Hall statistic |S*| - |N(S*)|: radius c sqrt(n) log n, tail 1/n.
ConcentrationReport hall_concentration_check(std::span<const double> results,
                                             std::size_t n, double c = 2.0);

}  // namespace degmatch
