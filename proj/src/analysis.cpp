#include "degmatch/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "numeric.hpp"

namespace degmatch {

using detail::kNegInf;

std::vector<double> markov_step_expectation(const MarkovState& state,
                                            std::size_t m) {
  if (state.degrees.size() != state.unmatched.size()) {
    throw std::invalid_argument("markov state: degree and count vectors differ in size");
  }
  const auto md = static_cast<double>(m);
  std::vector<double> out(state.degrees.size(), 0.0);
  // log prod_{d' < d} (1 - d'/m)^{Y_d'}
  double log_none_below = 0.0;
  for (std::size_t i = 0; i < state.degrees.size(); ++i) {
    const double d = state.degrees[i];
    const double y = state.unmatched[i];
    if (y < 0.0) throw std::invalid_argument("markov state: negative unmatched count");
    if (i > 0 && !(state.degrees[i - 1] < d)) {
      throw std::invalid_argument("markov state: degrees must be strictly increasing");
    }
    if (d > md) throw std::invalid_argument("markov state: degree exceeds m");
    const double log_miss = y == 0.0 ? 0.0 : y * std::log1p(-d / md);
    out[i] = std::expm1(log_miss) * std::exp(log_none_below);
    log_none_below += log_miss;
  }
  return out;
}

AnalyticSolution AnalyticSolution::build(std::vector<DegreeClass> classes,
                                         std::vector<double> rates,
                                         double horizon) {
  AnalyticSolution s;
  s.horizon_ = horizon;
  s.rates_ = std::move(rates);
  s.degrees_.reserve(classes.size());
  s.populations_.reserve(classes.size());
  for (const auto& c : classes) {
    s.degrees_.push_back(c.degree);
    s.populations_.push_back(c.weight);
  }
  const std::size_t count = classes.size();
  s.log_constants_.assign(count, kNegInf);
  s.ratio_.assign(count, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < count; ++i) {
    if (s.rates_[i] > 0.0) s.active_.push_back(i);
  }
  if (s.active_.empty()) return s;

  // C_1 = e^{k_1 f_1} - 1;  alpha_2(0) = C_1 + 1;
  // alpha_i(0) = alpha_{i-1}(0)^{k_{i-1}/k_{i-2}} + C_{i-1};
  // C_i = alpha_i(0)^{k_i/k_{i-1}} (e^{k_i f_i} - 1).
  const std::size_t first = s.active_.front();
  s.log_constants_[first] =
      detail::log_expm1(s.rates_[first] * s.populations_[first]);
  double log_alpha0 = 0.0;
  for (std::size_t a = 1; a < s.active_.size(); ++a) {
    const std::size_t i = s.active_[a];
    const std::size_t prev = s.active_[a - 1];
    s.ratio_[i] = s.rates_[i] / s.rates_[prev];
    if (a == 1) {
      log_alpha0 = detail::logaddexp(s.log_constants_[prev], 0.0);
    } else {
      log_alpha0 = detail::logaddexp(s.ratio_[prev] * log_alpha0,
                                     s.log_constants_[prev]);
    }
    s.log_constants_[i] = s.ratio_[i] * log_alpha0 +
                          detail::log_expm1(s.rates_[i] * s.populations_[i]);
  }
  return s;
}

double AnalyticSolution::constant(std::size_t i) const {
  return std::exp(log_constants_.at(i));
}

std::vector<double> AnalyticSolution::log_alpha(double t) const {
  std::vector<double> out(degrees_.size(), std::numeric_limits<double>::quiet_NaN());
  if (active_.size() < 2) return out;
  const std::size_t first = active_.front();
  double log_alpha = detail::logaddexp(log_constants_[first], rates_[first] * t);
  out[active_[1]] = log_alpha;
  for (std::size_t a = 2; a < active_.size(); ++a) {
    const std::size_t prev = active_[a - 1];
    log_alpha = detail::logaddexp(ratio_[prev] * log_alpha, log_constants_[prev]);
    out[active_[a]] = log_alpha;
  }
  return out;
}

std::vector<double> AnalyticSolution::z(double t) const {
  std::vector<double> out(degrees_.size(), 0.0);
  if (active_.empty()) return out;
  const std::size_t first = active_.front();
  out[first] = -detail::softplus(log_constants_[first] - rates_[first] * t);
  const auto log_alphas = log_alpha(t);
  for (std::size_t a = 1; a < active_.size(); ++a) {
    const std::size_t i = active_[a];
    out[i] = -detail::softplus(log_constants_[i] - ratio_[i] * log_alphas[i]);
  }
  return out;
}

std::vector<double> AnalyticSolution::unmatched(double t) const {
  auto out = z(t);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = rates_[i] > 0.0 ? -out[i] / rates_[i] : populations_[i];
  }
  return out;
}

double AnalyticSolution::matched(double t) const {
  const auto left = unmatched(t);
  detail::CompensatedSum sum;
  for (std::size_t i = 0; i < left.size(); ++i) sum.add(populations_[i] - left[i]);
  return sum.value();
}

namespace {

std::vector<DegreeClass> finite_classes(const DegreeProfile& profile,
                                        std::size_t n) {
  if (profile.is_per_node() && profile.size() != n) {
    std::ostringstream os;
    os << "per-node profile has " << profile.size() << " entries but n = " << n;
    throw std::invalid_argument(os.str());
  }
  auto classes = profile.classes();
  if (!profile.is_per_node()) {
    for (auto& c : classes) c.weight *= static_cast<double>(n);
  }
  return classes;
}

}  // namespace

AnalyticSolution closed_form_solution(const DegreeProfile& profile,
                                      std::size_t n, std::size_t m) {
  auto classes = finite_classes(profile, n);
  const auto md = static_cast<double>(m);
  std::vector<double> rates;
  rates.reserve(classes.size());
  for (const auto& c : classes) {
    if (!(c.degree < md)) {
      std::ostringstream os;
      os << "expected degree " << c.degree << " >= m = " << m
         << " leaves k = -log(1 - d/m) undefined";
      throw std::invalid_argument(os.str());
    }
    rates.push_back(-std::log1p(-c.degree / md));
  }
  return AnalyticSolution::build(std::move(classes), std::move(rates), md);
}

AnalyticSolution asymptotic_solution(const DegreeProfile& grouped) {
  if (grouped.is_per_node()) {
    throw std::invalid_argument("asymptotic solution needs a grouped profile");
  }
  auto classes = grouped.classes();
  std::vector<double> rates;
  rates.reserve(classes.size());
  for (const auto& c : classes) rates.push_back(c.degree);
  return AnalyticSolution::build(std::move(classes), std::move(rates), 1.0);
}

double expected_mpd_size(const DegreeProfile& profile, std::size_t n,
                         std::size_t m) {
  return closed_form_solution(profile, n, m).matched(static_cast<double>(m));
}

double asymptotic_mpd_fraction(const DegreeProfile& grouped) {
  return asymptotic_solution(grouped).matched(1.0);
}

namespace {

double safe_ratio(double num, double den) {
  if (num == 0.0 && den == 0.0) return 1.0;
  return num / den;
}

}  // namespace

AnalyticRatio analytic_ratio(const DegreeProfile& profile, std::size_t n,
                             std::size_t m) {
  AnalyticRatio r;
  if (profile.size() == 0) return r;
  r.mpd = expected_mpd_size(profile, n, m);
  r.hall = hall_expectation(profile, n, m).bound;
  r.ratio = safe_ratio(r.mpd, r.hall);
  return r;
}

AnalyticRatio asymptotic_ratio(const DegreeProfile& grouped) {
  AnalyticRatio r;
  if (grouped.size() == 0) return r;
  r.mpd = asymptotic_mpd_fraction(grouped);
  r.hall = asymptotic_hall_bound(grouped).bound;
  r.ratio = safe_ratio(r.mpd, r.hall);
  return r;
}

ConcentrationReport concentration_check(std::span<const double> results,
                                        double radius, double tail_probability) {
  if (results.size() < 30) {
    throw std::invalid_argument("concentration check needs at least 30 results");
  }
  ConcentrationReport rep;
  rep.samples = results.size();
  rep.radius = radius;
  rep.tail_probability = std::clamp(tail_probability, 0.0, 1.0);

  detail::CompensatedSum sum;
  for (double x : results) sum.add(x);
  rep.mean = sum.value() / static_cast<double>(results.size());
  for (double x : results) {
    const double dev = std::abs(x - rep.mean);
    rep.max_deviation = std::max(rep.max_deviation, dev);
    if (dev >= radius) ++rep.exceedances;
  }
  const double count = static_cast<double>(rep.samples);
  const double p = rep.tail_probability;
  rep.allowed_exceedances = count * p + 3.0 * std::sqrt(count * p * (1.0 - p));
  rep.violated = static_cast<double>(rep.exceedances) > rep.allowed_exceedances;
  return rep;
}

ConcentrationReport mpd_concentration_check(std::span<const double> results,
                                            std::size_t m) {
  const auto md = static_cast<double>(m);
  return concentration_check(results, 2.0 * std::sqrt(md) * std::log(md), 2.0 / md);
}

ConcentrationReport hall_concentration_check(std::span<const double> results,
                                             std::size_t n, double c) {
  const auto nd = static_cast<double>(n);
  return concentration_check(results, c * std::sqrt(nd) * std::log(nd), 1.0 / nd);
}

}  // namespace degmatch
