#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "degmatch/analysis.hpp"
#include "numeric.hpp"

namespace degmatch {
namespace {

constexpr double kTailCut = 1e-12;
// Relative rounding budget for the alternating sum before it is rejected.
constexpr double kCancellationLimit = 1e-8;
constexpr double kUnitSlack = 1e-9;

struct HallClass {
  double p = 0.0;      // edge probability d / m
  std::size_t count = 0;
  double x = 0.0;      // p (1 - p)^{m-1}
};

// Probability that a fixed online node is adjacent to a given offline node of
// edge probability p and that node has no other edge: p (1 - p)^{m-1}.
double degree_one_hit(double p, std::size_t m) {
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return m == 1 ? 1.0 : 0.0;
  return std::exp(std::log(p) + static_cast<double>(m - 1) * std::log1p(-p));
}

std::vector<HallClass> hall_classes(const DegreeProfile& profile, std::size_t n,
                                    std::size_t m) {
  if (m == 0) throw std::invalid_argument("hall expectation needs m >= 1");
  const auto md = static_cast<double>(m);
  std::vector<HallClass> out;
  if (profile.is_per_node()) {
    if (profile.size() != n) {
      std::ostringstream os;
      os << "per-node profile has " << profile.size() << " entries but n = " << n;
      throw std::invalid_argument(os.str());
    }
    profile.check_for(m);
    for (const auto& c : profile.classes()) {
      HallClass h;
      h.p = c.degree / md;
      h.count = static_cast<std::size_t>(std::llround(c.weight));
      out.push_back(h);
    }
  } else {
    for (const auto& c : profile.classes()) {
      const double nodes = c.weight * static_cast<double>(n);
      const double rounded = std::round(nodes);
      if (std::abs(nodes - rounded) > 1e-6) {
        std::ostringstream os;
        os << "class of degree " << c.degree << " holds " << nodes
           << " nodes; fraction * n must be integral";
        throw std::invalid_argument(os.str());
      }
      if (c.degree > md) {
        throw std::invalid_argument("profile degree exceeds m");
      }
      HallClass h;
      h.p = c.degree / md;
      h.count = static_cast<std::size_t>(rounded);
      if (h.count > 0) out.push_back(h);
    }
  }
  for (auto& h : out) h.x = degree_one_hit(h.p, m);
  return out;
}

// Row-vector occupancy recursion. State c = number of the Delta fixed online
// nodes already covered by some degree-1 offline node. Each offline node
// covers at most one of them, the specific uncovered one with probability x.
class Occupancy {
 public:
  explicit Occupancy(std::size_t delta) : delta_(delta), w_(delta + 1, 0.0) {
    w_[0] = 1.0;
  }

  void apply(double x, std::size_t times) {
    if (x == 0.0) return;
    for (std::size_t rep = 0; rep < times; ++rep) {
      for (std::size_t c = delta_; c >= 1; --c) {
        w_[c] = w_[c] * (1.0 - static_cast<double>(delta_ - c) * x) +
                w_[c - 1] * static_cast<double>(delta_ - c + 1) * x;
      }
      w_[0] *= 1.0 - static_cast<double>(delta_) * x;
    }
  }

  // Pr(all Delta covered) with one node of hit probability x removed.
  double covered_without(double x) const {
    if (x == 0.0) return clamp_unit(w_[delta_]);
    std::vector<double> v(delta_ + 1);
    v[0] = w_[0] / (1.0 - static_cast<double>(delta_) * x);
    for (std::size_t c = 1; c <= delta_; ++c) {
      v[c] = (w_[c] - v[c - 1] * static_cast<double>(delta_ - c + 1) * x) /
             (1.0 - static_cast<double>(delta_ - c) * x);
    }
    return clamp_unit(v[delta_]);
  }

 private:
  static double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

  std::size_t delta_;
  std::vector<double> w_;
};

std::vector<double> occupancy_betas(const std::vector<HallClass>& classes,
                                    std::size_t delta) {
  Occupancy occ(delta);
  for (const auto& h : classes) occ.apply(h.x, h.count);
  std::vector<double> out;
  out.reserve(classes.size());
  for (const auto& h : classes) out.push_back(occ.covered_without(h.x));
  return out;
}

// 1 + sum_r (-1)^r C(Delta, r) term(r), compensated, with a rounding check.
template <class Term>
double alternating_beta(std::size_t delta, Term term) {
  detail::CompensatedSum sum;
  sum.add(1.0);
  double magnitude = 1.0;
  double binom = 1.0;
  for (std::size_t r = 1; r <= delta; ++r) {
    binom = binom * static_cast<double>(delta - r + 1) / static_cast<double>(r);
    const double t = binom * term(r);
    magnitude += std::abs(t);
    sum.add(r % 2 == 1 ? -t : t);
  }
  const double beta = sum.value();
  const double rounding = magnitude * std::numeric_limits<double>::epsilon();
  if (!std::isfinite(beta) || beta < -kUnitSlack || beta > 1.0 + kUnitSlack ||
      rounding > kCancellationLimit) {
    std::ostringstream os;
    os << "inclusion-exclusion for beta at Delta = " << delta
       << " lost its precision (value " << beta << ", term mass " << magnitude
       << "); use the occupancy method";
    throw NumericalError(os.str());
  }
  return std::clamp(beta, 0.0, 1.0);
}

// prod over nodes of (1 - r x)^{count}, optionally with one node of class
// `skip` removed.
double miss_product(const std::vector<HallClass>& classes, double r,
                    std::size_t skip) {
  double log_prod = 0.0;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const auto& h = classes[k];
    const std::size_t count = h.count - (k == skip ? 1 : 0);
    if (count == 0 || h.x == 0.0) continue;
    const double factor = 1.0 - r * h.x;
    if (factor <= 0.0) return 0.0;
    log_prod += static_cast<double>(count) * std::log1p(-r * h.x);
  }
  return std::exp(log_prod);
}

std::vector<double> inclusion_exclusion_betas(
    const std::vector<HallClass>& classes, std::size_t delta) {
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<double> shared(delta + 1, 0.0);
  for (std::size_t r = 1; r <= delta; ++r) {
    shared[r] = miss_product(classes, static_cast<double>(r), kNone);
  }
  std::vector<double> out;
  out.reserve(classes.size());
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const double x = classes[k].x;
    out.push_back(alternating_beta(delta, [&](std::size_t r) {
      const double factor = 1.0 - static_cast<double>(r) * x;
      if (factor > kTailCut) return shared[r] / factor;
      return miss_product(classes, static_cast<double>(r), k);
    }));
  }
  return out;
}

std::vector<double> betas(const std::vector<HallClass>& classes,
                          std::size_t delta, BetaMethod method) {
  if (delta < 2) return std::vector<double>(classes.size(), 1.0);
  return method == BetaMethod::occupancy
             ? occupancy_betas(classes, delta)
             : inclusion_exclusion_betas(classes, delta);
}

// Smallest Delta with Pr(Bin(m, p) > Delta) < kTailCut (Chernoff bound).
std::size_t binomial_cap(std::size_t m, double p) {
  const auto md = static_cast<double>(m);
  if (p <= 0.0) return 0;
  if (p >= 1.0) return m;
  const double target = std::log(kTailCut);
  for (std::size_t k = static_cast<std::size_t>(std::ceil(md * p)); k < m; ++k) {
    const double a = static_cast<double>(k + 1) / md;
    if (a >= 1.0) return m;
    const double kl = a * std::log(a / p) + (1.0 - a) * std::log((1.0 - a) / (1.0 - p));
    if (-md * kl < target) return k;
  }
  return m;
}

}  // namespace

HallExpectation hall_expectation(const DegreeProfile& profile, std::size_t n,
                                 std::size_t m, BetaMethod method) {
  const auto classes = hall_classes(profile, n, m);
  const auto md = static_cast<double>(m);
  HallExpectation out;

  detail::CompensatedSum log_miss;
  for (const auto& h : classes) {
    if (h.x >= 1.0) {
      log_miss.add(detail::kNegInf);
      break;
    }
    log_miss.add(static_cast<double>(h.count) * std::log1p(-h.x));
  }
  out.neighborhood = -md * std::expm1(log_miss.value());

  std::size_t cap = 0;
  for (const auto& h : classes) cap = std::max(cap, binomial_cap(m, h.p));

  detail::CompensatedSum subset;
  for (const auto& h : classes) {
    const double c = static_cast<double>(h.count);
    subset.add(c * std::exp(detail::log_binomial_pmf(md, 0.0, h.p)));
    subset.add(c * std::exp(detail::log_binomial_pmf(md, 1.0, h.p)));
  }
  const auto total = static_cast<double>(n);
  for (std::size_t delta = 2; delta <= cap; ++delta) {
    const auto beta = betas(classes, delta, method);
    double beta_max = 0.0;
    for (std::size_t k = 0; k < classes.size(); ++k) {
      const auto& h = classes[k];
      beta_max = std::max(beta_max, beta[k]);
      const double pmf =
          std::exp(detail::log_binomial_pmf(md, static_cast<double>(delta), h.p));
      subset.add(static_cast<double>(h.count) * pmf * beta[k]);
    }
    // beta is non-increasing in Delta, so the rest is below n * beta_max.
    if (beta_max * total < kTailCut) break;
  }
  out.subset = subset.value();
  out.bound = total - (out.subset - out.neighborhood);
  return out;
}

double hall_beta(const DegreeProfile& profile, std::size_t m, std::size_t node,
                 std::size_t delta, BetaMethod method) {
  if (!profile.is_per_node()) {
    throw std::invalid_argument("hall_beta needs a per-node profile");
  }
  if (node >= profile.size()) throw std::out_of_range("hall_beta: node out of range");
  const auto classes = hall_classes(profile, profile.size(), m);
  const double p = profile.degrees()[node] / static_cast<double>(m);
  const auto it = std::find_if(classes.begin(), classes.end(),
                               [&](const HallClass& h) { return h.p == p; });
  const auto b = betas(classes, delta, method);
  return b[static_cast<std::size_t>(it - classes.begin())];
}

namespace {

double asymptotic_hit_mass(const DegreeProfile& grouped) {
  if (grouped.is_per_node()) {
    throw std::invalid_argument("asymptotic Hall bound needs a grouped profile");
  }
  detail::CompensatedSum p;
  for (const auto& c : grouped.classes()) {
    p.add(c.degree * c.weight * std::exp(-c.degree));
  }
  return p.value();
}

}  // namespace

HallExpectation asymptotic_hall_bound(const DegreeProfile& grouped) {
  const double p = asymptotic_hit_mass(grouped);
  const double q = -std::expm1(-p);
  HallExpectation out;
  out.neighborhood = q;
  // Poisson(delta) degrees: sum_Delta Pr(Delta) q^Delta summed in closed form,
  // with the Delta = 1 term counted without the q factor.
  detail::CompensatedSum s;
  for (const auto& c : grouped.classes()) {
    const double d = c.degree;
    s.add(c.weight * (std::exp(-d * (1.0 - q)) + d * std::exp(-d) * (1.0 - q)));
  }
  out.subset = s.value();
  out.bound = 1.0 - (out.subset - out.neighborhood);
  return out;
}

double asymptotic_beta(const DegreeProfile& grouped, std::size_t delta,
                       BetaMethod method) {
  const double p = asymptotic_hit_mass(grouped);
  if (delta < 2) return 1.0;
  if (method == BetaMethod::occupancy) {
    return std::pow(-std::expm1(-p), static_cast<double>(delta));
  }
  return alternating_beta(delta, [&](std::size_t r) {
    return std::exp(-static_cast<double>(r) * p);
  });
}

}  // namespace degmatch
