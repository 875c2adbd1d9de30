#pragma once

#include <cmath>
#include <limits>

namespace degmatch::detail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(1 + e^x) without overflow.
inline double softplus(double x) {
  if (x == kNegInf) return 0.0;
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

// log(e^a + e^b).
inline double logaddexp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = a > b ? a : b;
  const double lo = a > b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

// log(e^y - 1) for y >= 0; -inf at y = 0.
inline double log_expm1(double y) {
  if (y <= 0.0) return kNegInf;
  if (y > 30.0) return y + std::log1p(-std::exp(-y));
  return std::log(std::expm1(y));
}

// log C(m, k) p^k (1-p)^(m-k).
inline double log_binomial_pmf(double m, double k, double p) {
  if (p <= 0.0) return k == 0.0 ? 0.0 : kNegInf;
  if (p >= 1.0) return k == m ? 0.0 : kNegInf;
  return std::lgamma(m + 1.0) - std::lgamma(k + 1.0) - std::lgamma(m - k + 1.0) +
         k * std::log(p) + (m - k) * std::log1p(-p);
}

// log e^{-lambda} lambda^k / k!.
inline double log_poisson_pmf(double lambda, double k) {
  if (lambda <= 0.0) return k == 0.0 ? 0.0 : kNegInf;
  return -lambda + k * std::log(lambda) - std::lgamma(k + 1.0);
}

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace degmatch::detail
