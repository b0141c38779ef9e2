#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace lgpoly {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(e^a + e^b), stable for any finite or -inf arguments.
inline double log_sum_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

// Digamma psi0(x), x > 0. Upward recurrence to x >= 10, then the asymptotic
// Bernoulli expansion; relative accuracy ~1e-14 in double precision.
inline double digamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("digamma: x must be > 0");
  double r = 0.0;
  while (x < 10.0) {
    r -= 1.0 / x;
    x += 1.0;
  }
  const double f = 1.0 / (x * x);
  const double series =
      f * (1.0 / 12.0 -
           f * (1.0 / 120.0 -
                f * (1.0 / 252.0 -
                     f * (1.0 / 240.0 - f * (1.0 / 132.0 - f * (691.0 / 32760.0))))));
  return r + std::log(x) - 0.5 / x - series;
}

// Trigamma psi1(x), x > 0.
inline double trigamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("trigamma: x must be > 0");
  double r = 0.0;
  while (x < 10.0) {
    r += 1.0 / (x * x);
    x += 1.0;
  }
  const double f = 1.0 / (x * x);
  const double series =
      f * (1.0 / 6.0 -
           f * (1.0 / 30.0 -
                f * (1.0 / 42.0 - f * (1.0 / 30.0 - f * (5.0 / 66.0 - f * (691.0 / 2730.0))))));
  return 1.0 / x + 0.5 * f + series / x;
}

// CDF of the arcsine law on [0,1]: (2/pi) asin(sqrt(s)).
inline double arcsine_cdf(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error("arcsine_cdf: s must be in [0,1]");
  const double v = (2.0 / M_PI) * std::asin(std::sqrt(s));
  return std::min(1.0, std::max(0.0, v));
}

// Regularized lower incomplete gamma P(shape, x): series for x < shape+1,
// continued fraction (modified Lentz) otherwise.
inline double gamma_cdf(double x, double shape) {
  if (!(shape > 0.0)) throw std::domain_error("gamma_cdf: shape must be > 0");
  if (!(x >= 0.0)) throw std::domain_error("gamma_cdf: x must be >= 0");
  if (x == 0.0) return 0.0;
  const double lg = std::lgamma(shape);
  const double lead = shape * std::log(x) - x - lg;
  if (x < shape + 1.0) {
    double ap = shape;
    double del = 1.0 / shape;
    double sum = del;
    for (int i = 0; i < 10000; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-17) break;
    }
    return std::min(1.0, std::max(0.0, sum * std::exp(lead)));
  }
  // Lentz continued fraction for Q(shape, x)
  const double tiny = 1e-300;
  double b = x + 1.0 - shape;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 10000; ++i) {
    const double an = -i * (i - shape);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  const double q = std::exp(lead) * h;
  return std::min(1.0, std::max(0.0, 1.0 - q));
}

// ---------------------------------------------------------------------------
// Statistical distances
// ---------------------------------------------------------------------------

struct EmpiricalSample {
  std::vector<double> values;  // sorted ascending

  static EmpiricalSample from(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("EmpiricalSample: empty sample");
    std::sort(v.begin(), v.end());
    return EmpiricalSample{std::move(v)};
  }
};

struct KsResult {
  double d = 0.0;
  double p = 1.0;
};

// Asymptotic Kolmogorov survival function Q(lambda), 100-term series.
inline double kolmogorov_q(double lambda) {
  if (lambda < 1e-8) return 1.0;
  double q = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    q += (j % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-18) break;
  }
  return std::min(1.0, std::max(0.0, q));
}

// One-sample KS statistic against a (nondecreasing) cdf; p from the
// asymptotic Kolmogorov law with lambda = sqrt(n) * D.
inline KsResult ks_statistic(const EmpiricalSample& sample, const std::function<double(double)>& cdf) {
  const std::size_t n = sample.values.size();
  if (n == 0) throw std::invalid_argument("ks_statistic: empty sample");
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf(sample.values[i]);
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max(d, std::max(hi - f, f - lo));
  }
  return KsResult{d, kolmogorov_q(std::sqrt(static_cast<double>(n)) * d)};
}

// Two-sample KS statistic; p uses the effective sample size nm/(n+m).
inline KsResult ks_two_sample(const EmpiricalSample& a, const EmpiricalSample& b) {
  const std::size_t n = a.values.size(), m = b.values.size();
  if (n == 0 || m == 0) throw std::invalid_argument("ks_two_sample: empty sample");
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < n && j < m) {
    const double x = std::min(a.values[i], b.values[j]);
    while (i < n && a.values[i] <= x) ++i;
    while (j < m && b.values[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  const double neff = static_cast<double>(n) * m / static_cast<double>(n + m);
  return KsResult{d, kolmogorov_q(std::sqrt(neff) * d)};
}

// ---------------------------------------------------------------------------
// Finitely supported distributions on Z
// ---------------------------------------------------------------------------

struct LatticeDist {
  long long offset = 0;        // index of the first support point
  std::vector<double> mass;    // dense masses from offset upward

  double total() const {
    double s = 0.0;
    for (double m : mass) s += m;
    return s;
  }
  double at(long long k) const {
    const long long i = k - offset;
    if (i < 0 || i >= static_cast<long long>(mass.size())) return 0.0;
    return mass[static_cast<std::size_t>(i)];
  }
  void require_nonnegative(const char* who) const {
    for (double m : mass)
      if (m < 0.0) throw std::invalid_argument(std::string(who) + ": negative mass entry");
  }
};

// Total variation distance in the paper's normalization: sum_k |p(k) - q(k)|
// over the union of supports (so it is <= 2 for probability vectors).
inline double tv_distance(const LatticeDist& p, const LatticeDist& q) {
  p.require_nonnegative("tv_distance");
  q.require_nonnegative("tv_distance");
  const long long lo = std::min(p.offset, q.offset);
  const long long hi = std::max(p.offset + static_cast<long long>(p.mass.size()),
                                q.offset + static_cast<long long>(q.mass.size()));
  double d = 0.0;
  for (long long k = lo; k < hi; ++k) d += std::abs(p.at(k) - q.at(k));
  return d;
}

}  // namespace lgpoly
