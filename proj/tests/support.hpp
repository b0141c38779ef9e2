#pragma once

#include <cmath>
#include <vector>

#include "lgpoly/numerics.hpp"
#include "lgpoly/rng.hpp"

namespace test_support {

// KS critical value at alpha ~ 0.01 for a one-sample test of size n.
inline double ks_crit(double n) { return 1.63 / std::sqrt(n); }

// and for a two-sample test with sizes n, m.
inline double ks_crit2(double n, double m) { return 1.63 * std::sqrt(1.0 / n + 1.0 / m); }

struct Moments {
  double mean = 0.0;
  double var = 0.0;
  long long n = 0;
};

inline Moments moments(const std::vector<double>& v) {
  Moments m;
  m.n = static_cast<long long>(v.size());
  for (double x : v) m.mean += x;
  m.mean /= static_cast<double>(m.n);
  for (double x : v) m.var += (x - m.mean) * (x - m.mean);
  m.var /= static_cast<double>(m.n - 1);
  return m;
}

inline double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  const Moments ma = moments(a), mb = moments(b);
  double c = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) c += (a[i] - ma.mean) * (b[i] - mb.mean);
  c /= static_cast<double>(a.size() - 1);
  return c / std::sqrt(ma.var * mb.var);
}

}  // namespace test_support
