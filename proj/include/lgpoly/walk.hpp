#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lgpoly/numerics.hpp"
#include "lgpoly/rng.hpp"

namespace lgpoly {

// Representation walk S_0..S_n with S_0 = 0.
struct WalkPath {
  std::vector<double> s;

  int n() const { return static_cast<int>(s.size()) - 1; }

  static WalkPath from_increments(const std::vector<double>& x) {
    WalkPath p;
    p.s.reserve(x.size() + 1);
    p.s.push_back(0.0);
    double acc = 0.0;
    for (double xi : x) {
      acc += xi;
      p.s.push_back(acc);
    }
    return p;
  }

  WalkPath negated() const {
    WalkPath p = *this;
    for (double& v : p.s) v = -v;
    return p;
  }
};

inline WalkPath sample_walk(Stream& stream, int n, const ModelParams& params) {
  if (n < 0) throw std::domain_error("sample_walk: n must be >= 0");
  params.require_valid();
  WalkPath p;
  p.s.resize(static_cast<std::size_t>(n) + 1);
  p.s[0] = 0.0;
  for (int k = 1; k <= n; ++k) p.s[k] = p.s[k - 1] + walk_increment_sample(stream, params);
  return p;
}

// Smallest index attaining the minimum.
inline int argmin_walk(const WalkPath& path) {
  if (path.s.empty()) throw std::invalid_argument("argmin_walk: empty path");
  int arg = 0;
  for (int k = 1; k < static_cast<int>(path.s.size()); ++k)
    if (path.s[k] < path.s[arg]) arg = k;
  return arg;
}

// xi^n_k = exp(-(S_k - S_min)) / sum_i exp(-(S_i - S_min)); equal in law to
// the endpoint distribution of the DP pipeline at the same parameters.
inline LatticeDist xi_n(const WalkPath& path) {
  if (path.s.empty()) throw std::invalid_argument("xi_n: empty path");
  const int ell = argmin_walk(path);
  const double smin = path.s[ell];
  LatticeDist d;
  d.offset = 0;
  d.mass.resize(path.s.size());
  double denom = 0.0;
  for (std::size_t k = 0; k < path.s.size(); ++k) {
    d.mass[k] = std::exp(-(path.s[k] - smin));
    denom += d.mass[k];
  }
  for (double& m : d.mass) m /= denom;
  return d;
}

// Pre/post-infimum segments: pre_k = S_{l-k} - S_l (k = 1..l),
// post_k = S_{l+k} - S_l (k = 1..n-l); both nonnegative entrywise.
inline std::pair<std::vector<double>, std::vector<double>> split_at_min(const WalkPath& path) {
  const int ell = argmin_walk(path);
  const double smin = path.s[ell];
  std::vector<double> pre, post;
  pre.reserve(ell);
  for (int k = 1; k <= ell; ++k) pre.push_back(path.s[ell - k] - smin);
  const int n = path.n();
  post.reserve(n - ell);
  for (int k = 1; k <= n - ell; ++k) post.push_back(path.s[ell + k] - smin);
  return {std::move(pre), std::move(post)};
}

// Strict ascending ladder decomposition of the given walk: epochs T_k where
// the path reaches a new strict maximum, heights H_k = S_{T_k}, and the
// time-reversed excursions e_k(j) = S_{T_k} - S_{T_k - j}, j = 0..T_k-T_{k-1}.
// Pass the negated walk for the descending (reflected) ladder. If the path
// ends mid-excursion the result simply carries the epochs found so far.
struct LadderDecomp {
  std::vector<int> epochs;                      // T_0 = 0 < T_1 < ...
  std::vector<double> heights;                  // H_k = S_{T_k}
  std::vector<std::vector<double>> excursions;  // e_1, e_2, ...

  std::size_t count() const { return excursions.size(); }
};

inline LadderDecomp ladder_decompose(const WalkPath& path) {
  if (path.s.empty()) throw std::invalid_argument("ladder_decompose: empty path");
  LadderDecomp d;
  d.epochs.push_back(0);
  d.heights.push_back(path.s[0]);
  double high = path.s[0];
  int last = 0;
  for (int t = 1; t < static_cast<int>(path.s.size()); ++t) {
    if (path.s[t] > high) {
      std::vector<double> exc;
      exc.reserve(t - last + 1);
      for (int j = 0; j <= t - last; ++j) exc.push_back(path.s[t] - path.s[t - j]);
      d.excursions.push_back(std::move(exc));
      d.epochs.push_back(t);
      d.heights.push_back(path.s[t]);
      high = path.s[t];
      last = t;
    }
  }
  return d;
}

}  // namespace lgpoly
