#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "lgpoly/conditioned.hpp"
#include "lgpoly/numerics.hpp"
#include "lgpoly/partition.hpp"
#include "lgpoly/rng.hpp"
#include "lgpoly/walk.hpp"

namespace lgpoly {

// Window of a distribution on Z centered at its mode: mass over k in [-K, K]
// plus an upper estimate of the omitted mass.
struct XiWindow {
  int K = 0;
  LatticeDist dist;  // offset -K, 2K+1 entries
  double tail_bound = 0.0;

  double at(long long k) const { return dist.at(k); }
  double mode_mass() const { return dist.mass[static_cast<std::size_t>(K)]; }
};

struct XiOptions {
  // Each conditioned walk is truncated at the first ladder epoch at height
  // >= exceed_level past index K; dropped terms are estimated by
  // horizon * exp(-exceed_level) because every later value sits above the
  // stopping ladder height.
  double exceed_level = 40.0;
  long long step_cap = 10'000'000;  // per-walk underlying budget, see TanakaOptions
  int max_attempts = 64;
};

namespace detail {

struct ConditionedSide {
  std::vector<double> w;   // W_0..W_K
  double sum_exp = 0.0;    // sum_{i=1}^{horizon} exp(-W_i)
  long long horizon = 0;   // final ladder epoch
  bool ok = false;
};

// Streams the underlying walk, reversing excursions on the fly. Window
// values come from a ring buffer over the last K+1 underlying positions;
// the series sum accumulates per excursion as
// exp(-(H_{m-1} + H_m)) * sum_t exp(S_t) without storing the excursion.
inline ConditionedSide accumulate_conditioned_side(Stream& stream, int K, const ModelParams& params,
                                                   const XiOptions& opts) {
  ConditionedSide side;
  side.w.assign(static_cast<std::size_t>(K) + 1, 0.0);
  TailBuffer tail(static_cast<std::size_t>(K) + 1);
  tail.set(0, 0.0);
  double s = 0.0, high = 0.0;
  double exc_sum = 0.0;  // sum of exp(S_t) over the open excursion
  long long t = 0, sigma_last = 0;
  while (t < opts.step_cap) {
    exc_sum += std::exp(s);
    ++t;
    s += walk_increment_sample(stream, params);
    tail.set(t, s);
    if (s > high) {
      const long long emit_to = std::min<long long>(t, K);
      for (long long idx = sigma_last + 1; idx <= emit_to; ++idx)
        side.w[static_cast<std::size_t>(idx)] = high + (s - tail.get(t - (idx - sigma_last)));
      side.sum_exp += std::exp(-(high + s)) * exc_sum;
      high = s;
      sigma_last = t;
      exc_sum = 0.0;
      if (sigma_last >= K && high >= opts.exceed_level) {
        side.horizon = sigma_last;
        side.ok = true;
        return side;
      }
    }
  }
  return side;  // capped; caller resamples
}

}  // namespace detail

// Equilibrium limit law: xi_k = exp(-Shat_k) / (1 + sum exp(-Sup) + sum
// exp(-Sdown)) with two independent conditioned walks (the increment is
// symmetric at theta = mu/2, so the down side is an independent copy).
inline XiWindow xi_limit_equilibrium(Stream& stream, int K, const ModelParams& params,
                                     const XiOptions& opts = {}) {
  params.require_valid();
  if (!params.equilibrium(1e-12))
    throw std::invalid_argument("xi_limit_equilibrium: requires theta = mu/2");
  if (K < 0) throw std::domain_error("xi_limit_equilibrium: K must be >= 0");
  for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
    const auto up = detail::accumulate_conditioned_side(stream, K, params, opts);
    if (!up.ok) continue;
    const auto down = detail::accumulate_conditioned_side(stream, K, params, opts);
    if (!down.ok) continue;
    const double denom = 1.0 + up.sum_exp + down.sum_exp;
    XiWindow win;
    win.K = K;
    win.dist.offset = -K;
    win.dist.mass.resize(2 * static_cast<std::size_t>(K) + 1);
    for (int k = 1; k <= K; ++k) {
      win.dist.mass[static_cast<std::size_t>(K + k)] = std::exp(-up.w[k]) / denom;
      win.dist.mass[static_cast<std::size_t>(K - k)] = std::exp(-down.w[k]) / denom;
    }
    win.dist.mass[static_cast<std::size_t>(K)] = 1.0 / denom;
    const double dropped =
        static_cast<double>(up.horizon + down.horizon) * std::exp(-opts.exceed_level) / denom;
    win.tail_bound = std::max(0.0, 1.0 - win.dist.total()) + dropped;
    return win;
  }
  throw std::runtime_error("xi_limit_equilibrium: attempt budget exhausted");
}

// Non-equilibrium limit law: the drifting walk recentered at its global
// minimum. For theta < mu/2 the walk is simulated with theta' = mu - theta
// and the window reflected (transposition symmetry of the model).
inline XiWindow xi_limit_drift(Stream& stream, int K, const ModelParams& params,
                               const XiOptions& opts = {}) {
  params.require_valid();
  if (params.equilibrium(1e-9))
    throw std::invalid_argument("xi_limit_drift: requires theta != mu/2");
  if (K < 0) throw std::domain_error("xi_limit_drift: K must be >= 0");
  const bool reflect = params.theta < params.mu / 2.0;
  const ModelParams eff = reflect ? ModelParams{params.mu, params.mu - params.theta} : params;

  std::vector<double> s{0.0};
  double smin = 0.0;
  long long ell = 0;
  for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
    long long t = 0;
    for (; t < opts.step_cap; ++t) {
      const double v = s.back() + walk_increment_sample(stream, eff);
      s.push_back(v);
      if (v < smin) {
        smin = v;
        ell = static_cast<long long>(s.size()) - 1;
      }
      if (v - smin >= opts.exceed_level && static_cast<long long>(s.size()) - 1 - ell >= K) break;
    }
    if (t >= opts.step_cap) {
      s.assign(1, 0.0);
      smin = 0.0;
      ell = 0;
      continue;
    }
    const long long h = static_cast<long long>(s.size()) - 1;
    double denom = 0.0;
    for (long long i = 0; i <= h; ++i) denom += std::exp(-(s[static_cast<std::size_t>(i)] - smin));
    XiWindow win;
    win.K = K;
    win.dist.offset = -K;
    win.dist.mass.assign(2 * static_cast<std::size_t>(K) + 1, 0.0);
    for (long long k = -K; k <= K; ++k) {
      const long long i = ell + k;
      if (i < 0 || i > h) continue;
      const double m = std::exp(-(s[static_cast<std::size_t>(i)] - smin)) / denom;
      const long long out_k = reflect ? -k : k;
      win.dist.mass[static_cast<std::size_t>(out_k + K)] = m;
    }
    win.tail_bound = std::max(0.0, 1.0 - win.dist.total()) +
                     static_cast<double>(h) * std::exp(-opts.exceed_level) / denom;
    return win;
  }
  throw std::runtime_error("xi_limit_drift: attempt budget exhausted");
}

// Window of the DP endpoint law recentered at the favourite endpoint;
// out-of-window mass goes to tail_bound exactly.
inline XiWindow centered_endpoint_window(const EndpointLaw& law, int K) {
  if (K < 0) throw std::domain_error("centered_endpoint_window: K must be >= 0");
  XiWindow win;
  win.K = K;
  win.dist.offset = -K;
  win.dist.mass.resize(2 * static_cast<std::size_t>(K) + 1);
  for (long long k = -K; k <= K; ++k)
    win.dist.mass[static_cast<std::size_t>(k + K)] = law.dist.at(law.l_n + k);
  win.tail_bound = 1.0 - win.dist.total();
  return win;
}

// Same recentering applied to a walk-pipeline law (xi_n output).
inline XiWindow centered_window(const LatticeDist& dist, long long center, int K) {
  XiWindow win;
  win.K = K;
  win.dist.offset = -K;
  win.dist.mass.resize(2 * static_cast<std::size_t>(K) + 1);
  for (long long k = -K; k <= K; ++k)
    win.dist.mass[static_cast<std::size_t>(k + K)] = dist.at(center + k);
  win.tail_bound = 1.0 - win.dist.total();
  return win;
}

}  // namespace lgpoly
