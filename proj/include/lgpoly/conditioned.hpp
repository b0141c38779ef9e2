#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "lgpoly/rng.hpp"
#include "lgpoly/walk.hpp"

namespace lgpoly {

// Walk conditioned to stay nonnegative, W_0 = 0.
struct ConditionedPath {
  std::vector<double> w;

  int n() const { return static_cast<int>(w.size()) - 1; }
};

namespace detail {

// Ring buffer over the most recent (depth+1) values of an indexed sequence.
class TailBuffer {
 public:
  explicit TailBuffer(std::size_t depth) {
    std::size_t cap = 1;
    while (cap < depth + 1) cap <<= 1;
    buf_.resize(cap);
    mask_ = cap - 1;
  }
  void set(long long t, double v) { buf_[static_cast<std::size_t>(t) & mask_] = v; }
  double get(long long t) const { return buf_[static_cast<std::size_t>(t) & mask_]; }

 private:
  std::vector<double> buf_;
  std::size_t mask_ = 0;
};

inline void require_up_conditionable(const ModelParams& p) {
  p.require_valid();
  // E X = psi0(theta) - psi0(mu - theta) must be >= 0 for the first strict
  // ascent time to be a.s. finite.
  if (p.theta < p.mu / 2.0 - 1e-12)
    throw std::invalid_argument("up-conditioning needs E X >= 0, i.e. theta >= mu/2");
}

}  // namespace detail

struct TanakaOptions {
  // Per-attempt budget of underlying walk steps. At equilibrium the ladder
  // epoch straddling K has a heavy (index-1/2) tail, so a cap is required
  // for bounded work; capped attempts are discarded and resampled, which
  // conditions on coverage within the budget (probability ~ sqrt(K/cap)).
  long long max_underlying_steps = 4'000'000;
  int max_attempts = 64;
};

// First K+1 values of Tanaka's construction W: time-reversed excursions
// between strict ascending ladder epochs of the underlying walk, stacked on
// the ladder heights. Marginal law equals the walk conditioned to stay
// nonnegative.
inline ConditionedPath tanaka_up_sample(Stream& stream, int K, const ModelParams& params,
                                        const TanakaOptions& opts = {}) {
  if (K < 0) throw std::domain_error("tanaka_up_sample: K must be >= 0");
  detail::require_up_conditionable(params);
  for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
    ConditionedPath out;
    out.w.assign(static_cast<std::size_t>(K) + 1, 0.0);
    if (K == 0) return out;
    detail::TailBuffer tail(static_cast<std::size_t>(K) + 1);
    tail.set(0, 0.0);
    double s = 0.0, high = 0.0;
    long long t = 0, sigma_last = 0;
    while (sigma_last < K && t < opts.max_underlying_steps) {
      ++t;
      s += walk_increment_sample(stream, params);
      tail.set(t, s);
      if (s > high) {
        const long long emit_to = std::min<long long>(t, K);
        for (long long idx = sigma_last + 1; idx <= emit_to; ++idx)
          out.w[static_cast<std::size_t>(idx)] = high + (s - tail.get(t - (idx - sigma_last)));
        high = s;
        sigma_last = t;
      }
    }
    if (sigma_last >= K) return out;
  }
  throw std::runtime_error("tanaka_up_sample: attempt budget exhausted");
}

// Exact draw from the law of S conditioned on Lambda_n = {S_k >= 0, k <= n},
// by resampling; the oracle for tanaka_up_sample. Returns S_0..S_K.
inline ConditionedPath rejection_conditioned_sample(Stream& stream, int n, int K,
                                                    const ModelParams& params) {
  if (n < 0 || K < 0 || K > n)
    throw std::domain_error("rejection_conditioned_sample: need n >= K >= 0");
  params.require_valid();
  std::vector<double> s(static_cast<std::size_t>(n) + 1);
  for (long long attempt = 0; attempt < 100'000'000; ++attempt) {
    s[0] = 0.0;
    bool ok = true;
    for (int k = 1; k <= n; ++k) {
      s[k] = s[k - 1] + walk_increment_sample(stream, params);
      if (s[k] < 0.0) {
        ok = false;
        break;
      }
    }
    if (ok) {
      ConditionedPath out;
      out.w.assign(s.begin(), s.begin() + K + 1);
      return out;
    }
  }
  throw std::runtime_error("rejection_conditioned_sample: attempt budget exhausted");
}

// Monte Carlo estimate of P(Lambda_n) = P(S_k >= 0, k <= n).
inline double lambda_probability_estimate(Stream& stream, int n, long long trials,
                                          const ModelParams& params) {
  params.require_valid();
  long long hits = 0;
  for (long long r = 0; r < trials; ++r) {
    double s = 0.0;
    bool ok = true;
    for (int k = 1; k <= n; ++k) {
      s += walk_increment_sample(stream, params);
      if (s < 0.0) {
        ok = false;
        break;
      }
    }
    if (ok) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

// ---------------------------------------------------------------------------
// Renewal function V(x) = 1 + E sum_{i=1}^{sigma(0)-1} 1{-x <= S_i}, with
// sigma(0) the first nonnegative time. Diagnostic only: sigma(0) has infinite
// mean at equilibrium, so excursions are truncated at a cap and flagged.
// ---------------------------------------------------------------------------

struct RenewalEstimate {
  double estimate = 1.0;
  double std_error = 0.0;
  long long truncated = 0;
};

// Estimates V at several thresholds on common sample paths (xs ascending).
inline std::vector<RenewalEstimate> renewal_V_estimate_multi(Stream& stream,
                                                             std::span<const double> xs,
                                                             long long reps,
                                                             const ModelParams& params,
                                                             long long excursion_cap = 10'000'000) {
  params.require_valid();
  if (reps < 1) throw std::domain_error("renewal_V_estimate: reps must be >= 1");
  for (double x : xs)
    if (!(x >= 0.0)) throw std::domain_error("renewal_V_estimate: x must be >= 0");
  const std::size_t nx = xs.size();
  std::vector<double> sum(nx, 0.0), sumsq(nx, 0.0);
  std::vector<long long> count(nx);
  long long truncated = 0;
  for (long long r = 0; r < reps; ++r) {
    std::fill(count.begin(), count.end(), 0);
    double s = 0.0;
    for (long long k = 1;; ++k) {
      s += walk_increment_sample(stream, params);
      if (s >= 0.0) break;
      if (k >= excursion_cap) {
        ++truncated;
        break;
      }
      // s < 0 here; position counts for every threshold x with -x <= s
      for (std::size_t i = nx; i-- > 0;) {
        if (s >= -xs[i])
          ++count[i];
        else
          break;
      }
    }
    for (std::size_t i = 0; i < nx; ++i) {
      sum[i] += static_cast<double>(count[i]);
      sumsq[i] += static_cast<double>(count[i]) * static_cast<double>(count[i]);
    }
  }
  std::vector<RenewalEstimate> out(nx);
  for (std::size_t i = 0; i < nx; ++i) {
    const double mean = sum[i] / static_cast<double>(reps);
    const double var = std::max(0.0, sumsq[i] / static_cast<double>(reps) - mean * mean);
    out[i].estimate = 1.0 + mean;
    out[i].std_error = std::sqrt(var / static_cast<double>(reps));
    out[i].truncated = truncated;
  }
  return out;
}

inline RenewalEstimate renewal_V_estimate(Stream& stream, double x, long long reps,
                                          const ModelParams& params,
                                          long long excursion_cap = 10'000'000) {
  const double xs[1] = {x};
  return renewal_V_estimate_multi(stream, xs, reps, params, excursion_cap)[0];
}

// ---------------------------------------------------------------------------
// Predicate W_k >= k^eta for all k in [k0, K] on one Tanaka path, evaluated
// without materializing the path. The underlying walk is simulated to time K;
// completed excursions are checked from the stored prefix. If the excursion
// straddling K starts at ladder height >= K^eta the remaining indices pass
// structurally (W >= previous ladder height inside any later excursion);
// otherwise the straddling excursion is completed with a ring buffer, up to
// straddle_cap extra steps. A capped path reports flagged=true and should be
// counted as a failure by the caller, which keeps the estimate conservative.
// ---------------------------------------------------------------------------

struct GrowthCheckResult {
  bool pass = false;
  bool flagged = false;
};

inline GrowthCheckResult tanaka_growth_check(Stream& stream, int K, int k0,
                                             const ModelParams& params,
                                             std::span<const double> thresholds,
                                             long long straddle_cap = 50'000'000) {
  detail::require_up_conditionable(params);
  if (K < 1 || k0 < 1 || k0 > K) throw std::domain_error("tanaka_growth_check: need 1 <= k0 <= K");
  if (static_cast<int>(thresholds.size()) < K + 1)
    throw std::invalid_argument("tanaka_growth_check: thresholds must cover 0..K");

  std::vector<double> s(static_cast<std::size_t>(K) + 1);
  s[0] = 0.0;
  for (int t = 1; t <= K; ++t) s[t] = s[t - 1] + walk_increment_sample(stream, params);

  GrowthCheckResult res;
  res.pass = true;
  double high = 0.0;
  int sigma_last = 0;
  for (int t = 1; t <= K; ++t) {
    if (s[t] > high) {
      // excursion (sigma_last, t] completed inside the prefix
      for (int idx = std::max(k0, sigma_last + 1); idx <= t; ++idx) {
        const double w = high + (s[t] - s[t - (idx - sigma_last)]);
        if (w < thresholds[static_cast<std::size_t>(idx)]) {
          res.pass = false;
          return res;
        }
      }
      high = s[t];
      sigma_last = t;
    }
  }
  if (sigma_last >= K) return res;

  // Straddling excursion: indices (sigma_last, K] need its completion unless
  // the current ladder height already dominates every remaining threshold.
  if (high >= thresholds[static_cast<std::size_t>(K)]) return res;

  const int depth = K - sigma_last;
  detail::TailBuffer tail(static_cast<std::size_t>(depth));
  long long t = K;
  double sv = s[static_cast<std::size_t>(K)];
  for (int j = 0; j < depth; ++j) tail.set(K - j, s[static_cast<std::size_t>(K - j)]);
  while (sv <= high) {
    if (t - K >= straddle_cap) {
      res.flagged = true;
      res.pass = false;
      return res;
    }
    ++t;
    sv += walk_increment_sample(stream, params);
    tail.set(t, sv);
  }
  for (int idx = std::max(k0, sigma_last + 1); idx <= K; ++idx) {
    const double w = high + (sv - tail.get(t - (idx - sigma_last)));
    if (w < thresholds[static_cast<std::size_t>(idx)]) {
      res.pass = false;
      return res;
    }
  }
  return res;
}

inline std::vector<double> growth_thresholds(int K, double eta) {
  std::vector<double> thresholds(static_cast<std::size_t>(K) + 1, 0.0);
  for (int k = 1; k <= K; ++k) thresholds[k] = std::pow(static_cast<double>(k), eta);
  return thresholds;
}

inline GrowthCheckResult tanaka_growth_check(Stream& stream, int K, int k0, double eta,
                                             const ModelParams& params,
                                             long long straddle_cap = 50'000'000) {
  const auto thresholds = growth_thresholds(K, eta);
  return tanaka_growth_check(stream, K, k0, params, thresholds, straddle_cap);
}

}  // namespace lgpoly
