#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "lgpoly/environment.hpp"
#include "lgpoly/numerics.hpp"

namespace lgpoly {

enum class Direction { Forward, Reverse };

// Log partition functions on a grid. Forward: logZ(0,0) = 0 and
// logZ(m,n) = omega(m,n) + LSE(logZ(m-1,n), logZ(m,n-1)), -inf outside.
// Reverse (P2P only): logZt(pN,qN) = 0 and
// logZt(m,n) = omega(m,n) + LSE(logZt(m+1,n), logZt(m,n+1)); the weight at
// the start site is included, the corner weight excluded.
struct LogZGrid {
  Direction dir = Direction::Forward;
  int width = 1;
  int height = 1;
  std::vector<double> v;

  double at(int i, int j) const { return v[static_cast<std::size_t>(i) * height + j]; }
  double& at(int i, int j) { return v[static_cast<std::size_t>(i) * height + j]; }
};

inline LogZGrid forward_logZ(const EnvGrid& env) {
  LogZGrid z;
  z.dir = Direction::Forward;
  z.width = env.width;
  z.height = env.height;
  z.v.resize(env.logw.size());
  for (int i = 0; i < env.width; ++i) {
    for (int j = 0; j < env.height; ++j) {
      if (i == 0 && j == 0) {
        z.at(0, 0) = 0.0;
        continue;
      }
      const double left = i > 0 ? z.at(i - 1, j) : kNegInf;
      const double down = j > 0 ? z.at(i, j - 1) : kNegInf;
      z.at(i, j) = env.at(i, j) + log_sum_exp(left, down);
    }
  }
  return z;
}

inline LogZGrid reverse_logZ(const EnvGrid& env) {
  if (env.regime != Regime::P2P)
    throw std::invalid_argument("reverse_logZ: requires a P2P environment");
  LogZGrid z;
  z.dir = Direction::Reverse;
  z.width = env.width;
  z.height = env.height;
  z.v.resize(env.logw.size());
  const int M = env.width - 1, N = env.height - 1;
  for (int i = M; i >= 0; --i) {
    for (int j = N; j >= 0; --j) {
      if (i == M && j == N) {
        z.at(M, N) = 0.0;
        continue;
      }
      const double right = i < M ? z.at(i + 1, j) : kNegInf;
      const double up = j < N ? z.at(i, j + 1) : kNegInf;
      z.at(i, j) = env.at(i, j) + log_sum_exp(right, up);
    }
  }
  return z;
}

// Endpoint distribution of the point-to-line polymer at length n together
// with the favourite endpoint (smallest maximizer on float ties).
struct EndpointLaw {
  int n = 0;
  LatticeDist dist;  // offset 0, support {0..n}
  int l_n = 0;

  double mode_mass() const { return dist.mass[static_cast<std::size_t>(l_n)]; }
};

namespace detail {

inline EndpointLaw normalize_antidiagonal(const std::vector<double>& logz, int n) {
  EndpointLaw law;
  law.n = n;
  double vmax = kNegInf;
  int argmax = 0;
  for (int k = 0; k <= n; ++k) {
    if (logz[k] > vmax) {
      vmax = logz[k];
      argmax = k;
    }
  }
  double denom = 0.0;
  for (int k = 0; k <= n; ++k) denom += std::exp(logz[k] - vmax);
  const double logdenom = vmax + std::log(denom);
  law.dist.offset = 0;
  law.dist.mass.resize(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) law.dist.mass[k] = std::exp(logz[k] - logdenom);
  law.l_n = argmax;
  return law;
}

}  // namespace detail

inline EndpointLaw endpoint_law(const LogZGrid& fwd, int n) {
  if (fwd.dir != Direction::Forward) throw std::invalid_argument("endpoint_law: forward grid required");
  if (n < 0 || n > fwd.width - 1 || n > fwd.height - 1)
    throw std::invalid_argument("endpoint_law: antidiagonal exits the grid");
  std::vector<double> logz(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) logz[k] = fwd.at(k, n - k);
  return detail::normalize_antidiagonal(logz, n);
}

// I_n = max over lattice points of Q_{n-1}{x_n = x}; the final step is
// uniform over the two neighbours, so I_n = max_k (q(k) + q(k+1))/2 with
// q = law at length n-1 and q(-1) = q(n) = 0.
inline double endpoint_mass_In(const EndpointLaw& law_prev) {
  const auto& q = law_prev.dist.mass;
  const long long n = static_cast<long long>(q.size());
  double best = 0.0;
  for (long long k = -1; k < n; ++k) {
    const double a = k >= 0 ? q[static_cast<std::size_t>(k)] : 0.0;
    const double b = k + 1 < n ? q[static_cast<std::size_t>(k + 1)] : 0.0;
    best = std::max(best, 0.5 * (a + b));
  }
  return best;
}

enum class ProfileScale { Sqrt, Linear };

inline std::vector<double> default_s_grid() {
  std::vector<double> s;
  for (int i = 0; i <= 20; ++i) s.push_back(i * 0.05);
  return s;
}

// Deviation profile s -> -(1/sqrt(n)) log Q_n([ns]) (or 1/n on the linearscale).
inline std::vector<double> deviation_profile(const LogZGrid& fwd, int n, ProfileScale scale,
                                             std::span<const double> s_grid) {
  const EndpointLaw law = endpoint_law(fwd, n);
  const double norm = scale == ProfileScale::Sqrt ? std::sqrt(static_cast<double>(n))
                                                  : static_cast<double>(n);
  std::vector<double> out;
  out.reserve(s_grid.size());
  for (double s : s_grid) {
    int k = static_cast<int>(std::floor(n * s));
    k = std::min(n, std::max(0, k));
    out.push_back(-std::log(law.dist.mass[static_cast<std::size_t>(k)]) / norm);
  }
  return out;
}

inline std::vector<double> deviation_profile(const LogZGrid& fwd, int n, ProfileScale scale) {
  const auto grid = default_s_grid();
  return deviation_profile(fwd, n, scale, std::span<const double>(grid));
}

// log U_{m,n} = logZ(m,n) - logZ(m-1,n); Fact 2 makes exp(-log U) a
// Gamma(theta,1) variate on any down-right path.
inline double ratio_logU(const LogZGrid& fwd, int m, int n) {
  if (fwd.dir != Direction::Forward || m < 1 || m > fwd.width - 1 || n < 0 || n > fwd.height - 1)
    throw std::invalid_argument("ratio_logU: index misuse");
  return fwd.at(m, n) - fwd.at(m - 1, n);
}

inline double ratio_logV(const LogZGrid& fwd, int m, int n) {
  if (fwd.dir != Direction::Forward || n < 1 || n > fwd.height - 1 || m < 0 || m > fwd.width - 1)
    throw std::invalid_argument("ratio_logV: index misuse");
  return fwd.at(m, n) - fwd.at(m, n - 1);
}

// Reverse-system ratios (P2P): logUt(m,n) = logZt(m,n) - logZt(m+1,n).
inline double ratio_logU_reverse(const LogZGrid& rev, int m, int n) {
  if (rev.dir != Direction::Reverse || m < 0 || m >= rev.width - 1)
    throw std::invalid_argument("ratio_logU_reverse: index misuse");
  return rev.at(m, n) - rev.at(m + 1, n);
}

inline double ratio_logV_reverse(const LogZGrid& rev, int m, int n) {
  if (rev.dir != Direction::Reverse || n < 0 || n >= rev.height - 1)
    throw std::invalid_argument("ratio_logV_reverse: index misuse");
  return rev.at(m, n) - rev.at(m, n + 1);
}

// ---------------------------------------------------------------------------
// Streaming forward DP along antidiagonals for the P2L regime: O(n) memory,
// weights drawn from per-site streams so results agree with the grid DP
// exactly. values()[k] = logZ(k, t-k).
// ---------------------------------------------------------------------------
class P2LAntidiagonalDP {
 public:
  P2LAntidiagonalDP(const SeedSpec& seed, const ModelParams& params)
      : seed_(seed), params_(params), cur_(1, 0.0) {
    params_.require_valid();
  }

  int t() const { return t_; }
  const std::vector<double>& values() const { return cur_; }
  const std::vector<double>& prev_values() const { return prev_; }

  void advance() {
    const int nt = t_ + 1;
    next_.resize(static_cast<std::size_t>(nt) + 1);
    for (int i = 0; i <= nt; ++i) {
      const double w = p2l_site_logweight(seed_, params_, i, nt - i);
      const double left = i >= 1 ? cur_[i - 1] : kNegInf;
      const double down = i <= nt - 1 ? cur_[i] : kNegInf;
      next_[i] = w + log_sum_exp(left, down);
    }
    prev_.swap(cur_);
    cur_.swap(next_);
    t_ = nt;
  }

  void advance_to(int t) {
    while (t_ < t) advance();
  }

  EndpointLaw law() const { return detail::normalize_antidiagonal(cur_, t_); }

  // log U_{k, t-k} and log V_{k, t-k} on the current antidiagonal (t >= 1).
  double log_u(int k) const { return cur_[k] - prev_[k - 1]; }
  double log_v(int k) const { return cur_[k] - prev_[k]; }

 private:
  SeedSpec seed_;
  ModelParams params_;
  int t_ = 0;
  std::vector<double> cur_, prev_, next_;
};

}  // namespace lgpoly
