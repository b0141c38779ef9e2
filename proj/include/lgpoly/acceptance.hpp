#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "lgpoly/conditioned.hpp"
#include "lgpoly/environment.hpp"
#include "lgpoly/limit_law.hpp"
#include "lgpoly/numerics.hpp"
#include "lgpoly/p2p.hpp"
#include "lgpoly/parallel.hpp"
#include "lgpoly/partition.hpp"
#include "lgpoly/rng.hpp"
#include "lgpoly/walk.hpp"

// Statistical acceptance suite: one runner per criterion, each returning a
// pass/fail verdict plus the measured statistic and its threshold. All
// randomness derives from the master seed through per-replica streams, so a
// run is reproducible and independent of the thread count.

namespace lgpoly::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Config {
  std::uint64_t master_seed = 7;
  int threads = default_thread_count();
};

namespace detail {

inline std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return std::string(buf);
}

// Endpoint statistics of one walk-pipeline replica of length n. The vector
// (xi^n_k) has the same law as the DP endpoint distribution, which makes the
// large-n ensembles affordable; the law equality itself is criterion 3.
struct WalkEndpointStats {
  int ell = 0;
  double mode_mass = 0.0;
  double in_mass = 0.0;     // I_n computed from the length n-1 prefix
  double tail25 = 0.0;      // Q[|k - ell| >= 25]
  XiWindow window;          // K = 15
};

inline WalkEndpointStats walk_endpoint_stats(Stream& stream, int n, const ModelParams& params,
                                             int window_K = 15) {
  const WalkPath path = sample_walk(stream, n, params);
  WalkEndpointStats st;
  const LatticeDist xi = xi_n(path);
  st.ell = argmin_walk(path);
  st.mode_mass = xi.mass[static_cast<std::size_t>(st.ell)];
  st.window = centered_window(xi, st.ell, window_K);
  double near = 0.0;
  for (long long k = -24; k <= 24; ++k) near += xi.at(st.ell + k);
  st.tail25 = 1.0 - near;

  // I_n from the prefix law at length n-1
  WalkPath prefix;
  prefix.s.assign(path.s.begin(), path.s.end() - 1);
  const LatticeDist xprev = xi_n(prefix);
  double best = 0.0;
  for (long long k = -1; k < static_cast<long long>(xprev.mass.size()); ++k)
    best = std::max(best, 0.5 * (xprev.at(k) + xprev.at(k + 1)));
  st.in_mass = best;
  return st;
}

inline double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double stderr_of(const std::vector<double>& v) {
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / (static_cast<double>(v.size()) - 1.0) / static_cast<double>(v.size()));
}

inline std::vector<double> mean_window(const std::vector<XiWindow>& wins) {
  std::vector<double> m(wins.front().dist.mass.size(), 0.0);
  for (const auto& w : wins)
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += w.dist.mass[i];
  for (double& x : m) x /= static_cast<double>(wins.size());
  return m;
}

inline double tv_vectors(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

}  // namespace detail

// 1. Exact crossing identity on seeded P2P environments.
inline CriterionResult criterion01(const Config& cfg) {
  const int reps = 100;
  std::vector<double> gap(reps);
  parallel_replicas(cfg.threads, reps, [&](long long r) {
    P2PParams pp;
    pp.p = 2;
    pp.q = 1;
    pp.N = 64;
    pp.mu = 2.0;
    if (r % 2 == 0) {
      pp.theta_N = 1.0;
      pp.theta_S = 1.0;
    } else {
      pp.theta_N = 0.5;
      pp.theta_S = 1.5;
    }
    const EnvGrid env = build_p2p_env(replica_seed(cfg.master_seed, domain::kEnv, r), pp);
    gap[r] = std::abs(crossing_law(env).identity_gap);
  });
  const double worst = *std::max_element(gap.begin(), gap.end());
  return {1, "crossing identity (p=2,q=1,N=64, 100 envs)", worst < 1e-9,
          detail::fmt("max |logZ - LSE(edges)| = %.3e  (tol 1e-9)", worst)};
}

// 2. Stationarity of the ratio variables along an antidiagonal (Fact 2).
inline CriterionResult criterion02(const Config& cfg) {
  const int n = 128, reps = 2000;
  const ModelParams params{2.0, 1.0};
  std::vector<std::vector<double>> us(reps), vs(reps);
  parallel_replicas(cfg.threads, reps, [&](long long r) {
    P2LAntidiagonalDP dp(replica_seed(cfg.master_seed, domain::kEnv, r), params);
    dp.advance_to(n);
    us[r].reserve(n);
    vs[r].reserve(n);
    for (int k = 1; k <= n; ++k) us[r].push_back(std::exp(-dp.log_u(k)));
    for (int k = 0; k < n; ++k) vs[r].push_back(std::exp(-dp.log_v(k)));
  });
  std::vector<double> pool_u, pool_v;
  pool_u.reserve(static_cast<std::size_t>(reps) * n);
  pool_v.reserve(static_cast<std::size_t>(reps) * n);
  for (int r = 0; r < reps; ++r) {
    pool_u.insert(pool_u.end(), us[r].begin(), us[r].end());
    pool_v.insert(pool_v.end(), vs[r].begin(), vs[r].end());
  }
  const double thr = 1.63 / std::sqrt(2000.0 * 129.0);
  const auto du = ks_statistic(EmpiricalSample::from(std::move(pool_u)),
                               [&](double t) { return gamma_cdf(t, params.theta); });
  const auto dv = ks_statistic(EmpiricalSample::from(std::move(pool_v)),
                               [&](double t) { return gamma_cdf(t, params.mu - params.theta); });
  return {2, "stationarity of U, V ratios (n=128, 2000 reps)", du.d < thr && dv.d < thr,
          detail::fmt("D_U = %.5f, D_V = %.5f  (thr %.5f)", du.d, dv.d, thr)};
}

// 3. Equality in law of the DP and walk endpoint pipelines via the mode mass.
inline CriterionResult criterion03(const Config& cfg) {
  const int n = 256, reps = 10000;
  const ModelParams params{2.0, 1.0};
  std::vector<double> dp_mode(reps), walk_mode(reps);
  parallel_replicas(cfg.threads, reps, [&](long long r) {
    P2LAntidiagonalDP dp(replica_seed(cfg.master_seed, domain::kEnv, r), params);
    dp.advance_to(n);
    dp_mode[r] = dp.law().mode_mass();
  });
  parallel_replicas(cfg.threads, reps, [&](long long r) {
    Stream st(replica_seed(cfg.master_seed, domain::kWalk, r));
    const WalkPath path = sample_walk(st, n, params);
    const LatticeDist xi = xi_n(path);
    walk_mode[r] = xi.mass[static_cast<std::size_t>(argmin_walk(path))];
  });
  const auto ks = ks_two_sample(EmpiricalSample::from(std::move(dp_mode)),
                                EmpiricalSample::from(std::move(walk_mode)));
  return {3, "walk/DP equality in law (n=256, 1e4 v 1e4)", ks.d < 0.025,
          detail::fmt("two-sample D = %.5f  (tol 0.025)", ks.d)};
}

// 4. Arcsine law of the favourite endpoint at equilibrium.
inline CriterionResult criterion04(const Config& cfg) {
  const int n = 4096, reps = 10000;
  const ModelParams params{2.0, 1.0};
  std::vector<double> ratio(reps);
  parallel_replicas(cfg.threads, reps, [&](long long r) {
    Stream st(replica_seed(cfg.master_seed, domain::kWalk, r));
    ratio[r] = static_cast<double>(argmin_walk(sample_walk(st, n, params))) / n;
  });
  const auto ks = ks_statistic(EmpiricalSample::from(std::move(ratio)),
                               [](double s) { return arcsine_cdf(std::min(1.0, std::max(0.0, s))); });
  return {4, "arcsine law of l_n/n (n=4096, 1e4 reps)", ks.d < 0.03,
          detail::fmt("D = %.5f  (tol 0.03)", ks.d)};
}

// 5. Tightness of the favourite endpoint off equilibrium.
inline CriterionResult criterion05(const Config& cfg) {
  const int reps = 10000;
  bool pass = true;
  std::string detail_str;
  for (int pass_idx = 0; pass_idx < 2; ++pass_idx) {
    const ModelParams params{2.0, pass_idx == 0 ? 1.5 : 0.5};
    for (int n : {512, 2048, 8192}) {
      std::vector<double> hit(reps);
      parallel_replicas(cfg.threads, reps, [&](long long r) {
        Stream st(replica_seed(cfg.master_seed, domain::kWalk, combine(n + pass_idx * 100000, r)));
        const int ell = argmin_walk(sample_walk(st, n, params));
        const int stat = pass_idx == 0 ? ell : n - ell;
        hit[r] = stat <= 50 ? 1.0 : 0.0;
      });
      const double frac = detail::mean_of(hit);
      pass = pass && frac >= 0.95;
      detail_str += detail::fmt("%sP(%s<=50)@n=%d: %.4f", detail_str.empty() ? "" : ", ",
                                pass_idx == 0 ? "l" : "n-l", n, frac);
    }
  }
  return {5, "tightness of l_n (theta=1.5) and n-l_n (theta=0.5)", pass,
          detail_str + "  (each >= 0.95)"};
}

// 6. Large-deviation rate of the endpoint law at s = 1/2, theta > mu/2.
inline CriterionResult criterion06(const Config& cfg) {
  const int n = 8192, reps = 200;
  const ModelParams params{2.0, 1.5};
  std::vector<double> vals(reps);
  parallel_replicas(cfg.threads, reps, [&](long long r) {
    Stream st(replica_seed(cfg.master_seed, domain::kWalk, r));
    const WalkPath path = sample_walk(st, n, params);
    const LatticeDist xi = xi_n(path);
    vals[r] = -std::log(xi.mass[n / 2]) / n;
  });
  const double mean = detail::mean_of(vals);
  const double rate = 0.5 * std::abs(digamma(1.5) - digamma(0.5));
  return {6, "LDP rate at s=1/2 (mu=2, theta=1.5, n=8192)", std::abs(mean - rate) < 0.05,
          detail::fmt("mean = %.4f, rate = %.4f  (tol 0.05)", mean, rate)};
}

// 7. Shape of the sqrt(n)-scaled deviation profile at equilibrium.
inline CriterionResult criterion07(const Config& cfg) {
  const int n = 8192, reps = 200;
  const ModelParams params{2.0, 1.0};
  const double sqrtn = std::sqrt(static_cast<double>(n));
  const double mode_bound = std::log(static_cast<double>(n) + 1.0) / sqrtn;
  const double min_bound = 2.0 * 0.05 * std::sqrt(2.0 * trigamma(1.0));
  std::vector<double> mode_val(reps), grid_min(reps);
  parallel_replicas(cfg.threads, reps, [&](long long r) {
    Stream st(replica_seed(cfg.master_seed, domain::kWalk, r));
    const WalkPath path = sample_walk(st, n, params);
    const LatticeDist xi = xi_n(path);
    mode_val[r] = -std::log(xi.mass[static_cast<std::size_t>(argmin_walk(path))]) / sqrtn;
    double mn = 1e300;
    for (int i = 0; i <= 20; ++i) {
      const int k = std::min(n, static_cast<int>(std::floor(n * (i * 0.05))));
      mn = std::min(mn, -std::log(xi.mass[static_cast<std::size_t>(k)]) / sqrtn);
    }
    grid_min[r] = mn;
  });
  int mode_ok = 0, min_ok = 0;
  for (int r = 0; r < reps; ++r) {
    if (mode_val[r] >= -1e-12 && mode_val[r] <= mode_bound + 1e-12) ++mode_ok;
    if (grid_min[r] >= -1e-12 && grid_min[r] <= min_bound) ++min_ok;
  }
  const bool pass = (mode_ok == reps) && (min_ok >= static_cast<int>(0.95 * reps));
  return {7, "deviation-profile shape (n=8192, 200 reps)", pass,
          detail::fmt("mode in [0, %.4f]: %d/%d; grid min <= %.4f: %d/%d (need >= %d)", mode_bound,
                      mode_ok, reps, min_bound, min_ok, reps, static_cast<int>(0.95 * reps))};
}

// 8. Donsker diffusion constant 2*psi1(mu/2).
inline CriterionResult criterion08(const Config& cfg) {
  const int n = 10000, reps = 1000;
  const ModelParams params{2.0, 1.0};
  std::vector<double> endpoint(reps);
  parallel_replicas(cfg.threads, reps, [&](long long r) {
    Stream st(replica_seed(cfg.master_seed, domain::kWalk, r));
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += walk_increment_sample(st, params);
    endpoint[r] = s;
  });
  const double mean = detail::mean_of(endpoint);
  double var = 0.0;
  for (double x : endpoint) var += (x - mean) * (x - mean);
  var /= (reps - 1.0);
  const double target = 2.0 * trigamma(1.0);  // pi^2 / 3
  const double rel = std::abs(var / n - target) / target;
  return {8, "diffusion constant Var(S_n)/n (n=1e4, 1e3 reps)", rel < 0.03,
          detail::fmt("Var/n = %.4f, target = %.4f, rel err = %.3f  (tol 0.03)", var / n, target, rel)};
}

// 9. Tanaka construction against the rejection oracle, coordinates 1..5.
inline CriterionResult criterion09(const Config& cfg) {
  const int K = 5, horizon = 400, reps = 5000;
  const ModelParams params{2.0, 1.0};
  std::vector<std::array<double, K>> tan(reps), rej(reps);
  parallel_replicas(cfg.threads, reps, [&](long long r) {
    Stream st(replica_seed(cfg.master_seed, domain::kTanaka, r));
    const ConditionedPath w = tanaka_up_sample(st, K, params);
    for (int k = 1; k <= K; ++k) tan[r][k - 1] = w.w[static_cast<std::size_t>(k)];
  });
  parallel_replicas(cfg.threads, reps, [&](long long r) {
    Stream st(replica_seed(cfg.master_seed, domain::kRejection, r));
    const ConditionedPath w = rejection_conditioned_sample(st, horizon, K, params);
    for (int k = 1; k <= K; ++k) rej[r][k - 1] = w.w[static_cast<std::size_t>(k)];
  });
  bool pass = true;
  std::string ds;
  for (int k = 0; k < K; ++k) {
    std::vector<double> a(reps), b(reps);
    for (int r = 0; r < reps; ++r) {
      a[r] = tan[r][k];
      b[r] = rej[r][k];
    }
    const auto ks = ks_two_sample(EmpiricalSample::from(std::move(a)), EmpiricalSample::from(std::move(b)));
    pass = pass && ks.d < 0.03;
    ds += detail::fmt("%s%.4f", k ? "," : "", ks.d);
  }
  return {9, "Tanaka vs rejection oracle (k=1..5, horizon 400)", pass,
          "D = [" + ds + "]  (each < 0.03)"};
}

// 10. Endpoint-law stabilization across n and against the limit construction.
inline CriterionResult criterion10(const Config& cfg) {
  const int K = 15, reps_dp = 2000, reps_xi = 10000;
  const ModelParams params{2.0, 1.0};

  // coupled DP windows at n = 512 and n = 2048 (same environments)
  std::vector<XiWindow> w512(reps_dp), w2048(reps_dp);
  parallel_replicas(cfg.threads, reps_dp, [&](long long r) {
    P2LAntidiagonalDP dp(replica_seed(cfg.master_seed, domain::kEnv, r), params);
    dp.advance_to(512);
    w512[r] = centered_endpoint_window(dp.law(), K);
    dp.advance_to(2048);
    w2048[r] = centered_endpoint_window(dp.law(), K);
  });
  const double tv = detail::tv_vectors(detail::mean_window(w512), detail::mean_window(w2048));

  // law of xi_0 from the limit construction vs the mode mass at n = 2048
  std::vector<double> xi0(reps_xi), mode2048(reps_xi);
  parallel_replicas(cfg.threads, reps_xi, [&](long long r) {
    Stream st(replica_seed(cfg.master_seed, domain::kXiLimit, r));
    xi0[r] = xi_limit_equilibrium(st, K, params).mode_mass();
  });
  parallel_replicas(cfg.threads, reps_xi, [&](long long r) {
    Stream st(replica_seed(cfg.master_seed, domain::kWalk, combine(2048, r)));
    const WalkPath path = sample_walk(st, 2048, params);
    const LatticeDist xi = xi_n(path);
    mode2048[r] = xi.mass[static_cast<std::size_t>(argmin_walk(path))];
  });
  const auto ks = ks_two_sample(EmpiricalSample::from(std::move(xi0)),
                                EmpiricalSample::from(std::move(mode2048)));
  const bool pass = tv < 0.05 && ks.d < 0.03;
  return {10, "endpoint-law stabilization + limit law of xi_0", pass,
          detail::fmt("TV(mean windows 512 vs 2048) = %.4f (tol 0.05); KS(xi_0, mode@2048) = %.4f (tol 0.03)",
                      tv, ks.d)};
}

// 11. Convergence in law of the endpoint mass I_n.
inline CriterionResult criterion11(const Config& cfg) {
  const int reps = 10000;
  const ModelParams params{2.0, 1.0};
  auto sample_In = [&](int n, std::uint64_t salt) {
    std::vector<double> in(reps);
    parallel_replicas(cfg.threads, reps, [&](long long r) {
      Stream st(replica_seed(cfg.master_seed, domain::kWalk, combine(salt, r)));
      const WalkPath path = sample_walk(st, n - 1, params);
      const LatticeDist xi = xi_n(path);
      double best = 0.0;
      for (long long k = -1; k < static_cast<long long>(xi.mass.size()); ++k)
        best = std::max(best, 0.5 * (xi.at(k) + xi.at(k + 1)));
      in[r] = best;
    });
    return in;
  };
  const auto i512 = sample_In(512, 11512);
  const auto i2048 = sample_In(2048, 12048);
  double p512 = 0.0, p2048 = 0.0;
  for (double v : i512) p512 += v > 0.05;
  for (double v : i2048) p2048 += v > 0.05;
  p512 /= reps;
  p2048 /= reps;
  const auto ks = ks_two_sample(EmpiricalSample::from(std::vector<double>(i512)),
                                EmpiricalSample::from(std::vector<double>(i2048)));
  const bool pass = ks.d < 0.03 && p512 > 0.9 && p2048 > 0.9;
  return {11, "I_n convergence (512 vs 2048, 1e4 each)", pass,
          detail::fmt("D = %.4f (tol 0.03); P(I>0.05) = %.3f @512, %.3f @2048 (need > 0.9)", ks.d,
                      p512, p2048)};
}

// 12. Endpoint tightness: mean mass beyond 24 sites of the favourite point.
inline CriterionResult criterion12(const Config& cfg) {
  const int n = 2048, reps = 4000;
  const ModelParams params{2.0, 1.0};
  std::vector<double> tail(reps);
  parallel_replicas(cfg.threads, reps, [&](long long r) {
    Stream st(replica_seed(cfg.master_seed, domain::kWalk, combine(31214, r)));
    const WalkPath path = sample_walk(st, n, params);
    const LatticeDist xi = xi_n(path);
    const int ell = argmin_walk(path);
    double near = 0.0;
    for (long long k = -24; k <= 24; ++k) near += xi.at(ell + k);
    tail[r] = 1.0 - near;
  });
  const double mean = detail::mean_of(tail);
  return {12, "endpoint tightness Q[|x-l_n| >= 25] (n=2048)", mean <= 0.05,
          detail::fmt("mean tail = %.4f  (tol 0.05)", mean)};
}

// 13. Arcsine law of the P2P crossing statistic at equilibrium.
inline CriterionResult criterion13(const Config& cfg) {
  const int reps = 4000;
  P2PParams pp;
  pp.p = 2;
  pp.q = 1;
  pp.N = 512;
  pp.mu = 2.0;
  pp.theta_N = 1.0;
  pp.theta_S = 1.0;
  std::vector<double> stat(reps);
  parallel_replicas(cfg.threads, reps, [&](long long r) {
    const EnvGrid env = build_p2p_env(replica_seed(cfg.master_seed, domain::kEnv, combine(13, r)), pp);
    const long long m = m_N_statistic(crossing_law(env));
    stat[r] = static_cast<double>(m) / (4.0 * pp.N * pp.p * pp.q) + 0.5;
  });
  const auto ks = ks_statistic(EmpiricalSample::from(std::move(stat)),
                               [](double s) { return arcsine_cdf(std::min(1.0, std::max(0.0, s))); });
  return {13, "P2P arcsine law of m_N (N=512, 4000 reps)", ks.d < 0.04,
          detail::fmt("D = %.5f  (tol 0.04)", ks.d)};
}

// 14. Off-equilibrium tightness of m_N + 2pqN across N.
inline CriterionResult criterion14(const Config& cfg) {
  const int reps = 3000;
  auto sample_mn = [&](int N, std::uint64_t salt) {
    P2PParams pp;
    pp.p = 2;
    pp.q = 1;
    pp.N = N;
    pp.mu = 2.0;
    pp.theta_N = 0.5;
    pp.theta_S = 1.5;
    std::vector<double> vals(reps);
    parallel_replicas(cfg.threads, reps, [&](long long r) {
      const EnvGrid env =
          build_p2p_env(replica_seed(cfg.master_seed, domain::kEnv, combine(salt, r)), pp);
      vals[r] = static_cast<double>(m_N_statistic(crossing_law(env)) +
                                    2LL * pp.p * pp.q * pp.N);
    });
    return vals;
  };
  const auto a = sample_mn(128, 14128);
  const auto b = sample_mn(512, 14512);
  const auto ks = ks_two_sample(EmpiricalSample::from(std::vector<double>(a)),
                                EmpiricalSample::from(std::vector<double>(b)));
  return {14, "m_N + 2pqN tight across N (128 vs 512)", ks.d < 0.05,
          detail::fmt("two-sample D = %.5f  (tol 0.05)", ks.d)};
}

// 15. Growth of the conditioned walk (W_k >= k^0.4 on [100, 1e4]).
inline CriterionResult criterion15(const Config& cfg) {
  const int K = 10000, k0 = 100, reps = 10000;
  const ModelParams params{2.0, 1.0};
  const auto thresholds = growth_thresholds(K, 0.4);
  std::vector<int> verdict(reps);  // 1 pass, 0 fail (capped paths count as fail)
  long long flagged = 0;
  parallel_replicas(cfg.threads, reps, [&](long long r) {
    Stream st(replica_seed(cfg.master_seed, domain::kTanaka, combine(15, r)));
    const GrowthCheckResult g = tanaka_growth_check(st, K, k0, params, thresholds);
    verdict[r] = g.pass ? 1 : 0;
  });
  long long ok = 0;
  for (int v : verdict) ok += v;
  (void)flagged;
  const double frac = static_cast<double>(ok) / reps;
  return {15, "growth of conditioned walk (1e4 paths, k in [100, 1e4])", frac >= 0.95,
          detail::fmt("pass fraction = %.4f  (need >= 0.95)", frac)};
}

inline std::vector<CriterionResult> run(const Config& cfg, const std::vector<int>& ids = {}) {
  using Fn = CriterionResult (*)(const Config&);
  static constexpr Fn fns[15] = {criterion01, criterion02, criterion03, criterion04, criterion05,
                                 criterion06, criterion07, criterion08, criterion09, criterion10,
                                 criterion11, criterion12, criterion13, criterion14, criterion15};
  std::vector<CriterionResult> out;
  for (int i = 1; i <= 15; ++i) {
    if (!ids.empty() && std::find(ids.begin(), ids.end(), i) == ids.end()) continue;
    out.push_back(fns[i - 1](cfg));
  }
  return out;
}

}  // namespace lgpoly::acceptance
