#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lgpoly/rng.hpp"

namespace lgpoly {

static_assert(std::endian::native == std::endian::little,
              "grid serialization assumes a little-endian host");

enum class Regime : std::uint32_t { P2L = 1, P2P = 2 };

struct P2PParams {
  int p = 1, q = 1, N = 1;
  double mu = 2.0;
  double theta_N = 1.0;
  double theta_S = 1.0;

  double theta_E() const { return mu - theta_N; }
  double theta_W() const { return mu - theta_S; }
  bool valid() const {
    return p >= 1 && q >= 1 && N >= 1 && mu > 0.0 && theta_N > 0.0 && theta_N < mu &&
           theta_S > 0.0 && theta_S < mu;
  }
  void require_valid() const {
    if (!valid()) throw std::domain_error("P2PParams: need p,q,N >= 1 and 0 < theta_N, theta_S < mu");
  }
};

// Lattice of log-weights omega(i,j) under one of the two boundary regimes.
// Row-major with i in [0, width), j in [0, height); omega(0,0) = 0 always,
// and for P2P the corner (pN, qN) carries no weight in the array (it enters
// the crossing identity through corner_logw, zero under the model).
struct EnvGrid {
  Regime regime = Regime::P2L;
  int width = 1;   // m + 1
  int height = 1;  // n + 1
  ModelParams p2l{};
  P2PParams p2p{};
  SeedSpec seed{};
  double corner_logw = 0.0;
  std::vector<double> logw;

  double at(int i, int j) const { return logw[static_cast<std::size_t>(i) * height + j]; }
  double& at(int i, int j) { return logw[static_cast<std::size_t>(i) * height + j]; }
  int m() const { return width - 1; }
  int n() const { return height - 1; }
};

namespace detail {

inline Stream site_stream(const SeedSpec& seed, std::uint64_t i, std::uint64_t j) {
  return Stream(SeedSpec{seed.master_seed, combine(seed.stream_id, site_code(i, j))});
}

// Gamma shape of site (i,j) in the point-to-line regime.
inline double p2l_shape(const ModelParams& p, int i, int j) {
  if (i == 0) return p.mu - p.theta;  // west boundary
  if (j == 0) return p.theta;        // south boundary
  return p.mu;
}

// Gamma shape of site (i,j) in the point-to-point regime; returns 0 for the
// two weightless corners.
inline double p2p_shape(const P2PParams& p, int i, int j) {
  const int pn = p.p * p.N, qn = p.q * p.N;
  if ((i == 0 && j == 0) || (i == pn && j == qn)) return 0.0;
  if (j == 0) return p.theta_S;       // south row, i in [1, pN]
  if (i == pn) return p.theta_E();    // east column, j in [1, qN-1]
  if (i == 0) return p.theta_W();     // west column, j in [1, qN]
  if (j == qn) return p.theta_N;      // north row, i in [1, pN-1]
  return p.mu;
}

}  // namespace detail

// Log-weight of a single P2L site, independent of any grid dimensions.
inline double p2l_site_logweight(const SeedSpec& seed, const ModelParams& params, int i, int j) {
  if (i == 0 && j == 0) return 0.0;
  Stream st = detail::site_stream(seed, i, j);
  return log_weight_sample(st, detail::p2l_shape(params, i, j));
}

inline EnvGrid build_p2l_env(const SeedSpec& seed, int m, int n, const ModelParams& params) {
  params.require_valid();
  if (m < 0 || n < 0) throw std::domain_error("build_p2l_env: need m, n >= 0");
  EnvGrid g;
  g.regime = Regime::P2L;
  g.width = m + 1;
  g.height = n + 1;
  g.p2l = params;
  g.seed = seed;
  g.logw.resize(static_cast<std::size_t>(g.width) * g.height);
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= n; ++j) g.at(i, j) = p2l_site_logweight(seed, params, i, j);
  return g;
}

// Log-weights on the antidiagonal i + j = t of the P2L environment, written
// to out[i] for i = 0..t. Matches build_p2l_env site by site, so the DP can
// stream antidiagonals without materializing a grid.
inline void p2l_antidiagonal_logweights(const SeedSpec& seed, const ModelParams& params, int t,
                                        std::vector<double>& out) {
  out.resize(static_cast<std::size_t>(t) + 1);
  for (int i = 0; i <= t; ++i) out[i] = p2l_site_logweight(seed, params, i, t - i);
}

inline EnvGrid build_p2p_env(const SeedSpec& seed, const P2PParams& params) {
  params.require_valid();
  EnvGrid g;
  g.regime = Regime::P2P;
  g.width = params.p * params.N + 1;
  g.height = params.q * params.N + 1;
  g.p2p = params;
  g.seed = seed;
  g.corner_logw = 0.0;
  g.logw.resize(static_cast<std::size_t>(g.width) * g.height);
  for (int i = 0; i < g.width; ++i) {
    for (int j = 0; j < g.height; ++j) {
      const double shape = detail::p2p_shape(params, i, j);
      if (shape == 0.0) {
        g.at(i, j) = 0.0;
        continue;
      }
      Stream st = detail::site_stream(seed, i, j);
      g.at(i, j) = log_weight_sample(st, shape);
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Binary dump/load: fixed header + little-endian float64 payload, bit-exact
// round trip.
// ---------------------------------------------------------------------------

namespace detail {

inline constexpr char kEnvMagic[8] = {'L', 'G', 'P', 'E', 'N', 'V', '0', '1'};

template <class T>
void put(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <class T>
void get(std::istream& is, T& v) {
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
}

}  // namespace detail

inline void save_env(const EnvGrid& g, std::ostream& os) {
  os.write(detail::kEnvMagic, 8);
  detail::put(os, std::uint32_t{1});
  detail::put(os, static_cast<std::uint32_t>(g.regime));
  detail::put(os, static_cast<std::int32_t>(g.width));
  detail::put(os, static_cast<std::int32_t>(g.height));
  detail::put(os, g.seed.master_seed);
  detail::put(os, g.seed.stream_id);
  detail::put(os, g.p2l.mu);
  detail::put(os, g.p2l.theta);
  detail::put(os, static_cast<std::int32_t>(g.p2p.p));
  detail::put(os, static_cast<std::int32_t>(g.p2p.q));
  detail::put(os, static_cast<std::int32_t>(g.p2p.N));
  detail::put(os, g.p2p.mu);
  detail::put(os, g.p2p.theta_N);
  detail::put(os, g.p2p.theta_S);
  detail::put(os, g.corner_logw);
  os.write(reinterpret_cast<const char*>(g.logw.data()),
           static_cast<std::streamsize>(g.logw.size() * sizeof(double)));
}

inline EnvGrid load_env(std::istream& is) {
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, detail::kEnvMagic, 8) != 0)
    throw std::runtime_error("load_env: bad magic");
  std::uint32_t version = 0, regime = 0;
  detail::get(is, version);
  if (version != 1) throw std::runtime_error("load_env: unsupported version");
  detail::get(is, regime);
  EnvGrid g;
  g.regime = static_cast<Regime>(regime);
  std::int32_t w = 0, h = 0;
  detail::get(is, w);
  detail::get(is, h);
  g.width = w;
  g.height = h;
  detail::get(is, g.seed.master_seed);
  detail::get(is, g.seed.stream_id);
  detail::get(is, g.p2l.mu);
  detail::get(is, g.p2l.theta);
  std::int32_t p = 0, q = 0, N = 0;
  detail::get(is, p);
  detail::get(is, q);
  detail::get(is, N);
  g.p2p.p = p;
  g.p2p.q = q;
  g.p2p.N = N;
  detail::get(is, g.p2p.mu);
  detail::get(is, g.p2p.theta_N);
  detail::get(is, g.p2p.theta_S);
  detail::get(is, g.corner_logw);
  g.logw.resize(static_cast<std::size_t>(g.width) * g.height);
  is.read(reinterpret_cast<char*>(g.logw.data()),
          static_cast<std::streamsize>(g.logw.size() * sizeof(double)));
  if (!is) throw std::runtime_error("load_env: truncated payload");
  return g;
}

inline void save_env(const EnvGrid& g, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("save_env: cannot open " + path);
  save_env(g, os);
}

inline EnvGrid load_env(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("load_env: cannot open " + path);
  return load_env(is);
}

// Transpose (i <-> j); used by the transposition-covariance checks.
inline EnvGrid transpose(const EnvGrid& g) {
  EnvGrid t = g;
  t.width = g.height;
  t.height = g.width;
  t.logw.resize(g.logw.size());
  for (int i = 0; i < g.width; ++i)
    for (int j = 0; j < g.height; ++j) t.at(j, i) = g.at(i, j);
  return t;
}

}  // namespace lgpoly
