#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "lgpoly/environment.hpp"
#include "lgpoly/numerics.hpp"
#include "lgpoly/partition.hpp"
#include "lgpoly/walk.hpp"

namespace lgpoly {

// Up/right lattice edge from the lower half-space {q i + p j <= pqN} to its
// complement, tagged with its block k and offset index within the block
// pattern (blocks ascending, offsets in down-right order along the block).
struct CrossingEdge {
  int x1 = 0, y1 = 0;
  int x2 = 0, y2 = 0;
  int block = 0;
  int offset = 0;
};

inline long long f_statistic(const CrossingEdge& e, int p, int q) {
  return static_cast<long long>(e.x1 + e.x2) * q - static_cast<long long>(e.y1 + e.y2) * p;
}

// The p+q crossing edges of the basic block, as offsets relative to the
// block anchor z1 = (0, 0) (i.e. translated from the N=1 geometry by -(0,q)).
inline std::vector<CrossingEdge> block_pattern(int p, int q) {
  if (p < 1 || q < 1) throw std::domain_error("block_pattern: need p, q >= 1");
  std::vector<CrossingEdge> edges;
  const long long pq = static_cast<long long>(p) * q;
  auto below = [&](int i, int j) { return static_cast<long long>(q) * i + static_cast<long long>(p) * j <= pq; };
  for (int i = 0; i <= p; ++i) {
    for (int j = 0; j <= q; ++j) {
      if (!below(i, j)) continue;
      if (i + 1 <= p && !below(i + 1, j)) edges.push_back({i, j, i + 1, j, 0, 0});
      if (j + 1 <= q && !below(i, j + 1)) edges.push_back({i, j, i, j + 1, 0, 0});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const CrossingEdge& a, const CrossingEdge& b) {
    if (a.x1 != b.x1) return a.x1 < b.x1;
    if (a.y1 != b.y1) return a.y1 > b.y1;
    return (a.y2 - a.y1) > (b.y2 - b.y1);  // vertical before horizontal at a shared z1
  });
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i].y1 -= q;
    edges[i].y2 -= q;
    edges[i].offset = static_cast<int>(i);
  }
  if (edges.size() != static_cast<std::size_t>(p + q))
    throw std::logic_error("block_pattern: expected p+q edges");
  return edges;
}

// All N(p+q) crossing edges of the transverse diagonal in R_N, enumerated
// block-major: edge = z1^k + a with z1^k = (kp, (N-k)q).
inline std::vector<CrossingEdge> crossing_set(int p, int q, int N) {
  if (N < 1) throw std::domain_error("crossing_set: need N >= 1");
  const auto pattern = block_pattern(p, q);
  std::vector<CrossingEdge> edges;
  edges.reserve(static_cast<std::size_t>(N) * pattern.size());
  for (int k = 0; k < N; ++k) {
    const int ax = k * p, ay = (N - k) * q;
    for (const CrossingEdge& a : pattern) {
      CrossingEdge e = a;
      e.x1 += ax;
      e.y1 += ay;
      e.x2 += ax;
      e.y2 += ay;
      e.block = k;
      edges.push_back(e);
    }
  }
  return edges;
}

// Crossing-edge distribution of the point-to-point measure:
// Q(G(x) = <z1,z2>) = Z_{z1} * Zt_{z2} * exp(omega_corner) / Z_{pN,qN}.
struct CrossingLaw {
  int p = 1, q = 1, N = 1;
  std::vector<CrossingEdge> edges;
  std::vector<double> prob;          // aligned with edges, sums to 1
  std::vector<double> anchor_score;  // s_k = logZ(z1^k) + logZt(z2^k), k < N
  int mode_index = 0;                // argmax prob, smallest on float ties
  double identity_gap = 0.0;         // LSE over edges minus logZ(pN,qN)

  const CrossingEdge& mode_edge() const { return edges[static_cast<std::size_t>(mode_index)]; }
  double mode_mass() const { return prob[static_cast<std::size_t>(mode_index)]; }
};

inline CrossingLaw crossing_law(const EnvGrid& env, const LogZGrid& fwd, const LogZGrid& rev) {
  if (env.regime != Regime::P2P) throw std::invalid_argument("crossing_law: requires a P2P environment");
  const P2PParams& pp = env.p2p;
  CrossingLaw law;
  law.p = pp.p;
  law.q = pp.q;
  law.N = pp.N;
  law.edges = crossing_set(pp.p, pp.q, pp.N);
  const double log_corner = fwd.at(pp.p * pp.N, pp.q * pp.N);
  law.prob.resize(law.edges.size());
  double lse = kNegInf;
  for (std::size_t i = 0; i < law.edges.size(); ++i) {
    const CrossingEdge& e = law.edges[i];
    const double lp = fwd.at(e.x1, e.y1) + rev.at(e.x2, e.y2) + env.corner_logw - log_corner;
    law.prob[i] = std::exp(lp);
    lse = log_sum_exp(lse, lp);
  }
  law.identity_gap = lse;  // exact decomposition makes this ~0
  law.mode_index = 0;
  for (std::size_t i = 1; i < law.prob.size(); ++i)
    if (law.prob[i] > law.prob[static_cast<std::size_t>(law.mode_index)])
      law.mode_index = static_cast<int>(i);
  law.anchor_score.resize(static_cast<std::size_t>(pp.N));
  for (int k = 0; k < pp.N; ++k) {
    const int ax = k * pp.p, ay = (pp.N - k) * pp.q;
    law.anchor_score[static_cast<std::size_t>(k)] = fwd.at(ax, ay) + rev.at(ax + 1, ay);
  }
  return law;
}

inline CrossingLaw crossing_law(const EnvGrid& env) {
  const LogZGrid fwd = forward_logZ(env);
  const LogZGrid rev = reverse_logZ(env);
  return crossing_law(env, fwd, rev);
}

// Favourite block: argmin of the block walk W, i.e. argmax of the anchor
// scores s_k (Q is proportional to exp(-W)).
inline int m_N_block(const CrossingLaw& law) {
  int best = 0;
  for (int k = 1; k < static_cast<int>(law.anchor_score.size()); ++k)
    if (law.anchor_score[static_cast<std::size_t>(k)] > law.anchor_score[static_cast<std::size_t>(best)])
      best = k;
  return best;
}

// m_N = (z1 + z2) . (q e1 - p e2) at the favourite block's anchor edge.
inline long long m_N_statistic(const CrossingLaw& law) {
  const int k = m_N_block(law);
  CrossingEdge anchor;
  anchor.x1 = k * law.p;
  anchor.y1 = (law.N - k) * law.q;
  anchor.x2 = anchor.x1 + 1;
  anchor.y2 = anchor.y1;
  return f_statistic(anchor, law.p, law.q);
}

// Block walk W_0..W_{N-1} assembled from the ratio variables along the lower
// and upper transverse staircases (the edge-sum route); satisfies
// W_k = -(s_k - s_0) up to rounding, with s_k the DP anchor scores.
inline WalkPath block_walk(const EnvGrid& env, const LogZGrid& fwd, const LogZGrid& rev) {
  if (env.regime != Regime::P2P) throw std::invalid_argument("block_walk: requires a P2P environment");
  const int p = env.p2p.p, q = env.p2p.q, N = env.p2p.N;
  const long long pqN = static_cast<long long>(p) * q * N;
  WalkPath w;
  w.s.reserve(static_cast<std::size_t>(N));
  double lower_acc = 0.0, upper_acc = 0.0;
  int i = 0, j = q * N;
  auto maybe_record = [&] {
    if (i % p == 0 && j == (N - i / p) * q && i / p < N) w.s.push_back(-(lower_acc + upper_acc));
  };
  maybe_record();
  // Walk the staircase only as far as the last anchor; past it the shifted
  // upper path would leave the rectangle.
  while (static_cast<int>(w.s.size()) < N && (i < p * N || j > 0)) {
    if (i + 1 <= p * N && static_cast<long long>(q) * (i + 1) + static_cast<long long>(p) * j <= pqN) {
      // right step: lower picks up log U, upper drops log Ut
      lower_acc += ratio_logU(fwd, i + 1, j);
      upper_acc += -ratio_logU_reverse(rev, i + 1, j + 1);
      ++i;
    } else {
      // down step: lower drops log V, upper picks up log Vt
      lower_acc += -ratio_logV(fwd, i, j);
      upper_acc += ratio_logV_reverse(rev, i + 1, j - 1);
      --j;
    }
    maybe_record();
  }
  if (static_cast<int>(w.s.size()) != N) throw std::logic_error("block_walk: anchor walk incomplete");
  return w;
}

inline WalkPath block_walk(const EnvGrid& env) {
  const LogZGrid fwd = forward_logZ(env);
  const LogZGrid rev = reverse_logZ(env);
  return block_walk(env, fwd, rev);
}

// Crossing law recentered at the block of its mode edge; indices (k, a) with
// |k| <= K, remaining mass in tail (exact complement).
struct CrossingWindow {
  int K = 0;
  int arity = 0;  // edges per block (p+q)
  std::vector<double> mass;  // (2K+1) x arity, block-major
  double tail = 0.0;

  double at(int k, int a) const {
    return mass[static_cast<std::size_t>(k + K) * arity + a];
  }
};

inline CrossingWindow centered_crossing_window(const CrossingLaw& law, int K) {
  if (K < 0) throw std::domain_error("centered_crossing_window: K must be >= 0");
  const int arity = law.p + law.q;
  CrossingWindow win;
  win.K = K;
  win.arity = arity;
  win.mass.assign(static_cast<std::size_t>(2 * K + 1) * arity, 0.0);
  const int center = law.mode_edge().block;
  double total = 0.0;
  for (int k = -K; k <= K; ++k) {
    const int blk = center + k;
    if (blk < 0 || blk >= law.N) continue;
    for (int a = 0; a < arity; ++a) {
      const double m = law.prob[static_cast<std::size_t>(blk) * arity + a];
      win.mass[static_cast<std::size_t>(k + K) * arity + a] = m;
      total += m;
    }
  }
  win.tail = 1.0 - total;
  return win;
}

}  // namespace lgpoly
