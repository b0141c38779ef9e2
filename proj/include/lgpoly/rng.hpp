#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace lgpoly {

// ---------------------------------------------------------------------------
// Seeded, counter-based random streams.
//
// A stream is identified by (master_seed, stream_id). Equal pairs reproduce
// byte-identical sequences; distinct pairs give statistically independent
// streams. Each stream is a keyed splitmix-style generator: a Weyl counter
// xored with a per-stream key and passed through the 64-bit finalizer, so
// streams are distinct bijections and can never overlap.
// ---------------------------------------------------------------------------

struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

// Order-insensitive only in the sense that it is a fixed documented mixing;
// used to derive sub-stream ids from (domain, index) style pairs.
inline std::uint64_t combine(std::uint64_t a, std::uint64_t b) {
  return mix64(a + kGolden + (b ^ (a << 1)));
}

// Dimension-free pairing of lattice coordinates, so a site's stream does not
// depend on the grid it is embedded in (couples environments across sizes).
inline std::uint64_t site_code(std::uint64_t i, std::uint64_t j) {
  const std::uint64_t d = i + j;
  return d * (d + 1) / 2 + i;
}

namespace domain {
// Stream-id domains, one per sampling purpose, so replica r of one experiment
// never shares a stream with replica r of another.
inline constexpr std::uint64_t kEnv = 0x01;
inline constexpr std::uint64_t kWalk = 0x02;
inline constexpr std::uint64_t kTanaka = 0x03;
inline constexpr std::uint64_t kRejection = 0x04;
inline constexpr std::uint64_t kXiLimit = 0x05;
inline constexpr std::uint64_t kRenewal = 0x06;
}  // namespace domain

inline SeedSpec replica_seed(std::uint64_t master, std::uint64_t dom, std::uint64_t replica) {
  return SeedSpec{master, combine(dom, replica)};
}

struct ModelParams {
  double mu = 2.0;
  double theta = 1.0;

  bool valid() const { return mu > 0.0 && theta > 0.0 && theta < mu; }
  void require_valid() const {
    if (!valid()) throw std::domain_error("ModelParams: need 0 < theta < mu");
  }
  bool equilibrium(double tol = 0.0) const { return std::abs(theta - mu / 2.0) <= tol; }
};

class Stream {
 public:
  Stream() : Stream(SeedSpec{}) {}
  explicit Stream(const SeedSpec& s)
      : ctr_(mix64(s.master_seed + kGolden)),
        key_(mix64(s.stream_id ^ mix64(s.master_seed ^ 0xA511E9B3CB23D9A1ull))) {}

  std::uint64_t next_u64() {
    ctr_ += kGolden;
    return mix64(ctr_ ^ key_);
  }

  // Uniform on the open interval (0,1); never returns 0 or 1, safe for logs.
  double uniform01() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  // Standard normal via the 128-layer ziggurat (Marsaglia & Tsang 2000).
  double normal() {
    const Zig& z = zig();
    for (;;) {
      const std::int32_t hz = static_cast<std::int32_t>(next_u64() >> 32);
      const std::uint32_t iz = static_cast<std::uint32_t>(hz) & 127u;
      const std::uint64_t a = static_cast<std::uint64_t>(std::llabs(static_cast<long long>(hz)));
      if (a < z.kn[iz]) return hz * z.wn[iz];
      if (iz == 0) {
        // tail beyond r
        double x, y;
        do {
          x = -std::log(uniform01()) / kZigR;
          y = -std::log(uniform01());
        } while (y + y < x * x);
        return hz > 0 ? kZigR + x : -(kZigR + x);
      }
      const double x = hz * z.wn[iz];
      if (z.fn[iz] + uniform01() * (z.fn[iz - 1] - z.fn[iz]) < std::exp(-0.5 * x * x)) return x;
    }
  }

  // Gamma(shape, 1) via Marsaglia-Tsang squeeze; shapes below 1 are boosted
  // through Gamma(shape+1) * U^(1/shape). Valid for every shape > 0.
  double gamma(double shape) {
    if (!(shape > 0.0)) throw std::domain_error("gamma_sample: shape must be > 0");
    double boost = 1.0;
    if (shape < 1.0) {
      boost = std::pow(uniform01(), 1.0 / shape);
      shape += 1.0;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform01();
      const double x2 = x * x;
      if (u < 1.0 - 0.0331 * x2 * x2) return boost * d * v;
      if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return boost * d * v;
    }
  }

 private:
  static constexpr double kZigR = 3.442619855899;

  struct Zig {
    std::uint32_t kn[128];
    double wn[128];
    double fn[128];
  };

  static const Zig& zig() {
    static const Zig z = [] {
      Zig t{};
      const double m1 = 2147483648.0;
      double dn = kZigR, tn = kZigR;
      const double vn = 9.91256303526217e-3;
      const double q = vn / std::exp(-0.5 * dn * dn);
      t.kn[0] = static_cast<std::uint32_t>((dn / q) * m1);
      t.kn[1] = 0;
      t.wn[0] = q / m1;
      t.wn[127] = dn / m1;
      t.fn[0] = 1.0;
      t.fn[127] = std::exp(-0.5 * dn * dn);
      for (int i = 126; i >= 1; --i) {
        dn = std::sqrt(-2.0 * std::log(vn / dn + std::exp(-0.5 * dn * dn)));
        t.kn[i + 1] = static_cast<std::uint32_t>((dn / tn) * m1);
        tn = dn;
        t.fn[i] = std::exp(-0.5 * dn * dn);
        t.wn[i] = dn / m1;
      }
      return t;
    }();
    return z;
  }

  std::uint64_t ctr_;
  std::uint64_t key_;
};

inline double gamma_sample(Stream& stream, double shape) { return stream.gamma(shape); }

// omega = log Y where Y^{-1} ~ Gamma(shape, 1), i.e. -log of a gamma variate.
inline double log_weight_sample(Stream& stream, double shape) {
  return -std::log(stream.gamma(shape));
}

// Increment of the representation walk S. Convention: the endpoint law
// satisfies Q_n{x_n=(k,n-k)} proportional to exp(-S_k), so
// X = log G_U - log G_V with G_U ~ Gamma(theta,1), G_V ~ Gamma(mu-theta,1),
// E X = psi0(theta) - psi0(mu-theta) (negative for theta < mu/2, so the
// argmin of S sits near n there). G_U is drawn first.
inline double walk_increment_sample(Stream& stream, const ModelParams& p) {
  p.require_valid();
  const double gu = stream.gamma(p.theta);
  const double gv = stream.gamma(p.mu - p.theta);
  return std::log(gu / gv);
}

}  // namespace lgpoly
