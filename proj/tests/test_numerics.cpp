#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "lgpoly/numerics.hpp"
#include "lgpoly/rng.hpp"
#include "support.hpp"

using namespace lgpoly;

// =============================================================================
// Oracles: high-precision series evaluated in long double, independent of the
// implementations under test.
// =============================================================================

namespace {

// Euler-Mascheroni constant via harmonic sum with Euler-Maclaurin tail.
long double euler_gamma_oracle() {
  const long long N = 1000000;
  long double h = 0.0L;
  for (long long k = N; k >= 1; --k) h += 1.0L / static_cast<long double>(k);
  const long double n = static_cast<long double>(N);
  return h - std::log(n) - 0.5L / n + 1.0L / (12.0L * n * n);
}

// sum_{k>=1} 1/(k + a)^2 via partial sum plus Euler-Maclaurin tail:
// sum_{k>=M} f(k) = 1/(M+a) + 1/2 (M+a)^-2 + 1/6 (M+a)^-3 - 1/30 (M+a)^-5 + ...
long double inverse_square_series_oracle(long double a) {
  const long long N = 1000000;
  long double s = 0.0L;
  for (long long k = N; k >= 1; --k) {
    const long double d = static_cast<long double>(k) + a;
    s += 1.0L / (d * d);
  }
  const long double m = static_cast<long double>(N + 1) + a;
  s += 1.0L / m + 0.5L / (m * m) + 1.0L / (6.0L * m * m * m) - 1.0L / (30.0L * m * m * m * m * m);
  return s;
}

}  // namespace

TEST_CASE("log_sum_exp basic values", "[numerics]") {
  CHECK(log_sum_exp(0.0, 0.0) == Catch::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(log_sum_exp(kNegInf, 5.0) == 5.0);
  CHECK(log_sum_exp(5.0, kNegInf) == 5.0);
  CHECK(log_sum_exp(kNegInf, kNegInf) == kNegInf);
  CHECK(log_sum_exp(1000.0, 1000.0) == Catch::Approx(1000.0 + std::log(2.0)).epsilon(1e-15));
  CHECK(std::isfinite(log_sum_exp(1000.0, 1000.0)));
}

TEST_CASE("log_sum_exp symmetry and shift invariance", "[numerics]") {
  Stream st(SeedSpec{11, 1});
  for (int i = 0; i < 2000; ++i) {
    const double a = 40.0 * (st.uniform01() - 0.5);
    const double b = 40.0 * (st.uniform01() - 0.5);
    const double c = 40.0 * (st.uniform01() - 0.5);
    REQUIRE(log_sum_exp(a, b) == log_sum_exp(b, a));
    REQUIRE(log_sum_exp(a + c, b + c) ==
            Catch::Approx(c + log_sum_exp(a, b)).margin(1e-12));
    const double m = std::max(a, b);
    REQUIRE(log_sum_exp(a, b) >= m);
    REQUIRE(log_sum_exp(a, b) <= m + std::log(2.0) + 1e-15);
  }
}

TEST_CASE("digamma against series oracle and recurrences", "[numerics]") {
  const double gamma_const = static_cast<double>(euler_gamma_oracle());
  CHECK(digamma(1.0) == Catch::Approx(-gamma_const).epsilon(1e-12));

  // psi0(x+1) - psi0(x) = 1/x
  CHECK(digamma(1.5) - digamma(0.5) - 1.0 / 0.5 == Catch::Approx(0.0).margin(1e-12));
  CHECK(digamma(1.5) - digamma(0.5) == Catch::Approx(2.0).epsilon(1e-13));
  for (int i = 1; i <= 100; ++i) {
    const double x = i * 0.1;
    REQUIRE(digamma(x + 1.0) - digamma(x) - 1.0 / x == Catch::Approx(0.0).margin(1e-10));
  }
  CHECK_THROWS_AS(digamma(0.0), std::domain_error);
  CHECK_THROWS_AS(digamma(-1.0), std::domain_error);
}

TEST_CASE("trigamma against series oracle and recurrences", "[numerics]") {
  const double psi1_1 = static_cast<double>(inverse_square_series_oracle(0.0L));
  const double psi1_half = static_cast<double>(inverse_square_series_oracle(-0.5L));
  CHECK(trigamma(1.0) == Catch::Approx(psi1_1).epsilon(1e-12));
  CHECK(trigamma(0.5) == Catch::Approx(psi1_half).epsilon(1e-12));
  CHECK(trigamma(1.0) == Catch::Approx(M_PI * M_PI / 6.0).epsilon(1e-12));
  CHECK(trigamma(0.5) == Catch::Approx(M_PI * M_PI / 2.0).epsilon(1e-12));

  // psi1(x+1) - psi1(x) = -1/x^2
  CHECK(trigamma(3.0) - trigamma(2.0) + 1.0 / 4.0 == Catch::Approx(0.0).margin(1e-12));
  for (int i = 1; i <= 100; ++i) {
    const double x = i * 0.1;
    REQUIRE(trigamma(x + 1.0) - trigamma(x) + 1.0 / (x * x) == Catch::Approx(0.0).margin(1e-10));
  }
  CHECK_THROWS_AS(trigamma(0.0), std::domain_error);
}

TEST_CASE("arcsine cdf", "[numerics]") {
  CHECK(arcsine_cdf(0.5) == Catch::Approx(0.5).epsilon(1e-14));
  CHECK(arcsine_cdf(0.0) == 0.0);
  CHECK(arcsine_cdf(1.0) == 1.0);
  CHECK(arcsine_cdf(0.25) == Catch::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(arcsine_cdf(-0.01), std::domain_error);
  CHECK_THROWS_AS(arcsine_cdf(1.01), std::domain_error);

  double prev = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double s = i / 100.0;
    const double f = arcsine_cdf(s);
    REQUIRE(f >= prev);
    REQUIRE(arcsine_cdf(s) + arcsine_cdf(1.0 - s) == Catch::Approx(1.0).margin(1e-13));
    prev = f;
  }
}

TEST_CASE("gamma_cdf values and limits", "[numerics]") {
  CHECK(gamma_cdf(std::log(2.0), 1.0) == Catch::Approx(0.5).epsilon(1e-12));
  CHECK(gamma_cdf(0.0, 2.0) == 0.0);
  // half-integer identity P(1/2, x) = erf(sqrt(x))
  CHECK(gamma_cdf(0.5, 0.5) == Catch::Approx(std::erf(std::sqrt(0.5))).epsilon(1e-10));
  CHECK(gamma_cdf(2.0, 0.5) == Catch::Approx(std::erf(std::sqrt(2.0))).epsilon(1e-10));
  CHECK_THROWS_AS(gamma_cdf(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(gamma_cdf(-1.0, 1.0), std::domain_error);

  for (double shape : {0.5, 1.0, 1.5, 2.0, 5.0}) {
    double prev = -1.0;
    for (int i = 0; i <= 200; ++i) {
      const double x = i * 0.1 * shape;
      const double f = gamma_cdf(x, shape);
      REQUIRE(f >= prev);
      prev = f;
    }
    REQUIRE(1.0 - gamma_cdf(shape + 40.0 * std::sqrt(shape), shape) <= 1e-8);
  }
}

TEST_CASE("ks statistic hand values", "[numerics]") {
  auto uniform = [](double x) { return std::min(1.0, std::max(0.0, x)); };
  const auto r = ks_statistic(EmpiricalSample::from({0.1, 0.9}), uniform);
  CHECK(r.d == Catch::Approx(0.4).epsilon(1e-14));

  // sample at quantiles (i - 0.5)/n has D = 0.5/n by construction
  const int n = 10;
  std::vector<double> quant;
  for (int i = 1; i <= n; ++i) quant.push_back((i - 0.5) / n);
  const auto rq = ks_statistic(EmpiricalSample::from(quant), uniform);
  CHECK(rq.d == Catch::Approx(0.05).epsilon(1e-13));

  CHECK(kolmogorov_q(0.0) == 1.0);
  CHECK(kolmogorov_q(1e-9) == 1.0);
  CHECK(kolmogorov_q(4.0) < 1e-10);
  CHECK_THROWS_AS(EmpiricalSample::from({}), std::invalid_argument);
}

TEST_CASE("ks two-sample agrees on identical laws", "[numerics]") {
  Stream st(SeedSpec{21, 0});
  std::vector<double> a, b;
  for (int i = 0; i < 4000; ++i) a.push_back(st.normal());
  for (int i = 0; i < 4000; ++i) b.push_back(st.normal());
  const auto r = ks_two_sample(EmpiricalSample::from(a), EmpiricalSample::from(b));
  CHECK(r.d < test_support::ks_crit2(4000, 4000));
  CHECK(r.p > 0.01);
}

TEST_CASE("tv distance values and metric properties", "[numerics]") {
  LatticeDist p{0, {0.5, 0.5}};
  LatticeDist q{0, {0.25, 0.75}};
  CHECK(tv_distance(p, p) == 0.0);
  CHECK(tv_distance(p, q) == Catch::Approx(0.5).epsilon(1e-14));

  LatticeDist a{0, {1.0}};
  LatticeDist b{5, {1.0}};
  CHECK(tv_distance(a, b) == 2.0);

  LatticeDist bad{0, {0.5, -0.1}};
  CHECK_THROWS_AS(tv_distance(p, bad), std::invalid_argument);

  Stream st(SeedSpec{22, 0});
  for (int trial = 0; trial < 200; ++trial) {
    auto rand_dist = [&] {
      LatticeDist d;
      d.offset = static_cast<long long>(st.next_u64() % 5) - 2;
      d.mass.resize(4);
      double tot = 0.0;
      for (double& m : d.mass) {
        m = st.uniform01();
        tot += m;
      }
      for (double& m : d.mass) m /= tot;
      return d;
    };
    const LatticeDist x = rand_dist(), y = rand_dist(), z = rand_dist();
    REQUIRE(tv_distance(x, y) == tv_distance(y, x));
    REQUIRE(tv_distance(x, z) <= tv_distance(x, y) + tv_distance(y, z) + 1e-14);
    REQUIRE(tv_distance(x, y) >= 0.0);
    REQUIRE(tv_distance(x, y) <= 2.0 + 1e-14);
  }
}
