#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "zcd/distributions.hpp"

using namespace zcd;
using doctest::Approx;

namespace {

template <class Pmf>
double pmf_sum(Pmf pmf, Count top, int power = 0) {
  double s = 0.0;
  for (Count x = 0; x <= top; ++x) s += std::pow(static_cast<double>(x), power) * pmf(x);
  return s;
}

}  // namespace

TEST_CASE("poisson pmf values") {
  CHECK(std::abs(poisson_pmf(0, 2.8787) - 5.621e-2) < 5e-6);
  CHECK(poisson_pmf(0, 0.0) == 1.0);
  CHECK(poisson_pmf(3, 0.0) == 0.0);
  CHECK(std::abs(poisson_pmf(3, 2.0) - 8.0 * std::exp(-2.0) / 6.0) < 1e-15);
  for (Count x : {0, 1, 7, 40, 300}) {
    CHECK(poisson_pmf(x, 37.5) == Approx(oracle::poisson_pmf(x, 37.5)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(poisson_pmf(0, -1.0), DomainError);
}

TEST_CASE("poisson moments and the theta = 0 convention") {
  const Moments m = poisson_moments(2.0);
  CHECK(m.mean == 2.0);
  CHECK(m.variance == 2.0);
  CHECK(m.dispersion == 1.0);
  const Moments z = poisson_moments(0.0);
  CHECK(z.mean == 0.0);
  CHECK(z.dispersion == 1.0);
  CHECK(poisson_moments(2.8787).mean == 2.8787);
}

TEST_CASE("probability that every measurement is zero") {
  CHECK(std::abs(prob_all_zero(1, std::log(10.0)) - 0.1) < 1e-15);
  CHECK(std::abs(prob_all_zero(1, 2.8787) - 5.621e-2) < 5e-6);
  CHECK(std::abs(prob_all_zero(3, 1.0) - std::exp(-3.0)) < 1e-16);
}

TEST_CASE("ad hoc zero density") {
  CHECK(adhoc_zero_density(0.0, 2) == 2.0);
  CHECK(std::abs(adhoc_zero_density(1.0, 1) - std::exp(-1.0)) < 1e-16);
  CHECK(oracle::simpson([](double th) { return adhoc_zero_density(th, 5); }, 0.0, 10.0) ==
        Approx(1.0).epsilon(1e-9));
}

TEST_CASE("gamma pdf and moments") {
  CHECK(gamma_pdf(0.0, {1.0, 1.0}) == 1.0);
  CHECK(std::abs(gamma_pdf(1.0, {1.0, 2.0}) - 2.0 * std::exp(-2.0)) < 1e-15);
  // rho = r^2 removes the rho^-1/2 singularity; the r -> 0 limit is 2 sqrt(3 / pi).
  const double mass = oracle::simpson(
      [](double r) { return r == 0.0 ? 2.0 * std::sqrt(3.0 / std::numbers::pi) : gamma_pdf(r * r, {0.5, 3.0}) * 2.0 * r; }, 0.0,
      8.0);
  CHECK(mass == Approx(1.0).epsilon(1e-9));
  CHECK(gamma_moment({1.0, 2.0}, 1) == 0.5);
  CHECK(gamma_moment({1.0, 2.0}, 0) == 1.0);
  CHECK(gamma_moment({3.0, 2.0}, 2) == Approx(3.0).epsilon(1e-15));
  CHECK(std::isinf(gamma_pdf(0.0, {0.5, 1.0})));
}

TEST_CASE("rising factorial keeps precision for huge a") {
  CHECK(log_rising_factorial(3.0, 0) == 0.0);
  CHECK(std::exp(log_rising_factorial(3.0, 2)) == Approx(12.0).epsilon(1e-14));
  CHECK(std::exp(log_rising_factorial(0.5, 100)) ==
        Approx(std::exp(std::lgamma(100.5) - std::lgamma(0.5))).epsilon(1e-11));
  // a^x (1 + x(x-1)/(2a) + ...) at a = 1e8, x = 3.
  const double a = 1e8;
  CHECK(log_rising_factorial(a, 3) - 3.0 * std::log(a) == Approx(std::log1p(3.0 / a + 2.0 / (a * a))).epsilon(1e-9));
}

TEST_CASE("z-Poisson pmf") {
  CHECK(std::abs(zpoisson_pmf(0, {1.0, 2.0}) - 2.0 * std::exp(-1.0)) < 1e-15);
  for (Count x = 0; x < 30; ++x) {
    CHECK(zpoisson_pmf(x, {3.3, 1.0}) == Approx(poisson_pmf(x, 3.3)).epsilon(1e-12));
  }
  CHECK(std::abs(pmf_sum([](Count x) { return zpoisson_pmf(x, {4.0, 1.5}); }, 200) - 1.0) < 1e-12);
  // psi P0 = 1: every count is zero.
  const ZPoissonParams degenerate{2.0, std::exp(2.0)};
  CHECK(zpoisson_pmf(0, degenerate) == Approx(1.0).epsilon(1e-14));
  CHECK(zpoisson_pmf(4, degenerate) == Approx(0.0).epsilon(1e-14));
  CHECK_THROWS_AS(zpoisson_pmf(0, {2.0, 0.5}), DomainError);
  CHECK_THROWS_AS(zpoisson_pmf(0, {2.0, std::exp(2.0) * 1.01}), DomainError);
}

TEST_CASE("z-Poisson moments against summation") {
  const ZPoissonParams p{2.0, 1.3};
  const Moments m = zpoisson_moments(p);
  const double s1 = pmf_sum([&](Count x) { return zpoisson_pmf(x, p); }, 500, 1);
  const double s2 = pmf_sum([&](Count x) { return zpoisson_pmf(x, p); }, 500, 2);
  CHECK(std::abs(m.mean - s1) < 1e-10);
  CHECK(std::abs(m.variance - (s2 - s1 * s1)) < 1e-10);
  const Moments one = zpoisson_moments({3.0, 1.0});
  CHECK(one.mean == Approx(3.0));
  CHECK(one.dispersion == Approx(1.0));
}

TEST_CASE("z-Poisson with mean 4 and dispersion 1.5") {
  const ZPoissonParams p = zpoisson_from_moments(4.0, 1.5);
  CHECK(p.theta == Approx(4.5));
  const Moments m = zpoisson_moments(p);
  CHECK(std::abs(m.mean - 4.0) < 1e-12);
  CHECK(std::abs(m.dispersion - 1.5) < 1e-12);
  CHECK(std::abs(pmf_sum([&](Count x) { return zpoisson_pmf(x, p); }, 200, 1) - 4.0) < 1e-9);
  CHECK_THROWS_AS(zpoisson_from_moments(4.0, 0.9), DomainError);
}

TEST_CASE("NB pmf") {
  CHECK(std::abs(nb_pmf(0, {1.0, 1.0}) - 0.5) < 1e-15);
  for (Count x = 0; x < 20; ++x) {
    CHECK(std::abs(nb_pmf(x, {2.5, 1e8}) - poisson_pmf(x, 2.5)) < 1e-6);
  }
  CHECK(std::abs(pmf_sum([](Count x) { return nb_pmf(x, {4.0, 8.0}); }, 1000, 1) - 4.0) < 1e-9);
  for (Count x : {0, 2, 9}) {
    CHECK(nb_pmf(x, {3.0, 2.0}) == Approx(oracle::nb_pmf_by_mixture(x, 3.0, 2.0)).epsilon(1e-8));
  }
  CHECK_THROWS_AS(nb_pmf(0, {1.0, 0.0}), DomainError);
}

TEST_CASE("NB dispersion and moments") {
  CHECK(nb_dispersion({4.0, 8.0}) == 1.5);
  CHECK(nb_dispersion({2.0, 2.0}) == 2.0);
  CHECK(nb_dispersion({2.0, 1e12}) == Approx(1.0));
  const NBParams p{3.0, 1.7};
  const Moments m = nb_moments(p);
  const double s1 = pmf_sum([&](Count x) { return nb_pmf(x, p); }, 1500, 1);
  const double s2 = pmf_sum([&](Count x) { return nb_pmf(x, p); }, 1500, 2);
  CHECK(std::abs(m.mean - s1) < 1e-10);
  CHECK(std::abs(m.variance - (s2 - s1 * s1)) < 1e-10);
}

TEST_CASE("all pmfs sum to one over a parameter grid") {
  for (double theta : {0.1, 1.0, 4.0, 25.0}) {
    const Count top = static_cast<Count>(theta + 40.0 * std::sqrt(theta) + 40.0);
    CHECK(std::abs(pmf_sum([&](Count x) { return poisson_pmf(x, theta); }, top) - 1.0) < 1e-12);
    for (double a : {0.5, 2.0, 50.0}) {
      const double var = theta * (1.0 + theta / a);
      const Count nb_top = static_cast<Count>(theta + 40.0 * std::sqrt(var) + 40.0);
      CHECK(std::abs(pmf_sum([&](Count x) { return nb_pmf(x, {theta, a}); }, nb_top) - 1.0) < 1e-12);
    }
    const ZPoissonParams zp{theta, 0.5 * (1.0 + std::exp(theta))};
    const double zvar = zpoisson_moments(zp).variance;
    const Count z_top = static_cast<Count>(theta + 40.0 * std::sqrt(zvar) + 40.0);
    CHECK(std::abs(pmf_sum([&](Count x) { return zpoisson_pmf(x, zp); }, z_top) - 1.0) < 1e-12);
  }
}

TEST_CASE("overdispersion from variation") {
  for (double v : {0.0, 0.1, 0.5, 2.0}) {
    const auto m = OverdispersionModel::from_variation(3.0, v);
    CHECK(m.delta_x == Approx(1.0 + 3.0 * v * v));
    CHECK(m.delta_x >= 1.0);
  }
}

TEST_CASE("detector configuration") {
  const DetectorConfig cfg{1e10, 1e-12, 0.5, 3600.0};
  CHECK(expected_theta(cfg) == Approx(18.0).epsilon(1e-12));
  CHECK_FALSE(cfg.poisson_regime_warning());
  CHECK(expected_theta({1e10, 1e-12, 0.0, 3600.0}) == 0.0);
  const DetectorConfig longer{1e10, 1e-12, 0.5, 7200.0};
  CHECK(expected_theta(longer) == Approx(2.0 * expected_theta(cfg)));
  CHECK(DetectorConfig{1.0, 0.5, 1.0, 1.0}.poisson_regime_warning());
  CHECK_THROWS_AS(expected_theta({1e10, 1e-12, 1.5, 1.0}), DomainError);
}

TEST_CASE("rate variance") {
  CHECK(rate_variance(1.0, 1.0, 1.0) == 1.0);
  CHECK(rate_variance(2.0, 4.0, 1.0) == 0.5);
  CHECK(rate_variance(2.0, 4.0, 1.24) == Approx(0.62));
  const RateModel m{0.25, 8.0, 1};
  CHECK(m.theta() == 2.0);
}

TEST_CASE("expectation over the Poisson distribution") {
  CHECK(expectation_over_poisson([](Count x) { return static_cast<double>(x); }, 3.0) == Approx(3.0).epsilon(1e-13));
  CHECK(expectation_over_poisson([](Count x) { return (x - 3.0) * (x - 3.0); }, 3.0) == Approx(3.0).epsilon(1e-13));
  const double sq = expectation_over_poisson([](Count x) { return static_cast<double>(x * x); }, 2.0);
  CHECK(sq == Approx(oracle::poisson_expectation([](double k) { return k * k; }, 2.0)).epsilon(1e-13));
  CHECK(sq == Approx(6.0).epsilon(1e-13));
  CHECK(expectation_over_poisson([](Count x) { return x == 0 ? 7.0 : 1.0; }, 0.0) == 7.0);
}
