#include "zcd/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace zcd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* msg) {
  if (!ok) throw DomainError(msg);
}

}  // namespace

void DetectorConfig::validate() const {
  require(n_atoms > 0.0, "detector: number of atoms must be > 0");
  require(decay_const > 0.0, "detector: decay constant must be > 0");
  require(efficiency >= 0.0 && efficiency <= 1.0, "detector: efficiency must lie in [0, 1]");
  require(t > 0.0, "detector: counting time must be > 0");
}

void GammaDist::validate() const {
  require(a > 0.0 && b > 0.0, "gamma distribution: shape and rate must be > 0");
}

double ZPoissonParams::p0() const { return std::exp(-theta); }

void ZPoissonParams::validate() const {
  require(theta > 0.0, "z-Poisson: theta must be > 0");
  require(psi >= 1.0, "z-Poisson: psi must be >= 1");
  // psi * P0 <= 1, written in log form so large theta does not overflow 1/P0.
  require(std::log(psi) - theta <= 1e-15, "z-Poisson: psi must not exceed 1/P0");
}

void NBParams::validate() const {
  require(theta > 0.0 && a > 0.0, "negative binomial: theta and a must be > 0");
}

OverdispersionModel OverdispersionModel::from_variation(double mu2, double v) {
  require(mu2 >= 0.0 && v >= 0.0, "overdispersion: variance and variation coefficient must be >= 0");
  return {1.0 + mu2 * v * v, v};
}

double log_rising_factorial(double a, Count x) {
  require(a > 0.0, "rising factorial: a must be > 0");
  if (x == 0) return 0.0;
  // Direct product of (1 + k/a) terms keeps full precision when a >> x,
  // where the log-gamma difference would cancel.
  if (x <= 64) {
    double s = static_cast<double>(x) * std::log(a);
    for (Count k = 1; k < x; ++k) s += std::log1p(static_cast<double>(k) / a);
    return s;
  }
  return log_gamma(a + static_cast<double>(x)) - log_gamma(a);
}

double poisson_log_pmf(Count x, double theta) {
  require(theta >= 0.0, "poisson: theta must be >= 0");
  if (theta == 0.0) return x == 0 ? 0.0 : -kInf;
  const double xd = static_cast<double>(x);
  return xd * std::log(theta) - theta - log_gamma(xd + 1.0);
}

double poisson_pmf(Count x, double theta) { return std::exp(poisson_log_pmf(x, theta)); }

Moments poisson_moments(double theta) {
  require(theta >= 0.0, "poisson: theta must be >= 0");
  return {theta, theta, 1.0};
}

double prob_all_zero(int n, double theta) {
  require(n >= 1, "prob_all_zero: n must be >= 1");
  require(theta >= 0.0, "prob_all_zero: theta must be >= 0");
  return std::exp(-n * theta);
}

double adhoc_zero_density(double theta, int n) {
  require(n >= 1, "adhoc_zero_density: n must be >= 1");
  require(theta >= 0.0, "adhoc_zero_density: theta must be >= 0");
  return n * std::exp(-n * theta);
}

double gamma_pdf(double rho, const GammaDist& dist) {
  dist.validate();
  require(rho >= 0.0, "gamma_pdf: rho must be >= 0");
  if (rho == 0.0) {
    if (dist.a < 1.0) return kInf;
    if (dist.a == 1.0) return dist.b;
    return 0.0;
  }
  return std::exp(dist.a * std::log(dist.b) + (dist.a - 1.0) * std::log(rho) - dist.b * rho -
                  log_gamma(dist.a));
}

double gamma_moment(const GammaDist& dist, int r) {
  dist.validate();
  require(r >= 0, "gamma_moment: order must be >= 0");
  if (r == 0) return 1.0;
  return std::exp(log_rising_factorial(dist.a, static_cast<Count>(r)) - r * std::log(dist.b));
}

double zpoisson_pmf(Count x, const ZPoissonParams& params) {
  params.validate();
  const double p0 = params.p0();
  if (x == 0) return params.psi * p0;
  // (1 - psi P0) / (1 - P0), with 1 - P0 = -expm1(-theta).
  const double weight = (1.0 - params.psi * p0) / -std::expm1(-params.theta);
  return std::max(weight, 0.0) * poisson_pmf(x, params.theta);
}

Moments zpoisson_moments(const ZPoissonParams& params) {
  params.validate();
  const double p0 = params.p0();
  const double one_minus_p0 = -std::expm1(-params.theta);
  const double w = (1.0 - params.psi * p0) / one_minus_p0;
  const double mean = w * params.theta;
  const double dispersion = 1.0 + (params.psi - 1.0) * p0 / one_minus_p0 * params.theta;
  return {mean, dispersion * mean, dispersion};
}

ZPoissonParams zpoisson_from_moments(double mean, double dispersion) {
  require(mean > 0.0, "zpoisson_from_moments: mean must be > 0");
  require(dispersion >= 1.0, "zpoisson_from_moments: dispersion must be >= 1");
  // mean = w theta and dispersion = 1 + (1 - w) theta.
  const double theta = mean + dispersion - 1.0;
  const double w = mean / theta;
  const double p0 = std::exp(-theta);
  const double psi = (1.0 - w * (1.0 - p0)) / p0;
  return {theta, psi};
}

double nb_log_pmf(Count x, const NBParams& params) {
  params.validate();
  const double xd = static_cast<double>(x);
  const double a = params.a;
  const double theta = params.theta;
  // theta^x (a)_x / (x! a^x (1 + theta/a)^(x+a))
  return xd * std::log(theta) + log_rising_factorial(a, x) - log_gamma(xd + 1.0) - xd * std::log(a) -
         (xd + a) * std::log1p(theta / a);
}

double nb_pmf(Count x, const NBParams& params) { return std::exp(nb_log_pmf(x, params)); }

double nb_dispersion(const NBParams& params) {
  params.validate();
  return 1.0 + params.theta / params.a;
}

Moments nb_moments(const NBParams& params) {
  const double d = nb_dispersion(params);
  return {params.theta, params.theta * d, d};
}

double expected_theta(const DetectorConfig& cfg) {
  cfg.validate();
  return cfg.rate() * cfg.t;
}

double rate_variance(double rho, double t, double delta_x) {
  require(rho >= 0.0, "rate_variance: rho must be >= 0");
  require(t > 0.0, "rate_variance: t must be > 0");
  require(delta_x > 0.0, "rate_variance: dispersion must be > 0");
  return delta_x * rho / t;
}

double expectation_over_poisson(const std::function<double(Count)>& f, double theta,
                                const ToleranceConfig& tol) {
  require(theta >= 0.0, "expectation_over_poisson: theta must be >= 0");
  tol.validate();
  if (theta == 0.0) return f(0);

  const Count limit = static_cast<Count>(std::ceil(10.0 * (theta + 10.0)));
  // Neumaier-compensated sum.
  double sum = 0.0;
  double comp = 0.0;
  for (Count k = 0; k <= limit; ++k) {
    const double term = f(k) * poisson_pmf(k, theta);
    const double s = sum + term;
    comp += (std::abs(sum) >= std::abs(term)) ? (sum - s) + term : (term - s) + sum;
    sum = s;

    const double kd = static_cast<double>(k);
    if (kd + 2.0 > theta + 1.0) {
      // P(X > k) <= P(k+1) (k+2)/(k+2-theta); |f| on the tail is sampled
      // just past k and at twice k, beyond which the Poisson mass is
      // negligible for polynomially growing f.
      const double tail_mass = poisson_pmf(k + 1, theta) * (kd + 2.0) / (kd + 2.0 - theta);
      const double f_tail =
          std::max({std::abs(f(k + 1)), std::abs(f(k + 2)), std::abs(f(2 * k + 2))});
      if (f_tail * tail_mass < tol.abs_tol) return sum + comp;
    }
  }
  throw ConvergenceError("expectation_over_poisson: truncation bound not met", 0.0,
                         static_cast<double>(limit));
}

}  // namespace zcd
