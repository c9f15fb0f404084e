#pragma once

#include <cstdint>
#include <functional>

#include "zcd/numerics.hpp"

namespace zcd {

using Count = std::uint64_t;

struct PoissonParams {
  double theta;
};

/// Steady-state rate observed for a duration t, repeated n times.
struct RateModel {
  double rho;
  double t;
  int n = 1;

  double theta() const { return rho * t; }
};

/// Radioactive source seen by a detector: N atoms, decay constant lambda,
/// efficiency epsilon, counting time t.
struct DetectorConfig {
  double n_atoms;
  double decay_const;
  double efficiency;
  double t;

  void validate() const;
  /// Per-atom probability of a count, lambda * t * epsilon.
  double count_probability() const { return decay_const * t * efficiency; }
  double rate() const { return n_atoms * decay_const * efficiency; }
  /// The Poisson approximation assumes a small per-atom count probability.
  bool poisson_regime_warning() const { return count_probability() > 0.1; }
};

struct GammaDist {
  double a;  // shape
  double b;  // rate

  void validate() const;
  double mean() const { return a / b; }
  double variance() const { return a / (b * b); }
};

/// Zero-modified Poisson: P(0) = psi * P0, P(j) = (1 - psi*P0)/(1 - P0) * Pj.
struct ZPoissonParams {
  double theta;
  double psi;

  /// Accepts 1 <= psi <= 1/P0 (closed range, psi*P0 == 1 is the all-zero
  /// degenerate case).
  void validate() const;
  double p0() const;
};

struct NBParams {
  double theta;  // mean
  double a;      // shape

  void validate() const;
};

struct OverdispersionModel {
  double delta_x;
  double v;

  /// delta_x = 1 + mu2 * v^2 for a process with count variance mu2 and an
  /// excess fluctuation of relative size v.
  static OverdispersionModel from_variation(double mu2, double v);
};

struct Moments {
  double mean;
  double variance;
  double dispersion;
};

/// log of the ascending factorial (a)_x = a (a+1) ... (a+x-1).
double log_rising_factorial(double a, Count x);

double poisson_log_pmf(Count x, double theta);
double poisson_pmf(Count x, double theta);
/// (theta, theta, 1); the dispersion stays 1 at theta = 0 by convention.
Moments poisson_moments(double theta);
double prob_all_zero(int n, double theta);
/// n e^{-n theta}: the all-zero probability read as a density in theta.
double adhoc_zero_density(double theta, int n);

double gamma_pdf(double rho, const GammaDist& dist);
double gamma_moment(const GammaDist& dist, int r);

double zpoisson_pmf(Count x, const ZPoissonParams& params);
Moments zpoisson_moments(const ZPoissonParams& params);
/// z-Poisson with the requested mean and dispersion (> 1). Solves both
/// moment equations: theta = mean + dispersion - 1.
ZPoissonParams zpoisson_from_moments(double mean, double dispersion);

double nb_log_pmf(Count x, const NBParams& params);
double nb_pmf(Count x, const NBParams& params);
double nb_dispersion(const NBParams& params);
Moments nb_moments(const NBParams& params);

double expected_theta(const DetectorConfig& cfg);
double rate_variance(double rho, double t, double delta_x = 1.0);

/// sum_x f(x) P(x | theta), truncated once the tail estimate drops below
/// tol.abs_tol. Throws ConvergenceError if that has not happened by
/// x = 10 (theta + 10).
double expectation_over_poisson(const std::function<double(Count)>& f, double theta,
                                const ToleranceConfig& tol = {});

}  // namespace zcd
