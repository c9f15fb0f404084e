#pragma once

#include <vector>

#include "zcd/distributions.hpp"
#include "zcd/exec.hpp"
#include "zcd/numerics.hpp"

namespace zcd {

/// Numerically marginalized posterior for theta against the Poisson-ME
/// posterior 2 (2 theta)^x e^{-2 theta} / x!.
struct MarginalComparison {
  Count x = 0;
  std::vector<double> theta_grid;
  std::vector<double> numeric_density;
  std::vector<double> claimed_density;
  /// Trapezoid integral of |numeric - claimed| over the grid.
  double l1_distance = 0.0;
  double linf_distance = 0.0;
  /// |int numeric(theta) d theta - 1|, evaluated by an independent route.
  double numeric_norm_residual = 0.0;
};

/// Poisson likelihood + ME prior posterior in counts space (n = t = 1).
double poisson_me_posterior(double theta, Count x);

/// Uniform grid on [0, x/2 + 10] with `points` nodes.
std::vector<double> default_theta_grid(Count x, int points = 401);

/// Closed-form joint posterior of (theta, psi) under unit exponential
/// priors on both. psi ranges over (0, inf) here, wider than the pmf's
/// own validity range, so the factor (1 - psi P0) can go negative.
double zpoisson_joint_posterior(double theta, double psi, Count x);

/// psi-quadrature of the joint posterior at one theta.
double zpoisson_marginal_density(double theta, Count x, const ToleranceConfig& tol = {},
                                 const QuadratureOptions& opts = {});

MarginalComparison zpoisson_marginal(Count x, const std::vector<double>& theta_grid,
                                     const ToleranceConfig& tol = {}, Exec exec = Exec::Parallel);

/// NB(x | theta, a) e^{-theta} e^{-a}: the unnormalized joint posterior.
/// Finite on the a -> 0 boundary.
double nb_joint_density(double theta, double a, Count x);

struct NbMarginalOptions {
  /// Restrict the shape to a >= a_min (the exponential prior is
  /// conditioned on that range). 0 means no restriction.
  double a_min = 0.0;
  QuadratureOptions quad{};
  /// Quadrature settings for the independent normalization check.
  QuadratureOptions check_quad{3, 2.5};
};

/// a-quadrature of the joint at one theta, unnormalized.
double nb_marginal_unnormalized(double theta, Count x, const ToleranceConfig& tol = {},
                                const NbMarginalOptions& opts = {});

/// For each theta: a-quadrature of the joint; normalization over theta by a
/// second quadrature. The residual swaps the integration order. The
/// distance to the Poisson-ME posterior is reported, not asserted.
MarginalComparison nb_marginal_numeric(Count x, const std::vector<double>& theta_grid,
                                       const ToleranceConfig& tol = {}, const NbMarginalOptions& opts = {},
                                       Exec exec = Exec::Parallel);

}  // namespace zcd
