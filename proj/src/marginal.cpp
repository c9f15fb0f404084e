#include "zcd/marginal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "parallel.hpp"

namespace zcd {

namespace {

void fill_distances(MarginalComparison& out) {
  const auto& g = out.theta_grid;
  out.claimed_density.resize(g.size());
  out.linf_distance = 0.0;
  out.l1_distance = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    out.claimed_density[i] = poisson_me_posterior(g[i], out.x);
    const double d = std::abs(out.numeric_density[i] - out.claimed_density[i]);
    out.linf_distance = std::max(out.linf_distance, d);
    if (i > 0) {
      const double prev = std::abs(out.numeric_density[i - 1] - out.claimed_density[i - 1]);
      out.l1_distance += 0.5 * (g[i] - g[i - 1]) * (d + prev);
    }
  }
}

void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw DomainError("theta grid must not be empty");
  if (grid.front() < 0.0) throw DomainError("theta grid must be nonnegative");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw DomainError("theta grid must be strictly increasing");
  }
}

// NB(x | theta, a) at theta = 0 is a point mass at x = 0.
double nb_pmf_or_limit(Count x, double theta, double a) {
  if (theta == 0.0) return x == 0 ? 1.0 : 0.0;
  if (a == 0.0) return x == 0 ? 1.0 : 0.0;
  return nb_pmf(x, {theta, a});
}

}  // namespace

double poisson_me_posterior(double theta, Count x) {
  if (!(theta >= 0.0)) throw DomainError("theta must be >= 0");
  if (theta == 0.0) return x == 0 ? 2.0 : 0.0;
  const double xd = static_cast<double>(x);
  return std::exp(std::numbers::ln2 + xd * std::log(2.0 * theta) - 2.0 * theta - log_gamma(xd + 1.0));
}

std::vector<double> default_theta_grid(Count x, int points) {
  if (points < 2) throw DomainError("theta grid needs at least 2 points");
  const double theta_max = static_cast<double>(x) / 2.0 + 10.0;
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = theta_max * i / (points - 1);
  return grid;
}

double zpoisson_joint_posterior(double theta, double psi, Count x) {
  if (!(theta >= 0.0)) throw DomainError("theta must be >= 0");
  if (!(psi >= 0.0)) throw DomainError("psi must be >= 0");
  const double p0 = std::exp(-theta);
  if (x == 0) return 2.0 * psi * p0 * std::exp(-theta - psi);

  // P_j / (1 - P0), with its theta -> 0 limit (1 for j = 1, 0 beyond).
  double ratio;
  if (theta == 0.0) {
    ratio = x == 1 ? 1.0 : 0.0;
  } else {
    ratio = poisson_pmf(x, theta) / -std::expm1(-theta);
  }
  const double scale = std::exp((static_cast<double>(x) + 1.0) * std::numbers::ln2 - theta - psi);
  return (1.0 - psi * p0) * ratio * scale;
}

double zpoisson_marginal_density(double theta, Count x, const ToleranceConfig& tol,
                                 const QuadratureOptions& opts) {
  return integrate_semi_infinite([&](double psi) { return zpoisson_joint_posterior(theta, psi, x); }, 0.0, tol,
                                 opts);
}

MarginalComparison zpoisson_marginal(Count x, const std::vector<double>& theta_grid, const ToleranceConfig& tol,
                                     Exec exec) {
  check_grid(theta_grid);
  MarginalComparison out;
  out.x = x;
  out.theta_grid = theta_grid;
  out.numeric_density.resize(theta_grid.size());
  detail::for_each_index(theta_grid.size(), exec, [&](std::size_t i) {
    out.numeric_density[i] = zpoisson_marginal_density(theta_grid[i], x, tol);
  });

  // Independent normalization: nested quadrature over the whole half-line
  // with a different panel layout.
  const QuadratureOptions check{3, 2.5};
  const double mass = integrate_semi_infinite(
      [&](double theta) { return zpoisson_marginal_density(theta, x, tol, check); }, 0.0, tol, check);
  out.numeric_norm_residual = std::abs(mass - 1.0);
  fill_distances(out);
  return out;
}

double nb_joint_density(double theta, double a, Count x) {
  if (!(theta >= 0.0)) throw DomainError("theta must be >= 0");
  if (!(a >= 0.0)) throw DomainError("a must be >= 0");
  const double pmf = nb_pmf_or_limit(x, theta, a);
  if (pmf == 0.0) return 0.0;
  return pmf * std::exp(-theta - a);
}

double nb_marginal_unnormalized(double theta, Count x, const ToleranceConfig& tol, const NbMarginalOptions& opts) {
  if (!(opts.a_min >= 0.0)) throw DomainError("a_min must be >= 0");
  if (theta == 0.0) return x == 0 ? 1.0 : 0.0;
  const double a_min = opts.a_min;
  // With a_min > 0 the prior is e^{-(a - a_min)} on [a_min, inf).
  const double inner = integrate_semi_infinite(
      [&](double s) {
        const double pmf = nb_pmf_or_limit(x, theta, a_min + s);
        return pmf == 0.0 ? 0.0 : pmf * std::exp(-s);
      },
      0.0, tol, opts.quad);
  return inner * std::exp(-theta);
}

MarginalComparison nb_marginal_numeric(Count x, const std::vector<double>& theta_grid, const ToleranceConfig& tol,
                                       const NbMarginalOptions& opts, Exec exec) {
  check_grid(theta_grid);
  MarginalComparison out;
  out.x = x;
  out.theta_grid = theta_grid;

  // Normalization: theta outer, a inner.
  const double z = integrate_semi_infinite(
      [&](double theta) { return nb_marginal_unnormalized(theta, x, tol, opts); }, 0.0, tol, opts.quad);

  out.numeric_density.resize(theta_grid.size());
  detail::for_each_index(theta_grid.size(), exec, [&](std::size_t i) {
    out.numeric_density[i] = nb_marginal_unnormalized(theta_grid[i], x, tol, opts) / z;
  });

  // Same mass with the order swapped: a outer, theta inner.
  const double a_min = opts.a_min;
  const double z_swapped = integrate_semi_infinite(
      [&](double s) {
        const double a = a_min + s;
        const double inner = integrate_semi_infinite(
            [&](double theta) {
              const double pmf = nb_pmf_or_limit(x, theta, a);
              return pmf == 0.0 ? 0.0 : pmf * std::exp(-theta);
            },
            0.0, tol, opts.check_quad);
        return inner * std::exp(-s);
      },
      0.0, tol, opts.check_quad);
  out.numeric_norm_residual = std::abs(z_swapped / z - 1.0);
  fill_distances(out);
  return out;
}

}  // namespace zcd
