#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace zcd {

/// Thrown when an argument lies outside a function's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Root finder ran out of iterations. Carries the last bracket [lo, hi].
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double lo, double hi)
      : std::runtime_error(what), lo_(lo), hi_(hi) {}
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

/// Adaptive quadrature exhausted its panel budget (or met a non-finite
/// integrand value). Carries the partial sum and its error estimate.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double partial, double error)
      : std::runtime_error(what), partial_(partial), error_(error) {}
  double partial_sum() const noexcept { return partial_; }
  double error_estimate() const noexcept { return error_; }

 private:
  double partial_;
  double error_;
};

struct ToleranceConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_iter = 200;
  double quad_rel_tol = 1e-9;
  int quad_max_panels = 4000;

  /// Throws DomainError unless every tolerance is positive and the
  /// iteration budgets are at least one.
  void validate() const;
};

/// Knobs that change how a quadrature reaches its answer without changing
/// the answer: initial panel split and the scale of the tail map
/// x = lower + scale * u / (1 - u). Two different settings give two
/// independent evaluations of the same integral.
struct QuadratureOptions {
  int initial_panels = 1;
  double tail_scale = 1.0;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int panels = 0;
};

using RealFn = std::function<double(double)>;

double log_gamma(double z);

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
double reg_inc_gamma_lower(double a, double x);

/// Q(a, x) = 1 - P(a, x), computed from whichever branch of the
/// series / continued-fraction split avoids cancellation.
double reg_inc_gamma_upper(double a, double x);

/// Solves P(a, x) = p for x. Brackets by doubling/halving from x = 1, then
/// refines with safeguarded Newton steps.
double inv_reg_inc_gamma_lower(double a, double p, const ToleranceConfig& tol = {});

/// Exponential integral E1(x) = int_x^inf e^-u / u du.
double exp_integral_e1(double x);

/// Global adaptive Gauss-Kronrod (7/15) on a finite interval.
QuadResult integrate_detailed(const RealFn& f, double a, double b,
                              const ToleranceConfig& tol = {},
                              const QuadratureOptions& opts = {});

double integrate(const RealFn& f, double a, double b, const ToleranceConfig& tol = {},
                 const QuadratureOptions& opts = {});

/// int_lower^inf f(x) dx through the map x = lower + s*u/(1-u), u in [0, 1).
QuadResult integrate_semi_infinite_detailed(const RealFn& f, double lower,
                                            const ToleranceConfig& tol = {},
                                            const QuadratureOptions& opts = {});

double integrate_semi_infinite(const RealFn& f, double lower, const ToleranceConfig& tol = {},
                               const QuadratureOptions& opts = {});

}  // namespace zcd
