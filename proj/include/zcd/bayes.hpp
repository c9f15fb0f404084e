#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "zcd/classical.hpp"
#include "zcd/distributions.hpp"
#include "zcd/numerics.hpp"

namespace zcd {

/// Bayes-Laplace (uniform), Jeffreys-Jaynes (1/rho), Jeffreys rule
/// (rho^-1/2), maximum entropy (t e^{-rho t}), or a user Gamma form.
enum class PriorKind { BL, JJ, JR, ME, Custom };

std::string_view to_string(PriorKind kind);

/// Every prior is the kernel rho^(a-1) e^(-b rho) of a Gamma density.
struct PriorSpec {
  PriorKind kind;
  double a;
  double b;

  std::string name() const;
};

/// Gamma-form parameters of a named prior. t is only used by ME (b = t).
PriorSpec prior_params(PriorKind kind, double t = 1.0);
PriorSpec custom_prior(double a, double b);

enum class PriorScaling {
  Raw,
  /// Rescaled so the curve passes through (1, 1); display only.
  ThroughUnitPoint,
};

/// Unnormalized prior density (ME is normalized). JJ and JR diverge at 0
/// and throw DomainError there.
double prior_density(const PriorSpec& prior, double rho, double t = 1.0,
                     PriorScaling scaling = PriorScaling::Raw);
double prior_density(PriorKind kind, double rho, double t = 1.0,
                     PriorScaling scaling = PriorScaling::Raw);

/// The evidence integral diverges: no posterior exists for this data and
/// prior (JJ with S = 0 is the canonical case).
class ImproperPosteriorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PosteriorSource {
  Count total;
  int n;
  double t;
  PriorSpec prior;
};

/// Gamma(A = S + a, B = n t + b) posterior for the rate.
struct GammaPosterior {
  double A;
  double B;
  PosteriorSource source;

  double mean() const { return A / B; }
  double variance() const { return A / (B * B); }
  double density(double rho) const;
  GammaDist as_gamma() const { return {A, B}; }
};

GammaPosterior posterior(const CountData& data, const PriorSpec& prior);
GammaPosterior posterior(Count total, int n, double t, const PriorSpec& prior);

/// (S+a)_r / (nt+b)^r
double posterior_moment(const GammaPosterior& post, int r);

struct UpperLimitResult {
  double cl;
  double u_rho;
  double u_theta;
  double solver_residual;
};

/// Solves CL = P(A, B U) for the rate upper limit U.
UpperLimitResult upper_limit(const GammaPosterior& post, double cl, const ToleranceConfig& tol = {});

/// Fisher information n / rho of the n-measurement Poisson likelihood.
double fisher_information(int n, double rho);

struct JJDivergence {
  double alpha;
  /// Truncated evidence int_eps^inf e^-theta / theta d theta = E1(eps).
  double evidence;
  /// -gamma_E - ln(eps), the small-eps form of the evidence.
  double denominator;
};

/// alpha = E1(U + eps) / (-gamma_E - ln eps): the significance the JJ prior
/// would assign at S = 0 if its evidence were cut off at eps.
JJDivergence jj_divergence_demo(double epsilon, double u_theta);

double differential_entropy_gamma(const GammaDist& dist, const ToleranceConfig& tol = {});

}  // namespace zcd
