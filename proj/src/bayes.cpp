#include "zcd/bayes.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace zcd {

std::string_view to_string(PriorKind kind) {
  switch (kind) {
    case PriorKind::BL: return "BL";
    case PriorKind::JJ: return "JJ";
    case PriorKind::JR: return "JR";
    case PriorKind::ME: return "ME";
    case PriorKind::Custom: return "Custom";
  }
  return "?";
}

std::string PriorSpec::name() const {
  if (kind != PriorKind::Custom) return std::string(to_string(kind));
  std::ostringstream os;
  os << "Custom(" << a << "," << b << ")";
  return os.str();
}

PriorSpec prior_params(PriorKind kind, double t) {
  switch (kind) {
    case PriorKind::BL: return {kind, 1.0, 0.0};
    case PriorKind::JJ: return {kind, 0.0, 0.0};
    case PriorKind::JR: return {kind, 0.5, 0.0};
    case PriorKind::ME:
      if (!(t > 0.0)) throw DomainError("ME prior: t must be > 0");
      return {kind, 1.0, t};
    case PriorKind::Custom: break;
  }
  throw DomainError("prior_params: custom priors need explicit (a, b); use custom_prior");
}

PriorSpec custom_prior(double a, double b) {
  if (!(a >= 0.0 && b >= 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("custom prior: a and b must be finite and >= 0");
  }
  return {PriorKind::Custom, a, b};
}

namespace {

double raw_prior(const PriorSpec& prior, double rho, double t) {
  switch (prior.kind) {
    case PriorKind::BL: return 1.0;
    case PriorKind::JJ: return 1.0 / rho;
    case PriorKind::JR: return 1.0 / std::sqrt(rho);
    case PriorKind::ME: return t * std::exp(-rho * t);
    case PriorKind::Custom:
      if (rho == 0.0) {
        if (prior.a < 1.0) return std::numeric_limits<double>::infinity();
        return prior.a == 1.0 ? 1.0 : 0.0;
      }
      return std::exp((prior.a - 1.0) * std::log(rho) - prior.b * rho);
  }
  return 0.0;
}

}  // namespace

double prior_density(const PriorSpec& prior, double rho, double t, PriorScaling scaling) {
  if (!(rho >= 0.0)) throw DomainError("prior_density: rho must be >= 0");
  if (rho == 0.0 && (prior.kind == PriorKind::JJ || prior.kind == PriorKind::JR)) {
    throw DomainError("prior_density: JJ and JR priors diverge at rho = 0");
  }
  if (prior.kind == PriorKind::ME && !(t > 0.0)) throw DomainError("prior_density: ME needs t > 0");
  const double value = raw_prior(prior, rho, t);
  if (scaling == PriorScaling::Raw) return value;
  return value / raw_prior(prior, 1.0, t);
}

double prior_density(PriorKind kind, double rho, double t, PriorScaling scaling) {
  return prior_density(prior_params(kind, t > 0.0 ? t : 1.0), rho, t, scaling);
}

double GammaPosterior::density(double rho) const { return gamma_pdf(rho, as_gamma()); }

GammaPosterior posterior(Count total, int n, double t, const PriorSpec& prior) {
  if (n < 1) throw DomainError("posterior: n must be >= 1");
  if (!(t > 0.0)) throw DomainError("posterior: t must be > 0");
  if (!(prior.a >= 0.0 && prior.b >= 0.0)) throw DomainError("posterior: prior parameters must be >= 0");
  const double A = static_cast<double>(total) + prior.a;
  const double B = n * t + prior.b;
  if (!(A > 0.0)) {
    throw ImproperPosteriorError(
        prior.name() + " prior with S = 0 gives A = S + a = 0: the evidence integral "
        "int_0^inf rho^-1 e^(-n t rho) d rho diverges at rho = 0, so the posterior cannot be "
        "normalized. At least one count is required for this prior.");
  }
  return {A, B, {total, n, t, prior}};
}

GammaPosterior posterior(const CountData& data, const PriorSpec& prior) {
  return posterior(data.total(), data.n(), data.t(), prior);
}

double posterior_moment(const GammaPosterior& post, int r) { return gamma_moment(post.as_gamma(), r); }

UpperLimitResult upper_limit(const GammaPosterior& post, double cl, const ToleranceConfig& tol) {
  if (!(cl > 0.0 && cl < 1.0)) throw DomainError("upper_limit: CL must lie in (0, 1)");
  const double x = inv_reg_inc_gamma_lower(post.A, cl, tol);
  const double u_rho = x / post.B;
  const double residual = std::abs(reg_inc_gamma_lower(post.A, post.B * u_rho) - cl);
  return {cl, u_rho, u_rho * post.source.t, residual};
}

double fisher_information(int n, double rho) {
  if (n < 1) throw DomainError("fisher_information: n must be >= 1");
  if (!(rho > 0.0)) throw DomainError("fisher_information: rho must be > 0");
  return n / rho;
}

JJDivergence jj_divergence_demo(double epsilon, double u_theta) {
  if (!(epsilon > 0.0)) throw DomainError("jj_divergence_demo: epsilon must be > 0");
  if (!(u_theta > 0.0)) throw DomainError("jj_divergence_demo: U must be > 0");
  const double denominator = -std::numbers::egamma - std::log(epsilon);
  if (!(denominator > 0.0)) throw DomainError("jj_divergence_demo: epsilon too large, -gamma - ln(eps) <= 0");
  return {exp_integral_e1(u_theta + epsilon) / denominator, exp_integral_e1(epsilon), denominator};
}

double differential_entropy_gamma(const GammaDist& dist, const ToleranceConfig& tol) {
  dist.validate();
  const double log_norm = dist.a * std::log(dist.b) - log_gamma(dist.a);
  const RealFn integrand = [&](double rho) {
    if (rho <= 0.0) return 0.0;
    const double lp = log_norm + (dist.a - 1.0) * std::log(rho) - dist.b * rho;
    const double p = std::exp(lp);
    return p == 0.0 ? 0.0 : -p * lp;
  };
  return integrate_semi_infinite(integrand, 0.0, tol);
}

}  // namespace zcd
