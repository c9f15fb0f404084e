#include "zcd/decision.hpp"

#include <algorithm>
#include <cmath>

namespace zcd {

namespace {

void check_counts_args(int n, double a, double b) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (!(a >= 0.0 && b >= 0.0)) throw DomainError("prior parameters must be >= 0");
}

}  // namespace

double bayes_mean_counts(Count total, int n, double a, double b) {
  check_counts_args(n, a, b);
  const double s = static_cast<double>(total);
  if (!(s + a > 0.0)) throw ImproperPosteriorError("theta_B undefined: S + a = 0 (improper posterior)");
  return (s + a) / (n + b);
}

double bias_mean(double total_or_theta, int n, double a, double b, ThetaMode mode) {
  check_counts_args(n, a, b);
  const double theta = mode == ThetaMode::PlugIn ? total_or_theta / n : total_or_theta;
  return (a - b * theta) / (n + b);
}

double sampling_variance_mean(double theta, int n, double b) {
  check_counts_args(n, 0.0, b);
  if (!(theta >= 0.0)) throw DomainError("theta must be >= 0");
  return n * theta / ((n + b) * (n + b));
}

double risk_mean(Count total, int n, double a, double b) {
  check_counts_args(n, a, b);
  const double s = static_cast<double>(total);
  const double shift = a - b * s / n;
  return (s + shift * shift) / ((n + b) * (n + b));
}

double risk_mean_true(double theta, int n, double a, double b) {
  check_counts_args(n, a, b);
  if (!(theta >= 0.0)) throw DomainError("theta must be >= 0");
  const double shift = a - b * theta;
  return (shift * shift + n * theta) / ((n + b) * (n + b));
}

double bayes_var(Count total, int n, double a, double b) {
  check_counts_args(n, a, b);
  const double nb = n + b;
  return (static_cast<double>(total) + a) / (nb * nb);
}

double bias_var(Count total, int n, double a, double b) {
  return bayes_var(total, n, a, b) - static_cast<double>(total) / n;
}

double risk_var(Count total, int n, double a, double b) {
  const double bias = bias_var(total, n, a, b);
  const double nb = n + b;
  return bias * bias + static_cast<double>(total) / (nb * nb * nb * nb);
}

RiskReport risk_report(Count total, int n, const PriorSpec& prior, ThetaMode mode, double true_theta) {
  const double a = prior.a;
  const double b = prior.b;
  RiskReport r{prior, mode, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  r.mean_estimate = bayes_mean_counts(total, n, a, b);
  if (mode == ThetaMode::PlugIn) {
    r.theta = static_cast<double>(total) / n;
    r.bias_mean = bias_mean(static_cast<double>(total), n, a, b, mode);
    r.risk_mean = risk_mean(total, n, a, b);
  } else {
    r.theta = true_theta;
    r.bias_mean = bias_mean(true_theta, n, a, b, mode);
    r.risk_mean = risk_mean_true(true_theta, n, a, b);
  }
  r.var_estimate = bayes_var(total, n, a, b);
  r.bias_var = bias_var(total, n, a, b);
  r.risk_var = risk_var(total, n, a, b);
  return r;
}

AdmissibilityRanking compare_priors(Count total, int n) {
  AdmissibilityRanking out;
  for (PriorKind kind : {PriorKind::BL, PriorKind::JJ, PriorKind::JR, PriorKind::ME}) {
    const PriorSpec prior = prior_params(kind, 1.0);
    if (static_cast<double>(total) + prior.a <= 0.0) {
      out.excluded.push_back({prior, "improper"});
      continue;
    }
    out.ranked.push_back(risk_report(total, n, prior));
  }
  std::stable_sort(out.ranked.begin(), out.ranked.end(), [](const RiskReport& l, const RiskReport& r) {
    if (l.risk_mean != r.risk_mean) return l.risk_mean < r.risk_mean;
    return l.risk_var < r.risk_var;
  });
  const RiskReport& best = out.ranked.front();
  out.verdict = best.prior.name() + " is the most admissible: lowest risk of the mean";
  if (out.ranked.size() > 1 && out.ranked[1].risk_mean == best.risk_mean) {
    out.verdict += " (tied with " + out.ranked[1].prior.name() + ", broken by the lower risk of the variance)";
  }
  return out;
}

RiskOracleReport validate_risk_oracle(double theta, int n, const PriorSpec& prior, const ToleranceConfig& tol) {
  check_counts_args(n, prior.a, prior.b);
  if (!(theta >= 0.0)) throw DomainError("theta must be >= 0");
  const double a = prior.a;
  const double denom = n + prior.b;
  const double lambda = n * theta;  // S ~ Poisson(n theta)
  auto estimate = [&](Count s) { return (static_cast<double>(s) + a) / denom; };

  RiskOracleReport r{};
  r.expected_mean_closed = (lambda + a) / denom;
  r.variance_closed = sampling_variance_mean(theta, n, prior.b);
  r.risk_closed = risk_mean_true(theta, n, a, prior.b);

  r.expected_mean = expectation_over_poisson(estimate, lambda, tol);
  r.variance = expectation_over_poisson(
      [&](Count s) {
        const double d = estimate(s) - r.expected_mean;
        return d * d;
      },
      lambda, tol);
  r.risk = expectation_over_poisson(
      [&](Count s) {
        const double d = estimate(s) - theta;
        return d * d;
      },
      lambda, tol);

  const double bias = r.expected_mean - theta;
  r.decomposition_gap = std::abs(r.risk - (bias * bias + r.variance));
  r.max_discrepancy = std::max({std::abs(r.expected_mean - r.expected_mean_closed),
                                std::abs(r.variance - r.variance_closed), std::abs(r.risk - r.risk_closed)});
  return r;
}

}  // namespace zcd
