#pragma once

#include <string>
#include <vector>

#include "zcd/bayes.hpp"

namespace zcd {

// Everything here works in counts space (t = 1), so the ME prior is
// (a, b) = (1, 1) and theta_B = (S + a) / (n + b).

/// Which theta enters the bias and variance terms: the true value, or the
/// ML plug-in S/n used for tabulating a single observed S.
enum class ThetaMode { PlugIn, TrueTheta };

struct RiskReport {
  PriorSpec prior;
  ThetaMode mode;
  double theta;  // S/n in PlugIn mode, the supplied value otherwise
  double mean_estimate;
  double bias_mean;
  double risk_mean;
  double var_estimate;
  double bias_var;
  double risk_var;
};

struct ExcludedPrior {
  PriorSpec prior;
  std::string reason;
};

struct AdmissibilityRanking {
  /// Ordered by (risk_mean, risk_var), lowest first.
  std::vector<RiskReport> ranked;
  std::vector<ExcludedPrior> excluded;
  std::string verdict;
};

double bayes_mean_counts(Count total, int n, double a, double b);
/// (a - b theta) / (n + b); theta is S/n in PlugIn mode.
double bias_mean(double total_or_theta, int n, double a, double b, ThetaMode mode);
/// n theta / (n + b)^2
double sampling_variance_mean(double theta, int n, double b);
/// Plug-in risk (S + (a - b S/n)^2) / (n + b)^2.
double risk_mean(Count total, int n, double a, double b);
/// ((a - b theta)^2 + n theta) / (n + b)^2
double risk_mean_true(double theta, int n, double a, double b);

double bayes_var(Count total, int n, double a, double b);
double bias_var(Count total, int n, double a, double b);
double risk_var(Count total, int n, double a, double b);

/// The mean-estimator columns honour `mode`; the variance-estimator
/// columns are always plug-in, since they are only defined that way.
RiskReport risk_report(Count total, int n, const PriorSpec& prior, ThetaMode mode = ThetaMode::PlugIn,
                       double true_theta = 0.0);

/// BL, JR and ME always; JJ only when S >= 1.
AdmissibilityRanking compare_priors(Count total, int n);

struct RiskOracleReport {
  double expected_mean;        // E[theta_B] by summation
  double expected_mean_closed;
  double variance;             // Var(theta_B) by summation
  double variance_closed;
  double risk;                 // E[(theta_B - theta)^2] by summation
  double risk_closed;
  /// |risk - (bias^2 + variance)| with all three terms from the summation.
  double decomposition_gap;
  double max_discrepancy;
};

/// Checks the closed-form bias, variance and risk against direct summation
/// over the sampling distribution. S is drawn as one Poisson(n theta)
/// variate, which is exact by sufficiency.
RiskOracleReport validate_risk_oracle(double theta, int n, const PriorSpec& prior,
                                      const ToleranceConfig& tol = {});

}  // namespace zcd
