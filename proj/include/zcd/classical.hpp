#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "zcd/distributions.hpp"

namespace zcd {

/// n equal-length measurements of duration t each.
class CountData {
 public:
  CountData(std::vector<Count> counts, double t);

  /// A single measurement of duration t with total count S.
  static CountData single(Count total, double t) { return CountData({total}, t); }

  std::span<const Count> counts() const { return counts_; }
  double t() const { return t_; }
  int n() const { return static_cast<int>(counts_.size()); }
  /// Sufficient statistic S = sum of counts.
  Count total() const { return total_; }
  double mean() const { return static_cast<double>(total_) / n(); }

 private:
  std::vector<Count> counts_;
  double t_;
  Count total_ = 0;
};

struct SufficientStatistic {
  Count total;
  double mean;
};

struct MLReport {
  double theta_hat = 0.0;
  double rho_hat = 0.0;
  double var_counts = 0.0;
  double var_mean = 0.0;
  double var_rate = 0.0;
  /// S == 0: every estimate, including the variances, collapses to zero.
  bool pathological = false;
};

struct SimpleProbabilityEstimates {
  double mean_theta;
  double var_theta;
  double mean_rho;
  double var_rho;
};

struct SimpleProbabilityLimit {
  double u_theta;
  double u_rho;
};

struct OneCountLimit {
  double rate;
  /// Always false: the 1-count limit has no confidence level attached.
  bool statistical = false;
};

SufficientStatistic sufficient_statistic(const CountData& data);
MLReport ml_estimates(const CountData& data);

/// S ln(theta) - n theta. Returns -inf for theta == 0 with S > 0.
double log_likelihood(double theta, const CountData& data);

SimpleProbabilityEstimates simple_probability_estimates(int n, double t);
/// U_theta = ln(1/alpha) / n, U_rho = U_theta / t.
SimpleProbabilityLimit simple_probability_upper_limit(int n, double t, double alpha);

/// 1 / (t * calibration): the rate that a single count would represent.
OneCountLimit one_count_upper_limit(double t, double calibration);

}  // namespace zcd
