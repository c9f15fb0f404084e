#include "zcd/classical.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace zcd {

CountData::CountData(std::vector<Count> counts, double t) : counts_(std::move(counts)), t_(t) {
  if (counts_.empty()) throw DomainError("count data: at least one measurement is required");
  if (!(t_ > 0.0) || !std::isfinite(t_)) throw DomainError("count data: t must be a positive finite duration");
  total_ = std::accumulate(counts_.begin(), counts_.end(), Count{0});
}

SufficientStatistic sufficient_statistic(const CountData& data) { return {data.total(), data.mean()}; }

MLReport ml_estimates(const CountData& data) {
  MLReport r;
  const double s = static_cast<double>(data.total());
  const double n = data.n();
  const double nt = n * data.t();
  r.theta_hat = s / n;
  r.rho_hat = s / nt;
  r.var_counts = s / n;
  r.var_mean = s / (n * n);
  r.var_rate = s / (nt * nt);
  r.pathological = data.total() == 0;
  return r;
}

double log_likelihood(double theta, const CountData& data) {
  if (!(theta >= 0.0)) throw DomainError("log_likelihood: theta must be >= 0");
  const double s = static_cast<double>(data.total());
  if (theta == 0.0) return s > 0.0 ? -std::numeric_limits<double>::infinity() : 0.0;
  return s * std::log(theta) - data.n() * theta;
}

SimpleProbabilityEstimates simple_probability_estimates(int n, double t) {
  if (n < 1) throw DomainError("simple probability: n must be >= 1");
  if (!(t > 0.0)) throw DomainError("simple probability: t must be > 0");
  const double m = 1.0 / n;
  const double v = m * m;
  return {m, v, m / t, v / (t * t)};
}

SimpleProbabilityLimit simple_probability_upper_limit(int n, double t, double alpha) {
  if (n < 1) throw DomainError("simple probability: n must be >= 1");
  if (!(t > 0.0)) throw DomainError("simple probability: t must be > 0");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("simple probability: alpha must lie in (0, 1)");
  const double u = -std::log(alpha) / n;
  return {u, u / t};
}

OneCountLimit one_count_upper_limit(double t, double calibration) {
  if (!(t > 0.0)) throw DomainError("one-count limit: t must be > 0");
  if (!(calibration > 0.0)) throw DomainError("one-count limit: calibration must be > 0");
  return {1.0 / (t * calibration), false};
}

}  // namespace zcd
