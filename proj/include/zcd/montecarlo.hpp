#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "zcd/bayes.hpp"
#include "zcd/distributions.hpp"
#include "zcd/exec.hpp"
#include "zcd/rng.hpp"

namespace zcd {

struct PoissonModel {
  double theta;
};
struct ZPoissonModel {
  double theta;
  double psi;
};
/// Gamma(shape a, mean theta) mixture of Poissons.
struct NBModel {
  double theta;
  double a;
};

using CountModel = std::variant<PoissonModel, ZPoissonModel, NBModel>;

std::string describe(const CountModel& model);
void validate(const CountModel& model);

struct SimConfig {
  CountModel model;
  std::uint64_t n_draws;
  std::uint64_t seed;
};

struct SimSummary {
  double sample_mean = 0.0;
  /// 1/(n-1) denominator; 0 for a single draw.
  double sample_variance = 0.0;
  /// variance / mean, only meaningful when dispersion_defined.
  double dispersion = 0.0;
  bool dispersion_defined = false;
  std::uint64_t n_draws = 0;
};

/// Draws are generated in blocks of this many, block k from
/// substream(seed, SampleBlock, k). The sequence does not depend on the
/// thread count.
inline constexpr std::size_t kSampleBlockSize = 4096;

std::vector<Count> sample(const CountModel& model, std::uint64_t n_draws, std::uint64_t seed,
                          Exec exec = Exec::Parallel);

SimSummary summarize(std::span<const Count> draws);
SimSummary simulate(const SimConfig& cfg, Exec exec = Exec::Parallel);

/// n_bins Poisson(theta) counts, e.g. 10 ms bins of a steady source.
SimSummary dispersion_experiment(double theta, std::uint64_t n_bins, std::uint64_t seed,
                                 Exec exec = Exec::Parallel);

struct ChiSquareResult {
  double statistic;
  int dof;
  double p_value;
};

/// Pearson chi-square of the draws against Poisson(theta); adjacent cells
/// are pooled until each expects at least `min_expected` counts.
ChiSquareResult poisson_goodness_of_fit(std::span<const Count> draws, double theta, double min_expected = 5.0);

struct CoverageConfig {
  double true_rho;
  double t;
  int n;
  PriorSpec prior;
  double cl;
  std::uint64_t reps;
  std::uint64_t seed;
};

struct CoverageResult {
  double coverage;
  /// Binomial standard error sqrt(c (1 - c) / reps).
  double std_error;
  std::uint64_t covered;
  std::uint64_t reps;
};

/// Fraction of replicates whose Bayesian upper limit on the rate is at or
/// above the true rate. Replicate r uses substream(seed, CoverageReplicate, r).
/// Throws ImproperPosteriorError naming the first replicate whose posterior
/// cannot be normalized.
CoverageResult coverage_experiment(const CoverageConfig& cfg, const ToleranceConfig& tol = {},
                                   Exec exec = Exec::Parallel);

}  // namespace zcd
