#include "zcd/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "parallel.hpp"

namespace zcd {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Inverse-CDF table for the z-Poisson pmf. Read-only once built.
class ZPoissonTable {
 public:
  explicit ZPoissonTable(const ZPoissonParams& params) {
    const double span = params.theta + 40.0 * std::sqrt(params.theta) + 40.0;
    double cdf = 0.0;
    for (Count k = 0; static_cast<double>(k) <= span; ++k) {
      cdf += zpoisson_pmf(k, params);
      cdf_.push_back(cdf);
      if (1.0 - cdf < 1e-17) break;
    }
  }

  Count operator()(Engine& eng) const {
    const double u = uniform_open01(eng);
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) return static_cast<Count>(cdf_.size() - 1);
    return static_cast<Count>(it - cdf_.begin());
  }

 private:
  std::vector<double> cdf_;
};

class CountSampler {
 public:
  explicit CountSampler(const CountModel& model) : model_(model) {
    validate(model);
    if (const auto* z = std::get_if<ZPoissonModel>(&model)) {
      table_.emplace_back(ZPoissonParams{z->theta, z->psi});
    }
  }

  Count operator()(Engine& eng) const {
    return std::visit(Overloaded{
                          [&](const PoissonModel& m) { return poisson_variate(eng, m.theta); },
                          [&](const ZPoissonModel&) { return table_.front()(eng); },
                          [&](const NBModel& m) {
                            const double lambda = gamma_variate(eng, m.a, m.theta / m.a);
                            return poisson_variate(eng, lambda);
                          },
                      },
                      model_);
  }

 private:
  CountModel model_;
  std::vector<ZPoissonTable> table_;
};

}  // namespace

std::string describe(const CountModel& model) {
  std::ostringstream os;
  os.precision(17);
  std::visit(Overloaded{
                 [&](const PoissonModel& m) { os << "poisson(theta=" << m.theta << ")"; },
                 [&](const ZPoissonModel& m) { os << "zpoisson(theta=" << m.theta << ",psi=" << m.psi << ")"; },
                 [&](const NBModel& m) { os << "nb(theta=" << m.theta << ",a=" << m.a << ")"; },
             },
             model);
  return os.str();
}

void validate(const CountModel& model) {
  std::visit(Overloaded{
                 [](const PoissonModel& m) {
                   if (!(m.theta >= 0.0) || !std::isfinite(m.theta)) {
                     throw DomainError("poisson model: theta must be finite and >= 0");
                   }
                 },
                 [](const ZPoissonModel& m) { ZPoissonParams{m.theta, m.psi}.validate(); },
                 [](const NBModel& m) { NBParams{m.theta, m.a}.validate(); },
             },
             model);
}

std::vector<Count> sample(const CountModel& model, std::uint64_t n_draws, std::uint64_t seed, Exec exec) {
  if (n_draws < 1) throw DomainError("sample: n_draws must be >= 1");
  const CountSampler sampler(model);
  std::vector<Count> out(n_draws);
  const std::size_t blocks = (n_draws + kSampleBlockSize - 1) / kSampleBlockSize;
  detail::for_each_index(blocks, exec, [&](std::size_t block) {
    Engine eng = substream(seed, StreamTag::SampleBlock, block);
    const std::size_t begin = block * kSampleBlockSize;
    const std::size_t end = std::min<std::size_t>(begin + kSampleBlockSize, n_draws);
    for (std::size_t i = begin; i < end; ++i) out[i] = sampler(eng);
  });
  return out;
}

SimSummary summarize(std::span<const Count> draws) {
  SimSummary s;
  s.n_draws = draws.size();
  if (draws.empty()) return s;
  Count total = 0;
  for (Count x : draws) total += x;
  const double n = static_cast<double>(draws.size());
  s.sample_mean = static_cast<double>(total) / n;
  if (draws.size() > 1) {
    double ss = 0.0;
    for (Count x : draws) {
      const double d = static_cast<double>(x) - s.sample_mean;
      ss += d * d;
    }
    s.sample_variance = ss / (n - 1.0);
  }
  s.dispersion_defined = s.sample_mean > 0.0;
  s.dispersion = s.dispersion_defined ? s.sample_variance / s.sample_mean : 0.0;
  return s;
}

SimSummary simulate(const SimConfig& cfg, Exec exec) {
  const std::vector<Count> draws = sample(cfg.model, cfg.n_draws, cfg.seed, exec);
  return summarize(draws);
}

SimSummary dispersion_experiment(double theta, std::uint64_t n_bins, std::uint64_t seed, Exec exec) {
  if (!(theta > 0.0)) throw DomainError("dispersion_experiment: theta must be > 0");
  return simulate({PoissonModel{theta}, n_bins, seed}, exec);
}

ChiSquareResult poisson_goodness_of_fit(std::span<const Count> draws, double theta, double min_expected) {
  if (draws.empty()) throw DomainError("goodness of fit: no draws");
  if (!(theta > 0.0)) throw DomainError("goodness of fit: theta must be > 0");
  const Count max_obs = *std::max_element(draws.begin(), draws.end());
  const Count top = std::max<Count>(max_obs, static_cast<Count>(theta + 20.0 * std::sqrt(theta) + 20.0));
  std::vector<double> observed(top + 1, 0.0);
  for (Count x : draws) observed[x] += 1.0;
  const double n = static_cast<double>(draws.size());

  struct Cell {
    double obs = 0.0;
    double exp = 0.0;
  };
  std::vector<Cell> cells;
  Cell pending;
  double mass = 0.0;
  for (Count k = 0; k <= top; ++k) {
    const double p = poisson_pmf(k, theta);
    mass += p;
    pending.obs += observed[k];
    pending.exp += n * p;
    if (pending.exp >= min_expected) {
      cells.push_back(pending);
      pending = {};
    }
  }
  pending.exp += n * std::max(0.0, 1.0 - mass);
  if (cells.empty()) throw DomainError("goodness of fit: too few draws for the requested cell size");
  cells.back().obs += pending.obs;
  cells.back().exp += pending.exp;

  double chi2 = 0.0;
  for (const Cell& c : cells) chi2 += (c.obs - c.exp) * (c.obs - c.exp) / c.exp;
  const int dof = static_cast<int>(cells.size()) - 1;
  if (dof < 1) throw DomainError("goodness of fit: fewer than two cells");
  return {chi2, dof, reg_inc_gamma_upper(0.5 * dof, 0.5 * chi2)};
}

CoverageResult coverage_experiment(const CoverageConfig& cfg, const ToleranceConfig& tol, Exec exec) {
  if (!(cfg.true_rho >= 0.0) || !std::isfinite(cfg.true_rho)) throw DomainError("coverage: true rate must be >= 0");
  if (!(cfg.t > 0.0)) throw DomainError("coverage: t must be > 0");
  if (cfg.n < 1) throw DomainError("coverage: n must be >= 1");
  if (!(cfg.cl > 0.0 && cfg.cl < 1.0)) throw DomainError("coverage: CL must lie in (0, 1)");
  if (cfg.reps < 1) throw DomainError("coverage: reps must be >= 1");
  tol.validate();

  const double theta = cfg.true_rho * cfg.t;
  std::vector<Count> totals(cfg.reps);
  detail::for_each_index(cfg.reps, exec, [&](std::size_t r) {
    Engine eng = substream(cfg.seed, StreamTag::CoverageReplicate, r);
    Count s = 0;
    for (int i = 0; i < cfg.n; ++i) s += poisson_variate(eng, theta);
    totals[r] = s;
  });

  if (!(cfg.prior.a > 0.0)) {
    const auto it = std::find(totals.begin(), totals.end(), Count{0});
    if (it != totals.end()) {
      throw ImproperPosteriorError("coverage: replicate " + std::to_string(it - totals.begin()) +
                                   " observed S = 0, for which the " + cfg.prior.name() +
                                   " posterior is improper");
    }
  }

  // The limit depends on the replicate only through S.
  std::map<Count, double> limits;
  for (Count s : totals) limits.emplace(s, 0.0);
  for (auto& [s, u] : limits) {
    u = upper_limit(posterior(s, cfg.n, cfg.t, cfg.prior), cfg.cl, tol).u_rho;
  }

  std::uint64_t covered = 0;
  for (Count s : totals) covered += limits.at(s) >= cfg.true_rho ? 1 : 0;
  const double c = static_cast<double>(covered) / static_cast<double>(cfg.reps);
  return {c, std::sqrt(c * (1.0 - c) / static_cast<double>(cfg.reps)), covered, cfg.reps};
}

}  // namespace zcd
