#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "cli/cli.hpp"
#include "cli/output.hpp"
#include "zcd/bayes.hpp"
#include "zcd/classical.hpp"
#include "zcd/decision.hpp"
#include "zcd/marginal.hpp"
#include "zcd/montecarlo.hpp"

namespace zcd::cli {

namespace {

class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Uniform grids built from integer steps so every node is reproducible.
double grid_node(int i, int per_unit) { return static_cast<double>(i) / per_unit; }

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Count parse_count(const std::string& raw) {
  const std::string s = trim(raw);
  Count v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw InputError("invalid count '" + raw + "' (expected a nonnegative integer)");
  }
  return v;
}

double parse_real(const std::string& raw, const std::string& what) {
  const std::string s = trim(raw);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw InputError("invalid " + what + " '" + raw + "'");
  }
  return v;
}

std::vector<Count> parse_counts_list(const std::string& list) {
  std::vector<Count> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_count(item));
  if (out.empty()) throw InputError("--counts is empty");
  return out;
}

std::vector<Count> read_counts_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read counts file '" + path + "'");
  std::vector<Count> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    out.push_back(parse_count(line));
  }
  if (out.empty()) throw InputError("counts file '" + path + "' holds no counts");
  return out;
}

PriorSpec parse_prior(const std::string& raw, double t) {
  const std::string s = lower(trim(raw));
  if (s == "bl") return prior_params(PriorKind::BL, t);
  if (s == "jj") return prior_params(PriorKind::JJ, t);
  if (s == "jr") return prior_params(PriorKind::JR, t);
  if (s == "me") return prior_params(PriorKind::ME, t);
  if (s.rfind("custom:", 0) == 0) {
    const std::string body = s.substr(7);
    const auto comma = body.find(',');
    if (comma == std::string::npos) throw InputError("custom prior must be custom:a,b");
    const double a = parse_real(body.substr(0, comma), "prior shape");
    const double b = parse_real(body.substr(comma + 1), "prior rate");
    return custom_prior(a, b);
  }
  throw InputError("unknown prior '" + raw + "' (expected bl, jj, jr, me or custom:a,b)");
}

ToleranceConfig parse_tolerances(const std::vector<std::string>& items) {
  ToleranceConfig tol;
  for (const std::string& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("--tol expects key=value, got '" + item + "'");
    const std::string key = trim(item.substr(0, eq));
    const double v = parse_real(item.substr(eq + 1), "tolerance " + key);
    if (key == "abs_tol") {
      tol.abs_tol = v;
    } else if (key == "rel_tol") {
      tol.rel_tol = v;
    } else if (key == "quad_rel_tol") {
      tol.quad_rel_tol = v;
    } else if (key == "max_iter") {
      tol.max_iter = static_cast<int>(v);
    } else if (key == "quad_max_panels") {
      tol.quad_max_panels = static_cast<int>(v);
    } else {
      throw InputError("unknown tolerance key '" + key + "'");
    }
  }
  tol.validate();
  return tol;
}

std::string describe(const ToleranceConfig& tol) {
  std::ostringstream os;
  os << "abs_tol=" << fmt_double(tol.abs_tol, "%.3g") << ";rel_tol=" << fmt_double(tol.rel_tol, "%.3g")
     << ";max_iter=" << tol.max_iter << ";quad_rel_tol=" << fmt_double(tol.quad_rel_tol, "%.3g")
     << ";quad_max_panels=" << tol.quad_max_panels;
  return os.str();
}

void check_cl(double cl) {
  if (!(cl > 0.0 && cl < 1.0)) throw InputError("CL values must lie in (0, 1), got " + fmt_double(cl));
}

struct Common {
  std::string format;
  std::string out_dir;
  std::vector<std::string> tol;
  bool serial = false;

  Exec exec() const { return serial ? Exec::Serial : Exec::Parallel; }
};

void add_common(CLI::App* cmd, Common& c, const std::string& default_format) {
  c.format = default_format;
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", c.out_dir, "Write output files to this directory");
  cmd->add_option("--tol", c.tol, "Tolerance overrides, key=value")->delimiter(',');
}

Report base_report(const std::string& command, const ToleranceConfig& tol) {
  Report r;
  r.meta("tool", std::string("zcd ") + kToolVersion);
  r.meta("command", command);
  r.meta("tolerances", describe(tol));
  return r;
}

void add_rng_meta(Report& r, std::uint64_t seed) {
  r.meta("seed", std::to_string(seed));
  r.meta("prng", prng_description());
}

void emit(const Report& report, const Common& c, const std::string& stem, std::ostream& out) {
  const Format f = parse_format(c.format);
  if (c.out_dir.empty()) {
    render(report, f, out);
    return;
  }
  std::error_code ec;
  std::filesystem::create_directories(c.out_dir, ec);
  const std::filesystem::path path = std::filesystem::path(c.out_dir) / (stem + "." + extension(f));
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write '" + path.string() + "'");
  render(report, f, file);
  if (!file) throw InputError("failed writing '" + path.string() + "'");
  out << "wrote " << path.string() << "\n";
}

// estimate ------------------------------------------------------------------

struct EstimateArgs {
  std::string counts;
  std::string counts_file;
  double t = 1.0;
  std::vector<std::string> priors;
  std::vector<double> cls;
  std::vector<double> alphas;
  Common common;
};

int cmd_estimate(const EstimateArgs& a, std::ostream& out) {
  const ToleranceConfig tol = parse_tolerances(a.common.tol);
  if (a.counts.empty() == a.counts_file.empty()) {
    throw InputError("give exactly one of --counts or --counts-file");
  }
  if (!(a.t > 0.0) || !std::isfinite(a.t)) throw InputError("--t must be > 0");
  const CountData data(a.counts.empty() ? read_counts_file(a.counts_file) : parse_counts_list(a.counts), a.t);

  std::vector<double> cls = a.cls;
  for (double alpha : a.alphas) cls.push_back(1.0 - alpha);
  if (cls.empty()) cls = {0.90, 0.95, 0.99};
  for (double cl : cls) check_cl(cl);

  std::vector<std::string> prior_names = a.priors;
  if (prior_names.empty()) prior_names = {"bl", "jj", "jr", "me"};
  std::vector<PriorSpec> priors;
  for (const auto& p : prior_names) priors.push_back(parse_prior(p, a.t));

  Report r = base_report("estimate", tol);
  r.tables.push_back({"data", {"n", "t", "S", "mean"}, {{data.n(), Cell(data.t()), data.total(), Cell(data.mean())}}});

  const MLReport ml = ml_estimates(data);
  r.tables.push_back({"ml",
                      {"theta_hat", "rho_hat", "var_counts", "var_mean", "var_rate", "pathological"},
                      {{Cell(ml.theta_hat), Cell(ml.rho_hat), Cell(ml.var_counts), Cell(ml.var_mean),
                        Cell(ml.var_rate), ml.pathological}}});
  if (ml.pathological) {
    r.notes.push_back("ML: S = 0 makes every maximum-likelihood estimate, variance included, zero.");
  }

  if (data.total() == 0) {
    const auto sp = simple_probability_estimates(data.n(), data.t());
    r.tables.push_back({"simple_probability",
                        {"mean_theta", "var_theta", "mean_rho", "var_rho"},
                        {{Cell(sp.mean_theta), Cell(sp.var_theta), Cell(sp.mean_rho), Cell(sp.var_rho)}}});
    Table lim{"simple_probability_limits", {"cl", "alpha", "u_theta", "u_rho"}, {}};
    for (double cl : cls) {
      const auto u = simple_probability_upper_limit(data.n(), data.t(), 1.0 - cl);
      lim.rows.push_back({Cell(cl), Cell(1.0 - cl), Cell(u.u_theta), Cell(u.u_rho)});
    }
    r.tables.push_back(std::move(lim));
  }

  Table post{"posterior", {"prior", "a", "b", "A", "B", "mean_rho", "var_rho"}, {}};
  Table limits{"upper_limits", {"prior", "cl", "u_rho", "u_theta", "residual"}, {}};
  std::size_t improper = 0;
  for (const PriorSpec& prior : priors) {
    try {
      const GammaPosterior g = posterior(data, prior);
      post.rows.push_back({prior.name(), Cell(prior.a), Cell(prior.b), Cell(g.A), Cell(g.B), Cell(g.mean()),
                           Cell(g.variance())});
      for (double cl : cls) {
        const UpperLimitResult u = upper_limit(g, cl, tol);
        limits.rows.push_back({prior.name(), Cell(cl), Cell(u.u_rho), Cell(u.u_theta), Cell(u.solver_residual, "%.3g")});
      }
    } catch (const ImproperPosteriorError& e) {
      ++improper;
      r.notes.push_back(std::string("IMPROPER: ") + e.what());
    }
  }
  r.tables.push_back(std::move(post));
  r.tables.push_back(std::move(limits));
  emit(r, a.common, "estimate", out);
  return improper == priors.size() ? kImproperPosterior : kOk;
}

// tables --------------------------------------------------------------------

constexpr PriorKind kTablePriors[] = {PriorKind::BL, PriorKind::JR, PriorKind::ME};

Report table3(const ToleranceConfig& tol) {
  Report r = base_report("tables", tol);
  r.meta("table", "ad hoc zero-count upper limits in counts, n = 1");
  Table t{"table3", {"significance", "confidence_level", "upper_limit"}, {}};
  for (double alpha : {0.01, 0.05, 0.10, 0.37}) {
    const auto u = simple_probability_upper_limit(1, 1.0, alpha);
    t.rows.push_back({Cell(alpha, "%.2f"), Cell(1.0 - alpha, "%.2f"), Cell::rounded(u.u_theta)});
  }
  r.tables.push_back(std::move(t));
  return r;
}

Report table4(const ToleranceConfig& tol) {
  Report r = base_report("tables", tol);
  r.meta("table", "Bayesian point estimates with bias and risk, S = 0, n = t = 1, plug-in theta");
  Table t{"table4", {"prior", "mean", "bias_mean", "risk_mean", "variance", "bias_var", "risk_var"}, {}};
  for (PriorKind k : kTablePriors) {
    const RiskReport rr = risk_report(0, 1, prior_params(k, 1.0));
    t.rows.push_back({std::string(to_string(k)), Cell(rr.mean_estimate), Cell(rr.bias_mean), Cell(rr.risk_mean),
                      Cell(rr.var_estimate), Cell(rr.bias_var), Cell(rr.risk_var)});
  }
  r.tables.push_back(std::move(t));
  return r;
}

Report table5(const ToleranceConfig& tol) {
  Report r = base_report("tables", tol);
  r.meta("table", "Bayesian upper limits in counts, S = 0, n = t = 1");
  Table t{"table5", {"credibility_level", "BL", "JR", "ME"}, {}};
  for (double cl : {0.90, 0.95, 0.99}) {
    std::vector<Cell> row{Cell(cl, "%.2f")};
    for (PriorKind k : kTablePriors) {
      row.push_back(Cell::rounded(upper_limit(posterior(0, 1, 1.0, prior_params(k, 1.0)), cl, tol).u_theta));
    }
    t.rows.push_back(std::move(row));
  }
  r.tables.push_back(std::move(t));
  return r;
}

int cmd_tables(const Common& c, std::ostream& out) {
  const ToleranceConfig tol = parse_tolerances(c.tol);
  emit(table3(tol), c, "table3", out);
  emit(table4(tol), c, "table4", out);
  emit(table5(tol), c, "table5", out);
  return kOk;
}

// figures -------------------------------------------------------------------

Report fig1(const ToleranceConfig& tol) {
  Report r = base_report("figures", tol);
  r.meta("figure", "probability of zero counts, n = 1");
  Table t{"fig1", {"theta", "p_zero"}, {}};
  for (int i = 0; i <= 200; ++i) {
    const double theta = grid_node(i, 20);
    t.rows.push_back({Cell(theta), Cell(poisson_pmf(0, theta))});
  }
  r.tables.push_back(std::move(t));
  return r;
}

Report fig2(const ToleranceConfig& tol) {
  Report r = base_report("figures", tol);
  r.meta("figure", "reference priors at t = 1, scaled through (1, 1)");
  Table t{"fig2", {"rho", "BL", "JJ", "JR", "ME"}, {}};
  for (int i = 1; i <= 100; ++i) {
    const double rho = grid_node(i, 20);
    std::vector<Cell> row{Cell(rho)};
    for (PriorKind k : {PriorKind::BL, PriorKind::JJ, PriorKind::JR, PriorKind::ME}) {
      row.push_back(Cell(prior_density(k, rho, 1.0, PriorScaling::ThroughUnitPoint)));
    }
    t.rows.push_back(std::move(row));
  }
  r.tables.push_back(std::move(t));
  return r;
}

Report fig3(const ToleranceConfig& tol) {
  Report r = base_report("figures", tol);
  r.meta("figure", "posteriors for S = 0, n = t = 1");
  std::vector<GammaPosterior> posts;
  for (PriorKind k : kTablePriors) {
    posts.push_back(posterior(0, 1, 1.0, prior_params(k, 1.0)));
    r.meta(std::string("mean_") + std::string(to_string(k)), fmt_double(posts.back().mean()));
  }
  Table t{"fig3", {"theta", "BL", "JR", "ME"}, {}};
  for (int i = 1; i <= 100; ++i) {
    const double theta = grid_node(i, 20);
    std::vector<Cell> row{Cell(theta)};
    for (const auto& g : posts) row.push_back(Cell(g.density(theta)));
    t.rows.push_back(std::move(row));
  }
  r.tables.push_back(std::move(t));
  return r;
}

Report fig4(const ToleranceConfig& tol) {
  Report r = base_report("figures", tol);
  r.meta("figure", "Bayesian upper limits in counts against credibility level, S = 0, n = t = 1");
  Table t{"fig4", {"cl", "BL", "JR", "ME"}, {}};
  for (int i = 50; i <= 99; ++i) {
    const double cl = grid_node(i, 100);
    std::vector<Cell> row{Cell(cl, "%.2f")};
    for (PriorKind k : kTablePriors) {
      row.push_back(Cell(upper_limit(posterior(0, 1, 1.0, prior_params(k, 1.0)), cl, tol).u_theta));
    }
    t.rows.push_back(std::move(row));
  }
  r.tables.push_back(std::move(t));
  return r;
}

Report fig5(const ToleranceConfig& tol) {
  constexpr double kMean = 4.0;
  constexpr double kDispersion = 1.5;
  const ZPoissonParams zp = zpoisson_from_moments(kMean, kDispersion);
  const NBParams nb{kMean, kMean / (kDispersion - 1.0)};
  Report r = base_report("figures", tol);
  r.meta("figure", "pmfs with mean 4; z-Poisson and NB have dispersion 1.5");
  r.meta("poisson", "theta=" + fmt_double(kMean));
  r.meta("zpoisson", "theta=" + fmt_double(zp.theta, "%.17g") + ";psi=" + fmt_double(zp.psi, "%.17g"));
  r.meta("nb", "theta=" + fmt_double(nb.theta) + ";a=" + fmt_double(nb.a));
  Table t{"fig5", {"x", "poisson", "zpoisson", "nb"}, {}};
  for (Count x = 0; x <= 60; ++x) {
    t.rows.push_back({x, Cell(poisson_pmf(x, kMean), "%.17g"), Cell(zpoisson_pmf(x, zp), "%.17g"),
                      Cell(nb_pmf(x, nb), "%.17g")});
  }
  r.tables.push_back(std::move(t));
  return r;
}

int cmd_figures(const Common& c, std::ostream& out) {
  const ToleranceConfig tol = parse_tolerances(c.tol);
  emit(fig1(tol), c, "fig1", out);
  emit(fig2(tol), c, "fig2", out);
  emit(fig3(tol), c, "fig3", out);
  emit(fig4(tol), c, "fig4", out);
  emit(fig5(tol), c, "fig5", out);
  return kOk;
}

// marginalize ---------------------------------------------------------------

struct MarginalizeArgs {
  std::string model;
  Count x = 0;
  int points = 401;
  double a_min = 0.0;
  bool curve = false;
  Common common;
};

constexpr double kZPoissonTolerance = 1e-6;

int cmd_marginalize(const MarginalizeArgs& a, std::ostream& out) {
  const ToleranceConfig tol = parse_tolerances(a.common.tol);
  const auto grid = default_theta_grid(a.x, a.points);
  Report r = base_report("marginalize", tol);
  r.meta("model", a.model);
  r.meta("x", std::to_string(a.x));
  r.meta("grid", "uniform " + std::to_string(a.points) + " points on [0, " + fmt_double(grid.back()) + "]");

  MarginalComparison m;
  std::string verdict;
  Table summary{"summary", {"model", "x", "linf", "l1", "norm_residual"}, {}};
  if (a.model == "zpoisson") {
    m = zpoisson_marginal(a.x, grid, tol, a.common.exec());
    const bool pass = m.linf_distance <= kZPoissonTolerance && m.numeric_norm_residual <= kZPoissonTolerance;
    verdict = pass ? "PASS" : "FAIL";
    r.meta("criterion", "linf <= " + fmt_double(kZPoissonTolerance) + " and norm_residual <= " +
                            fmt_double(kZPoissonTolerance));
  } else {
    NbMarginalOptions opts;
    opts.a_min = a.a_min;
    m = nb_marginal_numeric(a.x, grid, tol, opts, a.common.exec());
    NbMarginalOptions alt = opts;
    alt.quad = QuadratureOptions{4, 3.0};
    const MarginalComparison m2 = nb_marginal_numeric(a.x, grid, tol, alt, a.common.exec());
    double spread = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      spread = std::max(spread, std::abs(m.numeric_density[i] - m2.numeric_density[i]));
    }
    summary.columns.push_back("config_spread");
    verdict = "REPORT-ONLY";
    r.meta("a_min", fmt_double(a.a_min));
    summary.rows.push_back({a.model, a.x, Cell(m.linf_distance, "%.6e"), Cell(m.l1_distance, "%.6e"),
                            Cell(m.numeric_norm_residual, "%.3e"), Cell(spread, "%.3e")});
  }
  if (summary.rows.empty()) {
    summary.rows.push_back({a.model, a.x, Cell(m.linf_distance, "%.6e"), Cell(m.l1_distance, "%.6e"),
                            Cell(m.numeric_norm_residual, "%.3e")});
  }
  summary.columns.push_back("verdict");
  summary.rows.back().push_back(verdict);
  r.tables.push_back(std::move(summary));
  if (a.curve) {
    Table curve{"curve", {"theta", "numeric", "poisson_me"}, {}};
    for (std::size_t i = 0; i < grid.size(); ++i) {
      curve.rows.push_back({Cell(grid[i]), Cell(m.numeric_density[i], "%.12g"), Cell(m.claimed_density[i], "%.12g")});
    }
    r.tables.push_back(std::move(curve));
  }
  emit(r, a.common, "marginalize_" + a.model + "_x" + std::to_string(a.x), out);
  return verdict == "FAIL" ? kNumericalFailure : kOk;
}

// simulate / coverage ---------------------------------------------------------

struct SimulateArgs {
  std::string model = "poisson";
  double theta = -1.0;
  double psi = 1.0;
  double a = -1.0;
  std::uint64_t draws = 0;
  std::uint64_t seed = 42;
  Common common;
};

int cmd_simulate(const SimulateArgs& s, std::ostream& out) {
  const ToleranceConfig tol = parse_tolerances(s.common.tol);
  if (s.draws < 1) throw InputError("--bins/--draws must be >= 1");
  if (!(s.theta >= 0.0)) throw InputError("--theta is required and must be >= 0");
  CountModel model = PoissonModel{s.theta};
  if (s.model == "zpoisson") {
    model = ZPoissonModel{s.theta, s.psi};
  } else if (s.model == "nb") {
    if (!(s.a > 0.0)) throw InputError("--a is required for the nb model and must be > 0");
    model = NBModel{s.theta, s.a};
  }
  validate(model);

  const std::vector<Count> draws = sample(model, s.draws, s.seed, s.common.exec());
  const SimSummary sum = summarize(draws);
  Report r = base_report("simulate", tol);
  r.meta("model", describe(model));
  r.meta("n_draws", std::to_string(s.draws));
  add_rng_meta(r, s.seed);
  r.tables.push_back({"summary",
                      {"n_draws", "sample_mean", "sample_variance", "dispersion"},
                      {{sum.n_draws, Cell(sum.sample_mean), Cell(sum.sample_variance),
                        sum.dispersion_defined ? Cell(sum.dispersion) : Cell("undefined")}}});
  if (!sum.dispersion_defined) r.notes.push_back("dispersion undefined: the sample mean is zero");
  if (std::holds_alternative<PoissonModel>(model) && s.theta > 0.0) {
    const ChiSquareResult gof = poisson_goodness_of_fit(draws, s.theta);
    r.tables.push_back({"goodness_of_fit", {"chi_square", "dof", "p_value"},
                        {{Cell(gof.statistic), gof.dof, Cell(gof.p_value)}}});
  }
  emit(r, s.common, "simulate", out);
  return kOk;
}

struct CoverageArgs {
  double rho = -1.0;
  double t = 1.0;
  int n = 1;
  std::string prior = "me";
  double cl = 0.95;
  std::uint64_t reps = 10000;
  std::uint64_t seed = 42;
  Common common;
};

int cmd_coverage(const CoverageArgs& c, std::ostream& out) {
  const ToleranceConfig tol = parse_tolerances(c.common.tol);
  if (!(c.rho >= 0.0)) throw InputError("--rho is required and must be >= 0");
  if (!(c.t > 0.0)) throw InputError("--t must be > 0");
  if (c.n < 1) throw InputError("--n must be >= 1");
  if (c.reps < 1) throw InputError("--reps must be >= 1");
  check_cl(c.cl);
  const PriorSpec prior = parse_prior(c.prior, c.t);
  const CoverageResult res = coverage_experiment({c.rho, c.t, c.n, prior, c.cl, c.reps, c.seed}, tol, c.common.exec());
  Report r = base_report("coverage", tol);
  add_rng_meta(r, c.seed);
  r.tables.push_back({"coverage",
                      {"true_rho", "t", "n", "prior", "cl", "reps", "covered", "coverage", "std_error"},
                      {{Cell(c.rho), Cell(c.t), c.n, prior.name(), Cell(c.cl), c.reps, res.covered,
                        Cell(res.coverage), Cell(res.std_error)}}});
  emit(r, c.common, "coverage", out);
  return kOk;
}

// jj-divergence ---------------------------------------------------------------

struct JJArgs {
  std::vector<double> epsilons;
  double u = 1.0;
  Common common;
};

int cmd_jj(const JJArgs& j, std::ostream& out) {
  const ToleranceConfig tol = parse_tolerances(j.common.tol);
  std::vector<double> eps = j.epsilons;
  if (eps.empty()) eps = {1e-2, 1e-4, 1e-6, 1e-8};
  Report r = base_report("jj-divergence", tol);
  r.meta("u_theta", fmt_double(j.u));
  Table t{"jj_divergence", {"epsilon", "evidence_e1", "small_eps_form", "alpha"}, {}};
  for (double e : eps) {
    const JJDivergence d = jj_divergence_demo(e, j.u);
    t.rows.push_back({Cell(e, "%.3g"), Cell(d.evidence), Cell(d.denominator), Cell(d.alpha)});
  }
  r.tables.push_back(std::move(t));
  r.notes.push_back("alpha -> 0 as epsilon -> 0: with the JJ prior and S = 0 every finite limit has zero significance.");
  emit(r, j.common, "jj_divergence", out);
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zero-count detector statistics"};
  app.name("zcd");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("zcd ") + kToolVersion);

  EstimateArgs est;
  auto* c_est = app.add_subcommand("estimate", "ML, simple-probability and Bayesian estimates for count data");
  c_est->add_option("--counts", est.counts, "Comma-separated counts, one per measurement");
  c_est->add_option("--counts-file", est.counts_file, "File with one count per line, # comments allowed");
  c_est->add_option("--t", est.t, "Duration of each measurement")->capture_default_str();
  c_est->add_option("--prior", est.priors, "bl, jj, jr, me or custom:a,b (repeatable)");
  c_est->add_option("--cl", est.cls, "Credibility levels (repeatable)")->delimiter(',');
  c_est->add_option("--alpha", est.alphas, "Significance levels, as an alternative to --cl")->delimiter(',');
  add_common(c_est, est.common, "table");

  Common tab;
  auto* c_tab = app.add_subcommand("tables", "Write table3, table4 and table5");
  add_common(c_tab, tab, "csv");
  tab.out_dir = ".";

  Common fig;
  auto* c_fig = app.add_subcommand("figures", "Write the fig1 to fig5 data sets");
  add_common(c_fig, fig, "csv");
  fig.out_dir = ".";

  MarginalizeArgs mar;
  auto* c_mar = app.add_subcommand("marginalize", "Marginalize the z-Poisson or NB posterior over its nuisance parameter");
  c_mar->add_option("--model", mar.model, "zpoisson or nb")->required()->check(CLI::IsMember({"zpoisson", "nb"}));
  c_mar->add_option("--x", mar.x, "Observed count")->required();
  c_mar->add_option("--points", mar.points, "Theta grid size")->capture_default_str();
  c_mar->add_option("--a-min", mar.a_min, "Lower bound on the NB shape")->capture_default_str();
  c_mar->add_flag("--curve", mar.curve, "Include the density curves");
  c_mar->add_flag("--serial", mar.common.serial, "Use the serial reference kernels");
  add_common(c_mar, mar.common, "table");

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Seeded draws with sample moments");
  c_sim->add_option("--model", sim.model, "poisson, zpoisson or nb")
      ->check(CLI::IsMember({"poisson", "zpoisson", "nb"}))
      ->capture_default_str();
  c_sim->add_option("--theta", sim.theta, "Poisson mean parameter")->required();
  c_sim->add_option("--psi", sim.psi, "z-Poisson zero-class factor")->capture_default_str();
  c_sim->add_option("--a", sim.a, "NB shape");
  c_sim->add_option("--bins,--draws", sim.draws, "Number of draws")->required();
  c_sim->add_option("--seed", sim.seed, "Seed")->capture_default_str();
  c_sim->add_flag("--serial", sim.common.serial, "Use the serial reference kernels");
  add_common(c_sim, sim.common, "table");

  CoverageArgs cov;
  auto* c_cov = app.add_subcommand("coverage", "Frequentist coverage of Bayesian upper limits");
  c_cov->add_option("--rho", cov.rho, "True rate")->required();
  c_cov->add_option("--t", cov.t, "Duration of each measurement")->capture_default_str();
  c_cov->add_option("--n", cov.n, "Measurements per replicate")->capture_default_str();
  c_cov->add_option("--prior", cov.prior, "bl, jj, jr, me or custom:a,b")->capture_default_str();
  c_cov->add_option("--cl", cov.cl, "Credibility level")->capture_default_str();
  c_cov->add_option("--reps", cov.reps, "Replicates")->capture_default_str();
  c_cov->add_option("--seed", cov.seed, "Seed")->capture_default_str();
  c_cov->add_flag("--serial", cov.common.serial, "Use the serial reference kernels");
  add_common(c_cov, cov.common, "table");

  JJArgs jj;
  auto* c_jj = app.add_subcommand("jj-divergence", "Significance under a truncated JJ evidence");
  c_jj->add_option("--epsilon", jj.epsilons, "Cutoffs (repeatable)")->delimiter(',');
  c_jj->add_option("--u", jj.u, "Upper limit in counts")->capture_default_str();
  add_common(c_jj, jj.common, "table");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*c_est) return cmd_estimate(est, out);
    if (*c_tab) return cmd_tables(tab, out);
    if (*c_fig) return cmd_figures(fig, out);
    if (*c_mar) return cmd_marginalize(mar, out);
    if (*c_sim) return cmd_simulate(sim, out);
    if (*c_cov) return cmd_coverage(cov, out);
    if (*c_jj) return cmd_jj(jj, out);
  } catch (const ImproperPosteriorError& e) {
    err << "improper posterior: " << e.what() << "\n";
    return kImproperPosterior;
  } catch (const ConvergenceError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const QuadratureError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::domain_error& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace zcd::cli
