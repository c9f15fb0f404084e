// Acceptance gate. Prints one PASS/FAIL line per criterion; `--only N`
// runs a single criterion and sets the exit status from it.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli/output.hpp"
#include "zcd/bayes.hpp"
#include "zcd/decision.hpp"
#include "zcd/marginal.hpp"
#include "zcd/montecarlo.hpp"

using namespace zcd;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;  // 0: none
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double x) { return cli::fmt_double(x, f); }

double r1(double x) { return cli::round_half_away(x, 1); }

constexpr PriorKind kPriors[] = {PriorKind::BL, PriorKind::JR, PriorKind::ME};

Outcome ac1() {
  const double alphas[] = {0.01, 0.05, 0.10, 0.37};
  const double want[] = {4.6, 3.0, 2.3, 1.0};
  constexpr double kExactTol = 1e-10;
  bool ok = true;
  std::ostringstream d;
  for (int i = 0; i < 4; ++i) {
    const double u = simple_probability_upper_limit(1, 1.0, alphas[i]).u_theta;
    ok = ok && r1(u) == want[i] && std::abs(u - std::log(1.0 / alphas[i])) < kExactTol;
    d << fmt("%.1f", r1(u)) << (i < 3 ? "," : "");
  }
  return {ok, "U=" + d.str()};
}

Outcome ac2() {
  constexpr double kTol = 1e-12;
  const double want[3][6] = {{1, 1, 1, 1, 1, 1}, {0.5, 0.5, 0.25, 0.5, 0.5, 0.25}, {0.5, 0.5, 0.25, 0.25, 0.25, 0.0625}};
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    const RiskReport r = risk_report(0, 1, prior_params(kPriors[i], 1.0));
    const double got[6] = {r.mean_estimate, r.bias_mean, r.risk_mean, r.var_estimate, r.bias_var, r.risk_var};
    for (int j = 0; j < 6; ++j) worst = std::max(worst, std::abs(got[j] - want[i][j]));
  }
  return {worst < kTol, "max cell error " + fmt("%.2e", worst)};
}

Outcome ac3() {
  constexpr double kResidualTol = 1e-10;
  const double cls[] = {0.90, 0.95, 0.99};
  const double want[3][3] = {{2.3, 1.4, 1.2}, {3.0, 1.9, 1.5}, {4.6, 3.3, 2.3}};
  bool ok = true;
  double worst_res = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const GammaPosterior g = posterior(0, 1, 1.0, prior_params(kPriors[j], 1.0));
      const UpperLimitResult u = upper_limit(g, cls[i]);
      const double res = std::abs(reg_inc_gamma_lower(g.A, g.B * u.u_rho) - cls[i]);
      worst_res = std::max(worst_res, res);
      ok = ok && r1(u.u_theta) == want[i][j];
    }
  }
  return {ok && worst_res < kResidualTol, "max residual " + fmt("%.2e", worst_res)};
}

Outcome ac4() {
  constexpr double kTol = 5e-6;
  const double p = poisson_pmf(0, 2.8787);
  return {std::abs(p - 5.621e-2) < kTol, "P(0|2.8787)=" + fmt("%.6e", p)};
}

Outcome ac5() {
  constexpr double kTol = 1e-12;
  bool typed = false;
  try {
    posterior(0, 1, 1.0, prior_params(PriorKind::JJ));
  } catch (const ImproperPosteriorError&) {
    typed = true;
  }
  double worst = 0.0;
  for (Count s = 1; s <= 10; ++s) {
    for (int n = 1; n <= 5; ++n) {
      for (double t : {0.5, 1.0, 3.0}) {
        const GammaPosterior g = posterior(s, n, t, prior_params(PriorKind::JJ));
        const double nt = n * t;
        worst = std::max(worst, std::abs(g.mean() - s / nt));
        worst = std::max(worst, std::abs(g.variance() - s / (nt * nt)));
      }
    }
  }
  return {typed && worst < kTol, std::string(typed ? "typed error" : "NO typed error") + ", max dev " + fmt("%.2e", worst)};
}

Outcome ac6() {
  constexpr double kTol = 1e-6;
  double worst = 0.0;
  for (Count x : {0, 1, 2, 5}) worst = std::max(worst, zpoisson_marginal(x, default_theta_grid(x)).linf_distance);
  return {worst <= kTol, "sup-norm " + fmt("%.2e", worst)};
}

Outcome ac7() {
  constexpr double kNormTol = 1e-6;
  constexpr double kAgreeTol = 1e-8;
  double worst_norm = 0.0;
  double worst_spread = 0.0;
  std::ostringstream gaps;
  for (Count x : {0, 1, 3}) {
    const auto grid = default_theta_grid(x);
    const MarginalComparison a = nb_marginal_numeric(x, grid);
    NbMarginalOptions alt;
    alt.quad = {4, 3.0};
    const MarginalComparison b = nb_marginal_numeric(x, grid, {}, alt);
    worst_norm = std::max({worst_norm, a.numeric_norm_residual, b.numeric_norm_residual});
    for (std::size_t i = 0; i < grid.size(); ++i) {
      worst_spread = std::max(worst_spread, std::abs(a.numeric_density[i] - b.numeric_density[i]));
    }
    worst_spread = std::max({worst_spread, std::abs(a.l1_distance - b.l1_distance),
                             std::abs(a.linf_distance - b.linf_distance)});
    gaps << " l1(x=" << x << ")=" << fmt("%.4f", a.l1_distance);
  }
  return {worst_norm < kNormTol && worst_spread < kAgreeTol,
          "norm " + fmt("%.1e", worst_norm) + ", config spread " + fmt("%.1e", worst_spread) + ";" + gaps.str() +
              " (report only)"};
}

Outcome ac8() {
  constexpr double kOracleTol = 1e-10;
  constexpr double kDecompTol = 1e-12;
  double worst = 0.0;
  double worst_gap = 0.0;
  for (double theta : {0.0, 0.5, 1.0, 2.0}) {
    for (int n : {1, 3}) {
      for (PriorKind k : kPriors) {
        const RiskOracleReport r = validate_risk_oracle(theta, n, prior_params(k, 1.0));
        worst = std::max(worst, r.max_discrepancy);
        worst_gap = std::max(worst_gap, r.decomposition_gap);
      }
    }
  }
  return {worst < kOracleTol && worst_gap < kDecompTol,
          "oracle " + fmt("%.2e", worst) + ", decomposition " + fmt("%.2e", worst_gap)};
}

Outcome ac9() {
  constexpr double kBand = 0.005;
  constexpr std::uint64_t kSeed = 42;
  const SimSummary s = dispersion_experiment(2.8787, 1080000, kSeed);
  return {std::abs(s.sample_mean - 2.8787) < kBand && std::abs(s.dispersion - 1.0) < kBand,
          "mean " + fmt("%.5f", s.sample_mean) + ", dispersion " + fmt("%.5f", s.dispersion)};
}

Outcome ac10() {
  constexpr double kMargin = 1e-3;
  const double shapes[] = {0.25, 0.5, 1.0, 2.0, 4.0};
  double h[5];
  for (int i = 0; i < 5; ++i) h[i] = differential_entropy_gamma({shapes[i], shapes[i]});
  double margin = INFINITY;
  for (int i = 0; i < 5; ++i) {
    if (i != 2) margin = std::min(margin, h[2] - h[i]);
  }
  return {margin > kMargin, "H(1)=" + fmt("%.6f", h[2]) + ", margin " + fmt("%.4f", margin)};
}

Outcome ac11() {
  constexpr double kTol = 1e-10;
  double worst = 0.0;
  auto limit = [](Count s, double t, const PriorSpec& p, double cl) {
    return upper_limit(posterior(s, 1, t, p), cl).u_rho;
  };
  for (double q : {0.1, 10.0}) {
    for (PriorKind k : kPriors) {
      const double base = limit(0, 1.0, prior_params(k, 1.0), 0.95);
      worst = std::max(worst, std::abs(q * limit(0, q, prior_params(k, q), 0.95) - base));
    }
    const double base = limit(2, 1.0, prior_params(PriorKind::JJ), 0.95);
    worst = std::max(worst, std::abs(q * limit(2, q, prior_params(PriorKind::JJ), 0.95) - base));
  }
  bool ordered = true;
  for (double cl : {0.90, 0.95, 0.99}) {
    const double bl = limit(0, 1.0, prior_params(PriorKind::BL), cl);
    const double jr = limit(0, 1.0, prior_params(PriorKind::JR), cl);
    const double me = limit(0, 1.0, prior_params(PriorKind::ME, 1.0), cl);
    ordered = ordered && bl > jr && jr > me;
  }
  return {worst < kTol && ordered, "scaling dev " + fmt("%.2e", worst) + (ordered ? ", BL>JR>ME" : ", ORDER BROKEN")};
}

Outcome ac12() {
  constexpr double kAlphaBound = 0.012;
  constexpr double kEvidenceRelTol = 1e-3;
  const double eps[] = {1e-2, 1e-4, 1e-6, 1e-8};
  bool monotone = true;
  double prev = INFINITY;
  double last = 0.0;
  for (double e : eps) {
    last = jj_divergence_demo(e, 1.0).alpha;
    monotone = monotone && last < prev;
    prev = last;
  }
  const double e1 = exp_integral_e1(1e-8);
  const double asym = -std::numbers::egamma - std::log(1e-8);
  const double rel = std::abs(e1 / asym - 1.0);
  return {monotone && last < kAlphaBound && rel < kEvidenceRelTol,
          std::string(monotone ? "monotone" : "NOT monotone") + ", alpha(1e-8,1)=" + fmt("%.6f", last) +
              " (bound " + fmt("%.3f", kAlphaBound) + "), E1 rel " + fmt("%.1e", rel)};
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "table3 ad hoc limits", 1.0, ac1},
      {2, "table4 point estimates, bias, risk", 1.0, ac2},
      {3, "table5 Bayesian limits", 1.0, ac3},
      {4, "zero-class probability", 0.0, ac4},
      {5, "JJ propriety gate", 0.0, ac5},
      {6, "z-Poisson marginalization", 10.0, ac6},
      {7, "NB marginalization", 0.0, ac7},
      {8, "risk oracle", 0.0, ac8},
      {9, "dispersion experiment", 10.0, ac9},
      {10, "entropy maximality", 0.0, ac10},
      {11, "invariance suite", 0.0, ac11},
      {12, "JJ divergence", 0.0, ac12},
  };
  return all;
}

bool run_one(const Criterion& c) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool pass = o.pass;
  std::string timing = fmt("%.3f", secs) + "s";
  if (c.time_limit_s > 0.0) {
    timing += " (limit " + fmt("%g", c.time_limit_s) + "s)";
    if (secs >= c.time_limit_s) pass = false;
  }
  std::printf("AC%-2d %s  %-36s %s [%s]\n", c.id, pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), timing.c_str());
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  int failed = 0;
  int ran = 0;
  for (const Criterion& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    if (!run_one(c)) ++failed;
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  if (only == 0) std::printf("%d/%d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
