#include "zcd/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

namespace zcd {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

// Prefactor x^a e^-x / Gamma(a), in log space.
double log_gamma_prefactor(double a, double x) {
  return a * std::log(x) - x - log_gamma(a);
}

double lower_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 0; n < 100000; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) {
      return sum * std::exp(log_gamma_prefactor(a, x));
    }
  }
  throw ConvergenceError("incomplete gamma series did not converge", x, x);
}

// Modified Lentz evaluation of the continued fraction for Q(a, x).
double upper_continued_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) {
      return std::exp(log_gamma_prefactor(a, x)) * h;
    }
  }
  throw ConvergenceError("incomplete gamma continued fraction did not converge", x, x);
}

void check_inc_gamma_args(double a, double x) {
  if (!(a > 0.0)) throw DomainError("incomplete gamma: shape must be > 0");
  if (!(x >= 0.0)) throw DomainError("incomplete gamma: x must be >= 0");
}

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082,
                           0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975,
                           0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

struct ByError {
  bool operator()(const Panel& l, const Panel& r) const { return l.error < r.error; }
};

double checked_eval(const RealFn& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    throw QuadratureError("integrand is not finite at x = " + std::to_string(x), 0.0,
                          std::numeric_limits<double>::infinity());
  }
  return y;
}

Panel gauss_kronrod15(const RealFn& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double abs_half = std::abs(half);

  double fv1[7];
  double fv2[7];
  const double fc = checked_eval(f, centre);
  double res_g = fc * kWg[3];
  double res_k = fc * kWgk[7];
  double res_abs = std::abs(res_k);
  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;
    const double absc = half * kXgk[jtw];
    const double f1 = checked_eval(f, centre - absc);
    const double f2 = checked_eval(f, centre + absc);
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    res_g += kWg[j] * (f1 + f2);
    res_k += kWgk[jtw] * (f1 + f2);
    res_abs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtwm1 = 2 * j;
    const double absc = half * kXgk[jtwm1];
    const double f1 = checked_eval(f, centre - absc);
    const double f2 = checked_eval(f, centre + absc);
    fv1[jtwm1] = f1;
    fv2[jtwm1] = f2;
    res_k += kWgk[jtwm1] * (f1 + f2);
    res_abs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
  }
  const double mean = 0.5 * res_k;
  double res_asc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    res_asc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
  }
  const double result = res_k * half;
  res_abs *= abs_half;
  res_asc *= abs_half;
  double err = std::abs((res_k - res_g) * half);
  if (res_asc != 0.0 && err != 0.0) {
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  }
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * res_abs, err);
  }
  return {a, b, result, err};
}

QuadResult adaptive(const RealFn& f, double a, double b, const ToleranceConfig& tol,
                    const QuadratureOptions& opts) {
  tol.validate();
  if (opts.initial_panels < 1) throw DomainError("quadrature: initial_panels must be >= 1");

  std::priority_queue<Panel, std::vector<Panel>, ByError> heap;
  double value = 0.0;
  double error = 0.0;
  const double width = (b - a) / opts.initial_panels;
  for (int i = 0; i < opts.initial_panels; ++i) {
    const double lo = a + i * width;
    const double hi = (i + 1 == opts.initial_panels) ? b : a + (i + 1) * width;
    Panel p = gauss_kronrod15(f, lo, hi);
    value += p.value;
    error += p.error;
    heap.push(p);
  }

  auto converged = [&] { return error <= std::max(tol.abs_tol, tol.quad_rel_tol * std::abs(value)); };

  while (!converged()) {
    if (static_cast<int>(heap.size()) >= tol.quad_max_panels) {
      throw QuadratureError("quadrature panel budget exhausted", value, error);
    }
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw QuadratureError("quadrature panel cannot be subdivided further", value, error);
    }
    heap.pop();
    const Panel left = gauss_kronrod15(f, worst.a, mid);
    const Panel right = gauss_kronrod15(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum in interval order so the result does not depend on the
  // accumulated rounding of the incremental updates.
  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
  QuadResult out;
  for (const Panel& p : panels) {
    out.value += p.value;
    out.error += p.error;
  }
  out.panels = static_cast<int>(panels.size());
  return out;
}

}  // namespace

void ToleranceConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || !(quad_rel_tol > 0.0)) {
    throw DomainError("tolerances must be strictly positive");
  }
  if (max_iter < 1 || quad_max_panels < 1) {
    throw DomainError("iteration budgets must be >= 1");
  }
}

double log_gamma(double z) {
  if (!(z > 0.0)) throw DomainError("log_gamma: argument must be > 0");
  if (std::isinf(z)) return z;
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(z, &sign);
#else
  return std::lgamma(z);
#endif
}

double reg_inc_gamma_lower(double a, double x) {
  check_inc_gamma_args(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return lower_series(a, x);
  return 1.0 - upper_continued_fraction(a, x);
}

double reg_inc_gamma_upper(double a, double x) {
  check_inc_gamma_args(a, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - lower_series(a, x);
  return upper_continued_fraction(a, x);
}

double inv_reg_inc_gamma_lower(double a, double p, const ToleranceConfig& tol) {
  tol.validate();
  if (!(a > 0.0)) throw DomainError("inverse incomplete gamma: shape must be > 0");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("inverse incomplete gamma: p must lie in (0, 1)");

  auto residual = [&](double x) { return reg_inc_gamma_lower(a, x) - p; };

  // Geometric bracket expansion from x = 1.
  double lo = 0.0;
  double hi = 1.0;
  double f_hi = residual(hi);
  int iter = 0;
  if (f_hi < 0.0) {
    lo = hi;
    while (f_hi < 0.0) {
      if (++iter > tol.max_iter) throw ConvergenceError("inverse incomplete gamma: bracket expansion failed", lo, hi);
      lo = hi;
      hi *= 2.0;
      f_hi = residual(hi);
    }
  } else {
    lo = 0.5;
    while (residual(lo) > 0.0) {
      if (++iter > tol.max_iter) throw ConvergenceError("inverse incomplete gamma: bracket expansion failed", 0.0, lo);
      hi = lo;
      lo *= 0.5;
    }
  }
  double x = (lo > 0.0) ? std::sqrt(lo * hi) : 0.5 * hi;
  double best = x;
  double best_res = std::numeric_limits<double>::infinity();
  const double lg = log_gamma(a);
  for (int it = 0; it < tol.max_iter; ++it) {
    const double f = residual(x);
    if (std::abs(f) < best_res) {
      best_res = std::abs(f);
      best = x;
    }
    if (std::abs(f) <= tol.abs_tol) return x;
    if (f < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    if (hi - lo <= 2.0 * kEps * hi) return best;

    // Newton step on P, rejected if it leaves the bracket.
    const double density = std::exp((a - 1.0) * std::log(x) - x - lg);
    double next = (density > 0.0 && std::isfinite(density)) ? x - f / density : lo - 1.0;
    if (!(next > lo && next < hi)) {
      next = (lo > 0.0 && hi / lo > 4.0) ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    }
    x = next;
  }
  throw ConvergenceError("inverse incomplete gamma did not converge", lo, hi);
}

double exp_integral_e1(double x) {
  if (!(x > 0.0)) throw DomainError("E1: argument must be > 0");
  if (std::isinf(x)) return 0.0;
  if (x <= 1.0) {
    // E1(x) = -gamma_E - ln x - sum_{k>=1} (-x)^k / (k k!)
    double sum = 0.0;
    double term = 1.0;
    for (int k = 1; k < 1000; ++k) {
      term *= -x / k;
      const double contrib = term / k;
      sum += contrib;
      if (std::abs(contrib) < std::abs(sum) * kEps) break;
    }
    return -std::numbers::egamma - std::log(x) - sum;
  }
  double b = x + 1.0;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) return h * std::exp(-x);
  }
  throw ConvergenceError("E1 continued fraction did not converge", x, x);
}

QuadResult integrate_detailed(const RealFn& f, double a, double b, const ToleranceConfig& tol,
                              const QuadratureOptions& opts) {
  if (!(std::isfinite(a) && std::isfinite(b))) throw DomainError("integrate: bounds must be finite");
  if (a == b) return {};
  if (b < a) {
    QuadResult r = adaptive(f, b, a, tol, opts);
    r.value = -r.value;
    return r;
  }
  return adaptive(f, a, b, tol, opts);
}

double integrate(const RealFn& f, double a, double b, const ToleranceConfig& tol,
                 const QuadratureOptions& opts) {
  return integrate_detailed(f, a, b, tol, opts).value;
}

QuadResult integrate_semi_infinite_detailed(const RealFn& f, double lower, const ToleranceConfig& tol,
                                            const QuadratureOptions& opts) {
  if (!std::isfinite(lower)) throw DomainError("integrate_semi_infinite: lower bound must be finite");
  if (!(opts.tail_scale > 0.0)) throw DomainError("integrate_semi_infinite: tail_scale must be > 0");
  const double s = opts.tail_scale;
  const RealFn mapped = [&f, lower, s](double u) {
    const double w = 1.0 - u;
    const double y = f(lower + s * u / w);
    if (y == 0.0) return 0.0;
    return y * s / (w * w);
  };
  return adaptive(mapped, 0.0, 1.0, tol, opts);
}

double integrate_semi_infinite(const RealFn& f, double lower, const ToleranceConfig& tol,
                               const QuadratureOptions& opts) {
  return integrate_semi_infinite_detailed(f, lower, tol, opts).value;
}

}  // namespace zcd
