// Serial reference against the OpenMP kernels. Also checks that both paths
// return the same numbers.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

#include "zcd/marginal.hpp"
#include "zcd/montecarlo.hpp"

using namespace zcd;

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-28s serial %8.3fs  parallel %8.3fs  speedup %5.2fx  %s\n", name, serial, parallel,
              serial / parallel, same ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  bool all_same = true;

  {
    SimSummary a, b;
    const double ts = seconds([&] { a = dispersion_experiment(2.8787, 4000000, 1, Exec::Serial); });
    const double tp = seconds([&] { b = dispersion_experiment(2.8787, 4000000, 1, Exec::Parallel); });
    const bool same = a.sample_mean == b.sample_mean && a.sample_variance == b.sample_variance;
    all_same = all_same && same;
    row("poisson draws (4e6)", ts, tp, same);
  }
  {
    SimSummary a, b;
    const double ts = seconds([&] { a = simulate({NBModel{4.0, 8.0}, 2000000, 2}, Exec::Serial); });
    const double tp = seconds([&] { b = simulate({NBModel{4.0, 8.0}, 2000000, 2}, Exec::Parallel); });
    const bool same = a.sample_mean == b.sample_mean && a.sample_variance == b.sample_variance;
    all_same = all_same && same;
    row("nb draws (2e6)", ts, tp, same);
  }
  {
    const CoverageConfig cfg{2.0, 1.0, 3, prior_params(PriorKind::JR), 0.95, 400000, 3};
    CoverageResult a{}, b{};
    const double ts = seconds([&] { a = coverage_experiment(cfg, {}, Exec::Serial); });
    const double tp = seconds([&] { b = coverage_experiment(cfg, {}, Exec::Parallel); });
    const bool same = a.covered == b.covered;
    all_same = all_same && same;
    row("coverage (4e5 reps)", ts, tp, same);
  }
  {
    const auto grid = default_theta_grid(3, 801);
    MarginalComparison a, b;
    const double ts = seconds([&] { a = nb_marginal_numeric(3, grid, {}, {}, Exec::Serial); });
    const double tp = seconds([&] { b = nb_marginal_numeric(3, grid, {}, {}, Exec::Parallel); });
    const bool same = a.numeric_density == b.numeric_density;
    all_same = all_same && same;
    row("nb marginal (801 nodes)", ts, tp, same);
  }
  return all_same ? 0 : 1;
}
