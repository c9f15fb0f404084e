#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "zcd/numerics.hpp"
#include "zcd/rng.hpp"

using namespace zcd;

TEST_CASE("substreams replay and differ") {
  Engine a = substream(7, StreamTag::SampleBlock, 3);
  Engine b = substream(7, StreamTag::SampleBlock, 3);
  Engine c = substream(7, StreamTag::SampleBlock, 4);
  Engine d = substream(7, StreamTag::CoverageReplicate, 3);
  Engine e = substream(7ull | (1ull << 40), StreamTag::SampleBlock, 3);
  const auto va = a();
  CHECK(va == b());
  CHECK(va != c());
  CHECK(va != d());
  CHECK(va != e());
}

TEST_CASE("the engine is the standard mt19937_64") {
  // 10000th output of a default-constructed engine, fixed by the standard.
  std::mt19937_64 eng;
  eng.discard(9999);
  CHECK(eng() == 9981545732273789042ull);
  CHECK(prng_description().find("mt19937_64") != std::string::npos);
}

TEST_CASE("uniforms lie strictly inside (0, 1)") {
  Engine eng = substream(1, StreamTag::SampleBlock, 0);
  double sum = 0.0;
  for (int i = 0; i < 200000; ++i) {
    const double u = uniform_open01(eng);
    CHECK_UNARY(u > 0.0 && u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / 200000 - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / 200000));
}

TEST_CASE("normal deviates have unit variance") {
  Engine eng = substream(2, StreamTag::SampleBlock, 0);
  constexpr int kN = 400000;
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < kN; ++i) {
    const double z = standard_normal(eng);
    s1 += z;
    s2 += z * z;
  }
  CHECK(std::abs(s1 / kN) < 4.0 / std::sqrt(kN));
  CHECK(std::abs(s2 / kN - 1.0) < 4.0 * std::sqrt(2.0 / kN));
}

TEST_CASE("poisson variates match the pmf on both sides of the method switch") {
  for (double theta : {0.3, 2.8787, 9.99, 10.0, 47.0}) {
    Engine eng = substream(3, StreamTag::SampleBlock, static_cast<std::uint64_t>(theta * 100));
    constexpr int kN = 300000;
    const int top = static_cast<int>(theta + 12.0 * std::sqrt(theta) + 12.0);
    std::vector<double> hist(top + 1, 0.0);
    double s1 = 0.0;
    for (int i = 0; i < kN; ++i) {
      const auto x = poisson_variate(eng, theta);
      s1 += static_cast<double>(x);
      if (x <= static_cast<std::uint64_t>(top)) hist[x] += 1.0;
    }
    CHECK(std::abs(s1 / kN - theta) < 4.0 * std::sqrt(theta / kN));
    for (int k = 0; k <= top; ++k) {
      const double p = oracle::poisson_pmf(k, theta);
      if (p * kN < 50.0) continue;
      CHECK(std::abs(hist[k] / kN - p) < 5.0 * std::sqrt(p * (1.0 - p) / kN));
    }
  }
  Engine eng = substream(3, StreamTag::SampleBlock, 0);
  CHECK(poisson_variate(eng, 0.0) == 0);
  CHECK_THROWS_AS(poisson_variate(eng, -1.0), DomainError);
}

TEST_CASE("gamma variates have the right mean and variance") {
  for (double shape : {0.3, 1.0, 8.0}) {
    Engine eng = substream(4, StreamTag::SampleBlock, static_cast<std::uint64_t>(shape * 10));
    constexpr int kN = 300000;
    const double scale = 0.5;
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < kN; ++i) {
      const double g = gamma_variate(eng, shape, scale);
      CHECK_UNARY(g > 0.0);
      s1 += g;
      s2 += g * g;
    }
    const double mean = s1 / kN;
    const double var = s2 / kN - mean * mean;
    const double true_var = shape * scale * scale;
    CHECK(std::abs(mean - shape * scale) < 4.0 * std::sqrt(true_var / kN));
    CHECK(std::abs(var / true_var - 1.0) < 0.03);
  }
}
