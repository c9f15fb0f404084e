#include "zcd/rng.hpp"

#include <cmath>

#include "zcd/numerics.hpp"

namespace zcd {

std::string prng_description() {
  return std::string(kPrngName) + "/seed_seq(seed,tag,index) stream-scheme v" +
         std::to_string(kStreamSchemeVersion);
}

Engine substream(std::uint64_t seed, StreamTag tag, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return Engine(seq);
}

double uniform_open01(Engine& eng) {
  return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
}

double standard_normal(Engine& eng) {
  for (;;) {
    const double u = 2.0 * uniform_open01(eng) - 1.0;
    const double v = 2.0 * uniform_open01(eng) - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

namespace {

std::uint64_t poisson_inversion(Engine& eng, double theta) {
  const double u = uniform_open01(eng);
  double p = std::exp(-theta);
  double cdf = p;
  std::uint64_t x = 0;
  while (u > cdf && x < 1000) {
    ++x;
    p *= theta / static_cast<double>(x);
    cdf += p;
  }
  return x;
}

// Hormann (1993), "The transformed rejection method for generating Poisson
// random variables".
std::uint64_t poisson_ptrs(Engine& eng, double theta) {
  const double slam = std::sqrt(theta);
  const double loglam = std::log(theta);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = uniform_open01(eng) - 0.5;
    const double v = uniform_open01(eng);
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + theta + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -theta + k * loglam - log_gamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

}  // namespace

std::uint64_t poisson_variate(Engine& eng, double theta) {
  if (!(theta >= 0.0) || !std::isfinite(theta)) throw DomainError("poisson_variate: theta must be finite and >= 0");
  if (theta == 0.0) return 0;
  if (theta < 10.0) return poisson_inversion(eng, theta);
  return poisson_ptrs(eng, theta);
}

double gamma_variate(Engine& eng, double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0)) throw DomainError("gamma_variate: shape and scale must be > 0");
  if (shape < 1.0) {
    const double g = gamma_variate(eng, shape + 1.0, scale);
    return g * std::pow(uniform_open01(eng), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = standard_normal(eng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_open01(eng);
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
  }
}

}  // namespace zcd
