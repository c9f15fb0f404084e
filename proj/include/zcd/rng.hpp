#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace zcd {

// Generator contract (recorded in every stochastic output): std::mt19937_64
// seeded through std::seed_seq from (seed, stream tag, substream index).
// Both are fully specified by the C++ standard, so draws replay bit for bit
// on any conforming library. Variate algorithms below are our own for the
// same reason; std::*_distribution output is implementation-defined.
using Engine = std::mt19937_64;

inline constexpr std::string_view kPrngName = "mt19937_64";
inline constexpr int kStreamSchemeVersion = 1;

enum class StreamTag : std::uint32_t {
  SampleBlock = 1,
  CoverageReplicate = 2,
};

std::string prng_description();

/// Independent engine for (seed, tag, index).
Engine substream(std::uint64_t seed, StreamTag tag, std::uint64_t index);

/// Uniform on the open interval (0, 1), 53-bit resolution.
double uniform_open01(Engine& eng);

/// Marsaglia polar method; the spare deviate is discarded.
double standard_normal(Engine& eng);

/// Sequential inversion for theta < 10, PTRS (transformed rejection with
/// squeeze) above.
std::uint64_t poisson_variate(Engine& eng, double theta);

/// Marsaglia-Tsang; shape < 1 goes through the shape + 1 boost.
double gamma_variate(Engine& eng, double shape, double scale);

}  // namespace zcd
