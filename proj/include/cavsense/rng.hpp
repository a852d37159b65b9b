#pragma once

#include <cstdint>

namespace cavsense::rng {

/// SplitMix64 output mixing function (Steele/Lea/Vigna constants).
std::uint64_t mix64(std::uint64_t z);

/// Small, fully specified generator used for trace synthesis. The state
/// advances by the 64-bit golden-ratio increment 0x9E3779B97F4A7C15 and each
/// output is mix64 of the new state. std:: engines/distributions are avoided
/// on purpose: their streams are not specified portably.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  /// Uniform double in (0, 1], from the top 53 bits of next().
  double uniform();

  /// Standard normal via the Marsaglia polar method (second value discarded).
  double normal();

  /// Gamma(shape, 1) via Marsaglia-Tsang; requires shape >= 1.
  double gamma(double shape);

 private:
  std::uint64_t state_;
};

/// Multiplicative averaging noise for one analyzer bin: a draw of
/// chi^2_{2N} / (2N) (= Gamma(N,1)/N), N = n_averages, from a stream derived
/// only from (seed, bin_index). Bins are therefore independent of evaluation
/// order and may be computed concurrently.
double averaged_power_factor(std::uint64_t seed, std::uint64_t bin_index,
                             int n_averages);

}  // namespace cavsense::rng
