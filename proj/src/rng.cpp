#include "cavsense/rng.hpp"

#include <cmath>

#include "cavsense/errors.hpp"

namespace cavsense::rng {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() {
  state_ += kGolden;
  return mix64(state_);
}

double SplitMix64::uniform() {
  return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
}

double SplitMix64::normal() {
  for (;;) {
    const double u = 2.0 * uniform() - 1.0;
    const double v = 2.0 * uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

double SplitMix64::gamma(double shape) {
  if (!(shape >= 1.0)) throw ValidationError("gamma sampler requires shape >= 1");
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / (3.0 * std::sqrt(d));
  for (;;) {
    double x;
    double v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double averaged_power_factor(std::uint64_t seed, std::uint64_t bin_index,
                             int n_averages) {
  if (n_averages < 1) throw ValidationError("n_averages must be >= 1");
  SplitMix64 stream(mix64(seed + kGolden * (bin_index + 1)));
  const double n = static_cast<double>(n_averages);
  return stream.gamma(n) / n;
}

}  // namespace cavsense::rng
