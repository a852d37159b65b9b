#include "cavsense/thermal.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <vector>

#include "cavsense/constants.hpp"
#include "cavsense/errors.hpp"

namespace cavsense {

ThermalEnvironment::ThermalEnvironment(double temperature_k)
    : temperature_k_(temperature_k) {
  if (!(temperature_k_ > 0.0)) throw ValidationError("temperature must be > 0");
}

double thermal_psd(const MechanicalMode& mode, const ThermalEnvironment& env,
                   double frequency_hz) {
  if (!(frequency_hz > 0.0))
    throw ValidationError("thermal_psd requires frequency > 0");
  const double omega = 2.0 * constants::pi * frequency_hz;
  const double im_chi = susceptibility(mode, frequency_hz).imag();
  return 4.0 * constants::boltzmann * env.temperature() / omega * im_chi;
}

double thermal_variance(const MechanicalMode& mode, const ThermalEnvironment& env,
                        double f_lo_hz, double f_hi_hz) {
  if (!(f_lo_hz > 0.0 && f_lo_hz < f_hi_hz))
    throw ValidationError("thermal_variance requires 0 < f_lo < f_hi");

  // split points so the quadrature cannot step over the narrow resonance
  const double fm = mode.resonance_frequency();
  const double half_span = 10.0 * fm / mode.quality_factor();
  std::vector<double> edges{f_lo_hz, f_hi_hz};
  for (double p : {fm - half_span, fm, fm + half_span}) {
    if (p > f_lo_hz && p < f_hi_hz) edges.push_back(p);
  }
  std::sort(edges.begin(), edges.end());

  const auto integrand = [&](double f) { return thermal_psd(mode, env, f); };
  using quad = boost::math::quadrature::gauss_kronrod<double, 15>;

  double total = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    double seg_err = 0.0;
    total += quad::integrate(integrand, edges[i], edges[i + 1], 15, 1e-10, &seg_err);
    error += seg_err;
  }
  if (!std::isfinite(total) || error > 1e-6 * std::abs(total))
    throw ConvergenceError("thermal_variance quadrature did not converge");
  return total;
}

double full_band_low(const MechanicalMode& mode) {
  return mode.resonance_frequency() * 1e-4;
}

double full_band_high(const MechanicalMode& mode) {
  return mode.resonance_frequency() * 1e2;
}

}  // namespace cavsense
