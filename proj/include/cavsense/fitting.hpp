#pragma once

#include <array>
#include <optional>
#include <vector>

#include "cavsense/spectrum.hpp"

namespace cavsense {

/// Resonance line model: the squared-magnitude shape of the constant-loss-angle
/// susceptibility, normalized so the value at f = center is offset + peak:
///
///   y(f) = offset + peak_amplitude / [ Q^2 (1 - f^2/center^2)^2 + 1 ]
struct LorentzianModel {
  double center_hz;
  double quality_factor;
  double peak_amplitude;
  double offset;
};

struct LorentzianFitResult {
  LorentzianModel model;
  double residual_norm = 0.0;  // sqrt of the final sum of squared residuals
  int iterations = 0;
  bool converged = false;
  // 1-sigma estimates from the local quadratic approximation, in the order
  // (center, Q, peak_amplitude, offset)
  std::array<double, 4> parameter_uncertainties{};
  // objective value after each accepted step (damping-logic diagnostics)
  std::vector<double> cost_trace;
};

enum class FitWeights {
  none,         // unweighted least squares (default)
  chi_squared,  // 1/value^2 weights, for averaged power spectra
};

double lorentzian_eval(const LorentzianModel& model, double frequency_hz);

/// Partial derivatives of lorentzian_eval with respect to
/// (center, Q, peak_amplitude, offset).
std::array<double, 4> lorentzian_jacobian(const LorentzianModel& model,
                                          double frequency_hz);

/// Damped least squares (Levenberg-Marquardt) fit of the four model
/// parameters to a spectrum. Parameters are log-transformed internally (all
/// are positive), the Jacobian is analytic, and the damping is multiplied by
/// 10 on a rejected step and divided by 10 on an accepted one (initial value
/// 1e-3, relative to the Gram-matrix diagonal). Converged when the relative
/// parameter step drops below 1e-9 or the scaled gradient norm below 1e-12,
/// within 200 iterations; otherwise the best iterate is returned with
/// converged = false.
///
/// Without an initial model: center = argmax bin, offset = median of the
/// outer 20% of bins, peak = max - offset, Q = center/FWHM with the FWHM from
/// half-crossing interpolation.
///
/// Throws ValidationError on fewer than 8 points, an all-equal spectrum, or
/// a peak sitting on the grid boundary.
LorentzianFitResult fit_lorentzian(const Spectrum& spectrum,
                                   std::optional<LorentzianModel> initial = std::nullopt,
                                   FitWeights weights = FitWeights::none);

}  // namespace cavsense
