#include "cavsense/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cavsense/errors.hpp"

namespace cavsense {

namespace {

void validate_model(const LorentzianModel& m) {
  if (!(m.center_hz > 0.0)) throw ValidationError("model center must be > 0");
  if (!(m.quality_factor > 0.0)) throw ValidationError("model Q must be > 0");
  if (!(m.peak_amplitude >= 0.0)) throw ValidationError("model amplitude must be >= 0");
  if (!(m.offset >= 0.0)) throw ValidationError("model offset must be >= 0");
}

// Solve the symmetric positive definite 4x4 system A x = b in place.
// Returns false if the Cholesky factorization breaks down.
bool solve_spd4(std::array<std::array<double, 4>, 4> a, std::array<double, 4>& b) {
  std::array<std::array<double, 4>, 4> l{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = a[i][j];
      for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      if (i == j) {
        if (!(s > 0.0)) return false;
        l[i][i] = std::sqrt(s);
      } else {
        l[i][j] = s / l[j][j];
      }
    }
  }
  // forward then backward substitution
  std::array<double, 4> y{};
  for (int i = 0; i < 4; ++i) {
    double s = b[i];
    for (int k = 0; k < i; ++k) s -= l[i][k] * y[k];
    y[i] = s / l[i][i];
  }
  for (int i = 3; i >= 0; --i) {
    double s = y[i];
    for (int k = i + 1; k < 4; ++k) s -= l[k][i] * b[k];
    b[i] = s / l[i][i];
  }
  return true;
}

LorentzianModel auto_initialize(const Spectrum& spectrum) {
  const auto& f = spectrum.frequencies_hz;
  const auto& v = spectrum.values;
  const std::size_t n = v.size();

  const std::size_t peak =
      std::distance(v.begin(), std::max_element(v.begin(), v.end()));
  if (peak == 0 || peak == n - 1)
    throw ValidationError("peak on grid boundary: resonance not captured");

  // baseline from the outer 20% of bins (10% each side)
  const std::size_t k = std::max<std::size_t>(1, n / 10);
  std::vector<double> outer(v.begin(), v.begin() + k);
  outer.insert(outer.end(), v.end() - k, v.end());
  std::sort(outer.begin(), outer.end());
  const std::size_t m = outer.size();
  double offset = (m % 2 == 1) ? outer[m / 2]
                               : 0.5 * (outer[m / 2 - 1] + outer[m / 2]);

  const double center = f[peak];
  const double amplitude = v[peak] - offset;
  if (!(amplitude > 0.0))
    throw ValidationError("no peak above the baseline: resonance not captured");

  // FWHM by half-crossing interpolation on both flanks
  const double half = offset + amplitude / 2.0;
  double lo = center, hi = center;
  for (std::size_t j = peak; j > 0; --j) {
    if (v[j - 1] < half) {
      const double t = (half - v[j - 1]) / (v[j] - v[j - 1]);
      lo = f[j - 1] + t * (f[j] - f[j - 1]);
      break;
    }
  }
  for (std::size_t j = peak; j + 1 < n; ++j) {
    if (v[j + 1] < half) {
      const double t = (v[j] - half) / (v[j] - v[j + 1]);
      hi = f[j] + t * (f[j + 1] - f[j]);
      break;
    }
  }
  const double min_width = f[1] - f[0];
  const double fwhm = std::max(hi - lo, min_width);

  const double tiny = std::numeric_limits<double>::min();
  return LorentzianModel{center, center / fwhm, amplitude, std::max(offset, tiny)};
}

}  // namespace

double lorentzian_eval(const LorentzianModel& model, double frequency_hz) {
  if (!(frequency_hz > 0.0)) throw ValidationError("frequency must be > 0");
  const double g = 1.0 - (frequency_hz / model.center_hz) *
                             (frequency_hz / model.center_hz);
  const double q = model.quality_factor;
  return model.offset + model.peak_amplitude / (q * q * g * g + 1.0);
}

std::array<double, 4> lorentzian_jacobian(const LorentzianModel& model,
                                          double frequency_hz) {
  const double c = model.center_hz;
  const double q = model.quality_factor;
  const double a = model.peak_amplitude;
  const double f2 = frequency_hz * frequency_hz;
  const double g = 1.0 - f2 / (c * c);
  const double denom = q * q * g * g + 1.0;
  const double inv2 = 1.0 / (denom * denom);
  return {
      -a * (4.0 * q * q * g * f2 / (c * c * c)) * inv2,  // d/d center
      -a * (2.0 * q * g * g) * inv2,                     // d/d Q
      1.0 / denom,                                       // d/d amplitude
      1.0,                                               // d/d offset
  };
}

LorentzianFitResult fit_lorentzian(const Spectrum& spectrum,
                                   std::optional<LorentzianModel> initial,
                                   FitWeights weights) {
  spectrum.validate();
  const auto& freq = spectrum.frequencies_hz;
  const auto& vals = spectrum.values;
  const std::size_t n = vals.size();
  if (n < 8) throw ValidationError("fit requires at least 8 points");
  if (std::all_of(vals.begin(), vals.end(),
                  [&](double x) { return x == vals.front(); }))
    throw ValidationError("degenerate spectrum: all values equal");

  LorentzianModel start = initial ? *initial : auto_initialize(spectrum);
  if (initial) validate_model(start);

  std::vector<double> w(n, 1.0);
  if (weights == FitWeights::chi_squared) {
    const double tiny = std::numeric_limits<double>::min();
    for (std::size_t i = 0; i < n; ++i) {
      const double v = std::max(vals[i], tiny);
      w[i] = 1.0 / (v * v);
    }
  }

  // log-parametrization enforces positivity without constraints
  const double tiny = std::numeric_limits<double>::min();
  std::array<double, 4> theta = {
      std::log(start.center_hz), std::log(start.quality_factor),
      std::log(std::max(start.peak_amplitude, tiny)),
      std::log(std::max(start.offset, tiny))};

  const auto to_model = [](const std::array<double, 4>& th) {
    return LorentzianModel{std::exp(th[0]), std::exp(th[1]), std::exp(th[2]),
                           std::exp(th[3])};
  };
  const auto cost_of = [&](const LorentzianModel& m) {
    double c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = lorentzian_eval(m, freq[i]) - vals[i];
      c += w[i] * r * r;
    }
    return c;
  };

  LorentzianFitResult result;
  double cost = cost_of(to_model(theta));
  result.cost_trace.push_back(cost);

  double damping = 1e-3;
  bool converged = false;
  int iter = 0;
  for (iter = 0; iter < 200 && !converged; ++iter) {
    const LorentzianModel m = to_model(theta);
    const std::array<double, 4> p = {m.center_hz, m.quality_factor,
                                     m.peak_amplitude, m.offset};

    // gradient and Gram matrix of the residuals wrt the log parameters
    std::array<double, 4> grad{};
    std::array<std::array<double, 4>, 4> gram{};
    for (std::size_t i = 0; i < n; ++i) {
      const double r = lorentzian_eval(m, freq[i]) - vals[i];
      std::array<double, 4> j = lorentzian_jacobian(m, freq[i]);
      for (int a = 0; a < 4; ++a) j[a] *= p[a];  // chain rule: d/d(ln p) = p d/dp
      for (int a = 0; a < 4; ++a) {
        grad[a] += w[i] * j[a] * r;
        for (int b = 0; b <= a; ++b) gram[a][b] += w[i] * j[a] * j[b];
      }
    }
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) gram[a][b] = gram[b][a];

    const double gnorm =
        std::max({std::abs(grad[0]), std::abs(grad[1]), std::abs(grad[2]),
                  std::abs(grad[3])});
    if (gnorm / std::max(1.0, cost) < 1e-12) {
      converged = true;
      break;
    }

    bool accepted = false;
    while (damping < 1e16) {
      auto damped = gram;
      for (int a = 0; a < 4; ++a)
        damped[a][a] += damping * std::max(gram[a][a], 1e-300);
      std::array<double, 4> step = {-grad[0], -grad[1], -grad[2], -grad[3]};
      if (!solve_spd4(damped, step)) {
        damping *= 10.0;
        continue;
      }
      std::array<double, 4> trial = theta;
      for (int a = 0; a < 4; ++a) trial[a] += step[a];
      const double trial_cost = cost_of(to_model(trial));
      if (std::isfinite(trial_cost) && trial_cost <= cost) {
        theta = trial;
        cost = trial_cost;
        result.cost_trace.push_back(cost);
        damping = std::max(damping / 10.0, 1e-16);
        accepted = true;
        const double max_step = std::max(
            {std::abs(step[0]), std::abs(step[1]), std::abs(step[2]),
             std::abs(step[3])});
        if (max_step < 1e-9) converged = true;  // relative step on positive params
        break;
      }
      damping *= 10.0;
    }
    if (!accepted) break;  // no downhill step found at any damping
  }

  result.model = to_model(theta);
  result.iterations = iter;
  result.converged = converged && std::isfinite(cost);
  result.residual_norm = std::sqrt(cost);

  // local quadratic approximation: cov = s^2 (J^T W J)^-1 in raw parameters
  {
    const LorentzianModel m = result.model;
    std::array<std::array<double, 4>, 4> gram{};
    for (std::size_t i = 0; i < n; ++i) {
      const std::array<double, 4> j = lorentzian_jacobian(m, freq[i]);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b <= a; ++b) gram[a][b] += w[i] * j[a] * j[b];
    }
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) gram[a][b] = gram[b][a];
    const double dof = static_cast<double>(n) - 4.0;
    const double s2 = cost / dof;
    for (int a = 0; a < 4; ++a) {
      std::array<double, 4> e{};
      e[a] = 1.0;
      if (solve_spd4(gram, e) && e[a] >= 0.0)
        result.parameter_uncertainties[a] = std::sqrt(s2 * e[a]);
      else
        result.parameter_uncertainties[a] = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return result;
}

}  // namespace cavsense
