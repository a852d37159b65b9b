#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cavsense {

enum class SpectrumUnit {
  shot_normalized_power,
  displacement_psd_m2_per_hz,
  displacement_asd_m_per_rthz,
};

std::string to_string(SpectrumUnit unit);

/// Spectrum-analyzer acquisition settings.
struct AnalyzerSettings {
  double rbw_hz = 1.0;
  int n_averages = 1;
  double f_start_hz = 0.0;
  double f_stop_hz = 0.0;
  int n_points = 2;
  std::uint64_t seed = 0;

  /// Throws ValidationError on rbw <= 0, f_start >= f_stop, n_points < 2,
  /// or n_averages < 1.
  void validate() const;
};

/// Frequency grid + values + unit tag; the universal I/O record.
/// All power spectral densities are one-sided.
struct Spectrum {
  std::vector<double> frequencies_hz;
  std::vector<double> values;
  SpectrumUnit unit = SpectrumUnit::shot_normalized_power;
  std::optional<AnalyzerSettings> settings;

  /// Throws ValidationError unless sizes match, frequencies are strictly
  /// increasing and values are non-negative.
  void validate() const;
};

}  // namespace cavsense
