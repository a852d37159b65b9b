#include "cavsense/spectrum.hpp"

#include "cavsense/errors.hpp"

namespace cavsense {

std::string to_string(SpectrumUnit unit) {
  switch (unit) {
    case SpectrumUnit::shot_normalized_power: return "shot_normalized_power";
    case SpectrumUnit::displacement_psd_m2_per_hz: return "displacement_psd_m2_per_hz";
    case SpectrumUnit::displacement_asd_m_per_rthz: return "displacement_asd_m_per_rthz";
  }
  return "unknown";
}

void AnalyzerSettings::validate() const {
  if (!(rbw_hz > 0.0)) throw ValidationError("rbw must be > 0");
  if (n_averages < 1) throw ValidationError("n_averages must be >= 1");
  if (!(f_start_hz < f_stop_hz)) throw ValidationError("f_start must be < f_stop");
  if (n_points < 2) throw ValidationError("n_points must be >= 2");
}

void Spectrum::validate() const {
  if (frequencies_hz.size() != values.size())
    throw ValidationError("spectrum frequency/value lengths differ");
  for (std::size_t i = 0; i + 1 < frequencies_hz.size(); ++i) {
    if (!(frequencies_hz[i] < frequencies_hz[i + 1]))
      throw ValidationError("spectrum frequencies must be strictly increasing");
  }
  for (double v : values) {
    if (!(v >= 0.0)) throw ValidationError("spectrum values must be >= 0");
  }
}

}  // namespace cavsense
