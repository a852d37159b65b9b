#pragma once

#include <filesystem>
#include <string>

#include "cavsense/calibration.hpp"
#include "cavsense/mechanics.hpp"
#include "cavsense/optics.hpp"
#include "cavsense/spectrum.hpp"
#include "cavsense/thermal.hpp"

namespace cavsense {

/// Full experiment description, loaded from a flat `key = value` text file
/// with unit-suffixed keys (length_mm, power_uW, coupler_transmission_ppm,
/// ...). Unknown keys are rejected; omitted keys fall back to the documented
/// reference instrument values.
struct ExperimentConfig {
  OpticalCavity cavity;
  Beam beam;
  MechanicalMode mode;
  ThermalEnvironment environment;
  ModeCleaner mode_cleaner;
  SpatialModes spatial;
  RadiationPressureDrive drive;
  AnalyzerSettings analyzer;  // f_start/f_stop derived from span around center
  double analyzer_center_hz;
  double analyzer_span_hz;

  static ExperimentConfig defaults();

  /// Parse config text. Throws ValidationError naming the offending key/line.
  static ExperimentConfig parse(const std::string& text);

  /// Load from file. Throws IoError if unreadable.
  static ExperimentConfig load(const std::filesystem::path& path);
};

}  // namespace cavsense
