#include "cavsense/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "cavsense/constants.hpp"
#include "cavsense/errors.hpp"

namespace cavsense {

namespace {

struct RawConfig {
  // raw values in config-file units; std::nullopt = use default
  std::optional<double> length_mm, wavelength_nm, coupler_transmission_ppm,
      losses_ppm, measured_finesse, power_uw, quantum_efficiency,
      resonance_frequency_mhz, quality_factor, static_susceptibility,
      temperature_k, mode_cleaner_bandwidth_mhz, optical_waist_um,
      acoustic_waist_mm, drive_force_n, drive_power_w, drive_frequency_mhz,
      rbw_hz, averages, span_hz, center_mhz, points, seed;
};

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& value, const std::string& key, int line) {
  try {
    std::size_t used = 0;
    const double x = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    if (!std::isfinite(x)) throw std::invalid_argument("not finite");
    return x;
  } catch (const std::exception&) {
    throw ValidationError("line " + std::to_string(line) + ": key '" + key +
                          "': cannot parse value '" + value + "'");
  }
}

RawConfig parse_raw(const std::string& text) {
  const std::map<std::string, std::optional<double> RawConfig::*> keys = {
      {"length_mm", &RawConfig::length_mm},
      {"wavelength_nm", &RawConfig::wavelength_nm},
      {"coupler_transmission_ppm", &RawConfig::coupler_transmission_ppm},
      {"losses_ppm", &RawConfig::losses_ppm},
      {"measured_finesse", &RawConfig::measured_finesse},
      {"power_uW", &RawConfig::power_uw},
      {"quantum_efficiency", &RawConfig::quantum_efficiency},
      {"resonance_frequency_MHz", &RawConfig::resonance_frequency_mhz},
      {"quality_factor", &RawConfig::quality_factor},
      {"static_susceptibility_m_per_N", &RawConfig::static_susceptibility},
      {"temperature_K", &RawConfig::temperature_k},
      {"mode_cleaner_bandwidth_MHz", &RawConfig::mode_cleaner_bandwidth_mhz},
      {"optical_waist_um", &RawConfig::optical_waist_um},
      {"acoustic_waist_mm", &RawConfig::acoustic_waist_mm},
      {"drive_force_N", &RawConfig::drive_force_n},
      {"drive_power_W", &RawConfig::drive_power_w},
      {"drive_frequency_MHz", &RawConfig::drive_frequency_mhz},
      {"rbw_Hz", &RawConfig::rbw_hz},
      {"averages", &RawConfig::averages},
      {"span_Hz", &RawConfig::span_hz},
      {"center_MHz", &RawConfig::center_mhz},
      {"points", &RawConfig::points},
      {"seed", &RawConfig::seed},
  };

  RawConfig raw;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("line " + std::to_string(lineno) +
                            ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = keys.find(key);
    if (it == keys.end())
      throw ValidationError("line " + std::to_string(lineno) + ": unknown key '" +
                            key + "'");
    auto& slot = raw.*(it->second);
    if (slot)
      throw ValidationError("line " + std::to_string(lineno) + ": duplicate key '" +
                            key + "'");
    slot = parse_number(value, key, lineno);
  }
  return raw;
}

ExperimentConfig from_raw(const RawConfig& raw) {
  // reference instrument values fill any key not present
  const double length_m = raw.length_mm.value_or(1.06) * 1e-3;
  const double wavelength_m = raw.wavelength_nm.value_or(810.0) * 1e-9;
  const double tc = raw.coupler_transmission_ppm.value_or(60.0) * 1e-6;
  const double losses = raw.losses_ppm.value_or(109.0) * 1e-6;
  const double power_w = raw.power_uw.value_or(100.0) * 1e-6;
  const double eta = raw.quantum_efficiency.value_or(0.91);
  const double f_m = raw.resonance_frequency_mhz.value_or(2.0) * 1e6;
  const double q = raw.quality_factor.value_or(44000.0);
  const double chi0 = raw.static_susceptibility.value_or(3.2e-11);
  const double temp = raw.temperature_k.value_or(300.0);
  const double mc_bw = raw.mode_cleaner_bandwidth_mhz.value_or(1.0) * 1e6;
  const double w0 = raw.optical_waist_um.value_or(90.0) * 1e-6;
  const double wac = raw.acoustic_waist_mm.value_or(3.4) * 1e-3;

  if (!(tc > 0.0) || !(tc + losses > 0.0))
    throw ValidationError(
        "keys 'coupler_transmission_ppm'/'losses_ppm': T_c + A must be > 0 "
        "and T_c > 0");

  if (raw.drive_force_n && raw.drive_power_w)
    throw ValidationError(
        "keys 'drive_force_N' and 'drive_power_W' are mutually exclusive");

  const double drive_freq = raw.drive_frequency_mhz
                                ? *raw.drive_frequency_mhz * 1e6
                                : f_m;
  // force F = 2 hbar k dI  =>  dI = F lambda / (4 pi hbar)
  double intensity_modulation;
  if (raw.drive_power_w) {
    intensity_modulation = *raw.drive_power_w * wavelength_m /
                           (constants::planck * constants::speed_of_light);
  } else {
    const double force = raw.drive_force_n.value_or(1.2e-9);
    intensity_modulation =
        force * wavelength_m / (4.0 * constants::pi * constants::hbar);
  }

  const double center = raw.center_mhz ? *raw.center_mhz * 1e6 : f_m;
  const double span = raw.span_hz.value_or(500.0);
  if (!(span > 0.0)) throw ValidationError("key 'span_Hz': span must be > 0");

  const double averages_d = raw.averages.value_or(1000.0);
  const double points_d = raw.points.value_or(500.0);
  const double seed_d = raw.seed.value_or(12345.0);
  if (averages_d < 1.0 || averages_d != std::floor(averages_d))
    throw ValidationError("key 'averages': must be a positive integer");
  if (points_d < 2.0 || points_d != std::floor(points_d))
    throw ValidationError("key 'points': must be an integer >= 2");
  if (seed_d < 0.0 || seed_d != std::floor(seed_d))
    throw ValidationError("key 'seed': must be a non-negative integer");

  AnalyzerSettings analyzer;
  analyzer.rbw_hz = raw.rbw_hz.value_or(1.0);
  analyzer.n_averages = static_cast<int>(averages_d);
  analyzer.f_start_hz = center - span / 2.0;
  analyzer.f_stop_hz = center + span / 2.0;
  analyzer.n_points = static_cast<int>(points_d);
  analyzer.seed = static_cast<std::uint64_t>(seed_d);
  analyzer.validate();

  std::optional<double> measured;
  if (raw.measured_finesse) measured = *raw.measured_finesse;

  try {
    return ExperimentConfig{
        OpticalCavity(length_m, wavelength_m, tc, losses, measured),
        Beam(power_w, eta),
        MechanicalMode(f_m, q, chi0),
        ThermalEnvironment(temp),
        ModeCleaner(mc_bw),
        SpatialModes{w0, wac},
        RadiationPressureDrive(intensity_modulation, wavelength_m, drive_freq),
        analyzer,
        center,
        span,
    };
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
}

}  // namespace

ExperimentConfig ExperimentConfig::defaults() { return from_raw(RawConfig{}); }

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  return from_raw(parse_raw(text));
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

}  // namespace cavsense
