// cavity-sense: sensitivity, spectra, calibration and resonance fits for a
// high-finesse displacement sensor, driven by a flat key=value config file.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cavsense/calibration.hpp"
#include "cavsense/config.hpp"
#include "cavsense/csv.hpp"
#include "cavsense/detection.hpp"
#include "cavsense/errors.hpp"
#include "cavsense/fitting.hpp"

namespace {

using namespace cavsense;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNonConvergence = 2;
constexpr int kExitIo = 3;

ExperimentConfig load_config(const std::string& path, bool path_was_given) {
  if (!path_was_given && !std::filesystem::exists(path))
    return ExperimentConfig::defaults();
  if (!std::filesystem::exists(path))
    throw IoError("config file not found: " + path);
  return ExperimentConfig::load(path);
}

// stdout or a file, selected by --output
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw IoError("cannot open output file: " + path);
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_ = &std::cout;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag_seed,
                           std::uint64_t config_seed) {
  if (flag_seed) return *flag_seed;
  if (const char* env = std::getenv("CAVITY_SENSE_SEED")) {
    try {
      std::size_t used = 0;
      const std::string s(env);
      const unsigned long long v = std::stoull(s, &used);
      if (used != s.size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw ValidationError("CAVITY_SENSE_SEED is not a valid seed");
    }
  }
  return config_seed;
}

double db(double power_ratio) { return 10.0 * std::log10(power_ratio); }

void run_params(const ExperimentConfig& cfg, Output& out) {
  const auto derived = derive_cavity(cfg.cavity);
  std::ostream& os = out.stream();
  const double loss_derived = cfg.cavity.derived_finesse();
  os << "finesse_derived: " << format_number(loss_derived) << "\n";
  if (cfg.cavity.measured_finesse()) {
    const double measured = *cfg.cavity.measured_finesse();
    const double deviation = std::abs(measured - loss_derived) / measured;
    os << "finesse_measured: " << format_number(measured) << "\n";
    os << "finesse_deviation_percent: " << format_number(100.0 * deviation) << "\n";
    if (deviation > 0.05)
      os << "warning: loss-derived and measured finesse disagree by more than 5%\n";
  }
  os << "finesse_in_use: " << format_number(derived.finesse) << "\n";
  os << "free_spectral_range_hz: " << format_number(derived.free_spectral_range_hz)
     << "\n";
  os << "bandwidth_hz: " << format_number(derived.bandwidth_hz) << "\n";
  os << "photon_flux_per_s: " << format_number(photon_flux(cfg.beam, cfg.cavity))
     << "\n";
  os << "effective_mass_kg: " << format_number(effective_mass(cfg.mode)) << "\n";
  os << "spatial_overlap: " << format_number(spatial_overlap(cfg.spatial)) << "\n";
}

void run_sensitivity(const ExperimentConfig& cfg, std::optional<double> freq,
                     const std::string& sweep, Output& out) {
  std::ostream& os = out.stream();
  if (freq && !sweep.empty())
    throw ValidationError("--freq and --sweep are mutually exclusive");
  if (freq) {
    os << "frequency_hz: " << format_number(*freq) << "\n";
    os << "dx_min_m_per_rthz: " << format_number(dx_min(cfg.cavity, cfg.beam, *freq))
       << "\n";
    os << "fm_floor_hz_per_rthz: "
       << format_number(shot_floor_fm(cfg.cavity, cfg.beam, *freq)) << "\n";
    return;
  }
  if (sweep.empty()) throw ValidationError("one of --freq or --sweep is required");
  double f0 = 0.0, f1 = 0.0;
  long n = 0;
  char colon1 = 0, colon2 = 0;
  std::istringstream spec(sweep);
  spec >> f0 >> colon1 >> f1 >> colon2 >> n;
  if (!spec || colon1 != ':' || colon2 != ':' || !(f1 > f0) || n < 2)
    throw ValidationError("--sweep expects f0:f1:n with f1 > f0 and n >= 2");
  os << "frequency_hz,dx_min_m_per_rthz,fm_floor_hz_per_rthz\n";
  for (long i = 0; i < n; ++i) {
    const double f = f0 + (f1 - f0) * static_cast<double>(i) / (n - 1);
    os << format_number(f) << ',' << format_number(dx_min(cfg.cavity, cfg.beam, f))
       << ',' << format_number(shot_floor_fm(cfg.cavity, cfg.beam, f)) << "\n";
  }
}

void run_spectrum(const ExperimentConfig& cfg, const std::string& kind,
                  AnalyzerSettings settings, bool analytic, Output& out) {
  const bool thermal = (kind == "thermal");
  if (!thermal && kind != "excitation")
    throw ValidationError("spectrum kind must be 'thermal' or 'excitation'");

  const auto generator = [&](double f) {
    if (thermal)
      return normalized_thermal_spectrum(cfg.cavity, cfg.beam, cfg.mode,
                                         cfg.environment, f);
    const RadiationPressureDrive probe(cfg.drive.intensity_modulation(),
                                       cfg.drive.wavelength(), f);
    return 1.0 + normalized_drive_power(cfg.cavity, cfg.beam, cfg.mode, probe,
                                        settings.rbw_hz);
  };

  Spectrum spectrum;
  if (analytic) {
    settings.validate();
    spectrum.unit = SpectrumUnit::shot_normalized_power;
    spectrum.settings = settings;
    const double step =
        (settings.f_stop_hz - settings.f_start_hz) / (settings.n_points - 1);
    for (int i = 0; i < settings.n_points; ++i) {
      const double f = settings.f_start_hz + step * i;
      spectrum.frequencies_hz.push_back(f);
      spectrum.values.push_back(generator(f));
    }
  } else {
    spectrum = synthesize_trace(generator, settings);
  }

  // equivalent-displacement column; synthesized noise bins may dip below the
  // shot floor, so the raw (value-1) map is emitted as-is for them
  std::vector<double> displacement(spectrum.values.size());
  double peak = 0.0;
  for (std::size_t i = 0; i < spectrum.values.size(); ++i) {
    const double floor = dx_min(cfg.cavity, cfg.beam, spectrum.frequencies_hz[i]);
    const double v = spectrum.values[i];
    displacement[i] = thermal ? (v - 1.0) * floor * floor
                              : v * floor * floor * settings.rbw_hz;
    peak = std::max(peak, v);
  }

  std::ostream& os = out.stream();
  write_spectrum_csv(os, spectrum, displacement);
  os << "# peak_normalized_power = " << format_number(peak) << " ("
     << format_number(db(peak)) << " dB re shot noise)\n";
}

void run_calibrate(const ExperimentConfig& cfg, const std::vector<double>& amplitudes,
                   double freq, double rbw, Output& out) {
  if (amplitudes.size() < 2)
    throw ValidationError("at least 2 amplitudes are required for a slope");
  const auto points = calibration_curve(cfg.cavity, cfg.beam, amplitudes, freq, rbw);
  std::ostream& os = out.stream();
  os << "fm_amplitude_hz,normalized_power\n";
  for (const auto& p : points)
    os << format_number(p.fm_amplitude_hz) << ',' << format_number(p.normalized_power)
       << "\n";
  os << "# loglog_slope = " << format_number(log_log_slope(points)) << "\n";
  os << "# fm_floor_hz_per_rthz = "
     << format_number(shot_floor_fm(cfg.cavity, cfg.beam, freq)) << "\n";
}

int run_fit(const std::string& input, const std::string& weights_name,
            const std::string& json_path, Output& out) {
  std::ifstream in(input);
  if (!in) throw IoError("cannot open input file: " + input);
  const Spectrum spectrum = parse_spectrum_csv(in);

  FitWeights weights = FitWeights::none;
  if (weights_name == "chi2")
    weights = FitWeights::chi_squared;
  else if (weights_name != "none")
    throw ValidationError("--weights must be 'none' or 'chi2'");

  const LorentzianFitResult result = fit_lorentzian(spectrum, std::nullopt, weights);

  std::ostream& os = out.stream();
  os << "center_hz: " << format_number(result.model.center_hz) << "\n";
  os << "quality_factor: " << format_number(result.model.quality_factor) << "\n";
  os << "peak_amplitude: " << format_number(result.model.peak_amplitude) << "\n";
  os << "offset: " << format_number(result.model.offset) << "\n";
  os << "center_hz_uncertainty: " << format_number(result.parameter_uncertainties[0])
     << "\n";
  os << "quality_factor_uncertainty: "
     << format_number(result.parameter_uncertainties[1]) << "\n";
  os << "peak_amplitude_uncertainty: "
     << format_number(result.parameter_uncertainties[2]) << "\n";
  os << "offset_uncertainty: " << format_number(result.parameter_uncertainties[3])
     << "\n";
  os << "residual_norm: " << format_number(result.residual_norm) << "\n";
  os << "iterations: " << result.iterations << "\n";
  os << "converged: " << (result.converged ? "true" : "false") << "\n";

  if (!json_path.empty()) {
    nlohmann::json j{
        {"center_hz", result.model.center_hz},
        {"quality_factor", result.model.quality_factor},
        {"peak_amplitude", result.model.peak_amplitude},
        {"offset", result.model.offset},
        {"parameter_uncertainties", result.parameter_uncertainties},
        {"residual_norm", result.residual_norm},
        {"iterations", result.iterations},
        {"converged", result.converged},
    };
    std::ofstream jf(json_path, std::ios::binary);
    if (!jf) throw IoError("cannot open json output file: " + json_path);
    jf << j.dump(2) << "\n";
  }
  return result.converged ? kExitOk : kExitNonConvergence;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"high-finesse cavity displacement-sensor toolkit"};
  app.require_subcommand(1);

  struct Common {
    std::string config = "./experiment.cfg";
    bool config_given = false;
    std::string output;
  };
  const auto add_common = [](CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config, "config file (key = value)")
        ->each([&c](const std::string&) { c.config_given = true; });
    cmd->add_option("--output", c.output, "output path (default stdout)");
  };

  Common params_c;
  auto* params_cmd = app.add_subcommand("params", "derived instrument quantities");
  add_common(params_cmd, params_c);

  Common sens_c;
  std::optional<double> sens_freq;
  std::string sens_sweep;
  auto* sens_cmd = app.add_subcommand("sensitivity", "displacement/FM noise floor");
  add_common(sens_cmd, sens_c);
  sens_cmd->add_option("--freq", sens_freq, "single frequency in Hz");
  sens_cmd->add_option("--sweep", sens_sweep, "frequency sweep f0:f1:n (CSV output)");

  Common spec_c;
  std::string spec_kind;
  std::optional<double> spec_rbw, spec_span, spec_center;
  std::optional<int> spec_averages, spec_points;
  std::optional<std::uint64_t> spec_seed;
  bool spec_analytic = false;
  auto* spec_cmd = app.add_subcommand("spectrum", "synthesize an analyzer trace");
  add_common(spec_cmd, spec_c);
  spec_cmd->add_option("kind", spec_kind, "thermal | excitation")->required();
  spec_cmd->add_option("--rbw", spec_rbw, "resolution bandwidth in Hz");
  spec_cmd->add_option("--averages", spec_averages, "number of averaged scans");
  spec_cmd->add_option("--span", spec_span, "frequency span in Hz");
  spec_cmd->add_option("--center", spec_center, "center frequency in Hz");
  spec_cmd->add_option("--points", spec_points, "number of bins");
  spec_cmd->add_option("--seed", spec_seed, "trace seed (overrides env and config)");
  spec_cmd->add_flag("--analytic", spec_analytic, "emit the noise-free curve");

  Common cal_c;
  std::vector<double> cal_amplitudes;
  std::optional<double> cal_freq, cal_rbw;
  auto* cal_cmd = app.add_subcommand("calibrate", "FM calibration curve and slope");
  add_common(cal_cmd, cal_c);
  cal_cmd->add_option("--amplitudes", cal_amplitudes, "FM amplitudes in Hz")
      ->required()
      ->delimiter(',');
  cal_cmd->add_option("--freq", cal_freq, "measurement frequency in Hz");
  cal_cmd->add_option("--rbw", cal_rbw, "resolution bandwidth in Hz");

  Common fit_c;
  std::string fit_input, fit_model = "lorentzian", fit_weights = "none", fit_json;
  auto* fit_cmd = app.add_subcommand("fit", "fit a resonance in a spectrum CSV");
  add_common(fit_cmd, fit_c);
  fit_cmd->add_option("--input", fit_input, "spectrum CSV path")->required();
  fit_cmd->add_option("--model", fit_model, "fit model (lorentzian)");
  fit_cmd->add_option("--weights", fit_weights, "none | chi2");
  fit_cmd->add_option("--json", fit_json, "also write the result as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    if (*params_cmd) {
      const auto cfg = load_config(params_c.config, params_c.config_given);
      Output out(params_c.output);
      run_params(cfg, out);
    } else if (*sens_cmd) {
      const auto cfg = load_config(sens_c.config, sens_c.config_given);
      Output out(sens_c.output);
      run_sensitivity(cfg, sens_freq, sens_sweep, out);
    } else if (*spec_cmd) {
      const auto cfg = load_config(spec_c.config, spec_c.config_given);
      AnalyzerSettings settings = cfg.analyzer;
      if (spec_rbw) settings.rbw_hz = *spec_rbw;
      if (spec_averages) settings.n_averages = *spec_averages;
      const double center = spec_center.value_or(cfg.analyzer_center_hz);
      const double span = spec_span.value_or(cfg.analyzer_span_hz);
      settings.f_start_hz = center - span / 2.0;
      settings.f_stop_hz = center + span / 2.0;
      if (spec_points) settings.n_points = *spec_points;
      settings.seed = resolve_seed(spec_seed, cfg.analyzer.seed);
      settings.validate();
      Output out(spec_c.output);
      run_spectrum(cfg, spec_kind, settings, spec_analytic, out);
    } else if (*cal_cmd) {
      const auto cfg = load_config(cal_c.config, cal_c.config_given);
      Output out(cal_c.output);
      run_calibrate(cfg, cal_amplitudes,
                    cal_freq.value_or(cfg.mode.resonance_frequency()),
                    cal_rbw.value_or(cfg.analyzer.rbw_hz), out);
    } else if (*fit_cmd) {
      if (fit_model != "lorentzian")
        throw ValidationError("unknown fit model: " + fit_model);
      Output out(fit_c.output);
      return run_fit(fit_input, fit_weights, fit_json, out);
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}
