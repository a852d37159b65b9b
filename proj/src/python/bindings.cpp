#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "cavsense/calibration.hpp"
#include "cavsense/config.hpp"
#include "cavsense/constants.hpp"
#include "cavsense/detection.hpp"
#include "cavsense/errors.hpp"
#include "cavsense/fitting.hpp"
#include "cavsense/mechanics.hpp"
#include "cavsense/optics.hpp"
#include "cavsense/rng.hpp"
#include "cavsense/spectrum.hpp"
#include "cavsense/thermal.hpp"

namespace py = pybind11;
using namespace cavsense;

PYBIND11_MODULE(_core, m) {
  m.doc() = "cavity displacement-sensor toolkit (C++ core)";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  auto constants = m.def_submodule("constants");
  constants.attr("planck") = cavsense::constants::planck;
  constants.attr("speed_of_light") = cavsense::constants::speed_of_light;
  constants.attr("boltzmann") = cavsense::constants::boltzmann;
  constants.attr("hbar") = cavsense::constants::hbar;

  // optics
  py::class_<OpticalCavity>(m, "OpticalCavity")
      .def(py::init<double, double, double, double, std::optional<double>>(),
           py::arg("length_m"), py::arg("wavelength_m"),
           py::arg("coupler_transmission"), py::arg("losses"),
           py::arg("measured_finesse") = std::nullopt)
      .def_property_readonly("length", &OpticalCavity::length)
      .def_property_readonly("wavelength", &OpticalCavity::wavelength)
      .def_property_readonly("coupler_transmission",
                             &OpticalCavity::coupler_transmission)
      .def_property_readonly("losses", &OpticalCavity::losses)
      .def_property_readonly("measured_finesse",
                             [](const OpticalCavity& c) { return c.measured_finesse(); })
      .def_property_readonly("derived_finesse", &OpticalCavity::derived_finesse)
      .def_property_readonly("finesse", &OpticalCavity::finesse);

  py::class_<Beam>(m, "Beam")
      .def(py::init<double, double>(), py::arg("power_w"),
           py::arg("quantum_efficiency"))
      .def_property_readonly("power", &Beam::power)
      .def_property_readonly("quantum_efficiency", &Beam::quantum_efficiency);

  py::class_<DerivedCavity>(m, "DerivedCavity")
      .def_readonly("finesse", &DerivedCavity::finesse)
      .def_readonly("free_spectral_range_hz", &DerivedCavity::free_spectral_range_hz)
      .def_readonly("bandwidth_hz", &DerivedCavity::bandwidth_hz);

  m.def("derive_cavity", &derive_cavity, py::arg("cavity"));
  m.def("photon_flux", &photon_flux, py::arg("beam"), py::arg("cavity"));
  m.def("phase_shift_per_displacement", &phase_shift_per_displacement,
        py::arg("cavity"));
  m.def("shot_noise_phase", &shot_noise_phase, py::arg("beam"), py::arg("cavity"));
  m.def("dx_min_static", &dx_min_static, py::arg("cavity"), py::arg("beam"));
  m.def("dx_min", &dx_min, py::arg("cavity"), py::arg("beam"),
        py::arg("frequency_hz"));

  // mechanics
  py::class_<MechanicalMode>(m, "MechanicalMode")
      .def(py::init<double, double, double>(), py::arg("resonance_frequency_hz"),
           py::arg("quality_factor"), py::arg("static_susceptibility_m_per_n"))
      .def_property_readonly("resonance_frequency", &MechanicalMode::resonance_frequency)
      .def_property_readonly("quality_factor", &MechanicalMode::quality_factor)
      .def_property_readonly("static_susceptibility",
                             &MechanicalMode::static_susceptibility);

  py::class_<RadiationPressureDrive>(m, "RadiationPressureDrive")
      .def(py::init<double, double, double>(),
           py::arg("intensity_modulation_photons_per_s"), py::arg("wavelength_m"),
           py::arg("modulation_frequency_hz"))
      .def_static("from_power_modulation",
                  &RadiationPressureDrive::from_power_modulation,
                  py::arg("power_modulation_w"), py::arg("wavelength_m"),
                  py::arg("modulation_frequency_hz"))
      .def_property_readonly("intensity_modulation",
                             &RadiationPressureDrive::intensity_modulation)
      .def_property_readonly("wavelength", &RadiationPressureDrive::wavelength)
      .def_property_readonly("modulation_frequency",
                             &RadiationPressureDrive::modulation_frequency);

  py::class_<SpatialModes>(m, "SpatialModes")
      .def(py::init<double, double>(), py::arg("optical_waist_m"),
           py::arg("acoustic_waist_m"))
      .def_readwrite("optical_waist_m", &SpatialModes::optical_waist_m)
      .def_readwrite("acoustic_waist_m", &SpatialModes::acoustic_waist_m);

  m.def("susceptibility", &susceptibility, py::arg("mode"), py::arg("frequency_hz"));
  m.def("effective_mass", &effective_mass, py::arg("mode"));
  m.def("radiation_force", &radiation_force, py::arg("drive"));
  m.def("driven_response", &driven_response, py::arg("mode"), py::arg("drive"));
  m.def("spatial_overlap", &spatial_overlap, py::arg("modes"));

  // thermal
  py::class_<ThermalEnvironment>(m, "ThermalEnvironment")
      .def(py::init<double>(), py::arg("temperature_k"))
      .def_property_readonly("temperature", &ThermalEnvironment::temperature);

  m.def("thermal_psd", &thermal_psd, py::arg("mode"), py::arg("env"),
        py::arg("frequency_hz"));
  m.def("thermal_variance", &thermal_variance, py::arg("mode"), py::arg("env"),
        py::arg("f_lo_hz"), py::arg("f_hi_hz"));
  m.def("full_band_low", &full_band_low, py::arg("mode"));
  m.def("full_band_high", &full_band_high, py::arg("mode"));

  // spectra / detection
  py::enum_<SpectrumUnit>(m, "SpectrumUnit")
      .value("shot_normalized_power", SpectrumUnit::shot_normalized_power)
      .value("displacement_psd_m2_per_hz", SpectrumUnit::displacement_psd_m2_per_hz)
      .value("displacement_asd_m_per_rthz", SpectrumUnit::displacement_asd_m_per_rthz);

  py::class_<AnalyzerSettings>(m, "AnalyzerSettings")
      .def(py::init([](double rbw, int n_averages, double f_start, double f_stop,
                       int n_points, std::uint64_t seed) {
             AnalyzerSettings s{rbw, n_averages, f_start, f_stop, n_points, seed};
             s.validate();
             return s;
           }),
           py::arg("rbw_hz"), py::arg("n_averages"), py::arg("f_start_hz"),
           py::arg("f_stop_hz"), py::arg("n_points"), py::arg("seed"))
      .def_readwrite("rbw_hz", &AnalyzerSettings::rbw_hz)
      .def_readwrite("n_averages", &AnalyzerSettings::n_averages)
      .def_readwrite("f_start_hz", &AnalyzerSettings::f_start_hz)
      .def_readwrite("f_stop_hz", &AnalyzerSettings::f_stop_hz)
      .def_readwrite("n_points", &AnalyzerSettings::n_points)
      .def_readwrite("seed", &AnalyzerSettings::seed);

  py::class_<Spectrum>(m, "Spectrum")
      .def(py::init<>())
      .def_readwrite("frequencies_hz", &Spectrum::frequencies_hz)
      .def_readwrite("values", &Spectrum::values)
      .def_readwrite("unit", &Spectrum::unit)
      .def_readwrite("settings", &Spectrum::settings)
      .def("validate", &Spectrum::validate);

  py::enum_<ConversionMode>(m, "ConversionMode")
      .value("noise", ConversionMode::noise)
      .value("coherent_drive", ConversionMode::coherent_drive);

  m.def("normalized_thermal_spectrum", &normalized_thermal_spectrum,
        py::arg("cavity"), py::arg("beam"), py::arg("mode"), py::arg("env"),
        py::arg("frequency_hz"));
  m.def("normalized_drive_power", &normalized_drive_power, py::arg("cavity"),
        py::arg("beam"), py::arg("mode"), py::arg("drive"), py::arg("rbw_hz"));
  m.def("equivalent_displacement", &equivalent_displacement, py::arg("spectrum"),
        py::arg("cavity"), py::arg("beam"), py::arg("mode"));
  m.def("synthesize_trace", &synthesize_trace, py::arg("analytic"),
        py::arg("settings"));
  m.def("averaged_power_factor", &rng::averaged_power_factor, py::arg("seed"),
        py::arg("bin_index"), py::arg("n_averages"));

  // calibration
  py::class_<ModeCleaner>(m, "ModeCleaner")
      .def(py::init<double>(), py::arg("bandwidth_hwhm_hz"))
      .def_property_readonly("bandwidth_hwhm", &ModeCleaner::bandwidth_hwhm);

  py::class_<FmCalibrationPoint>(m, "FmCalibrationPoint")
      .def_readonly("fm_amplitude_hz", &FmCalibrationPoint::fm_amplitude_hz)
      .def_readonly("normalized_power", &FmCalibrationPoint::normalized_power);

  m.def("fm_to_displacement", &fm_to_displacement, py::arg("cavity"),
        py::arg("fm_amplitude_hz"));
  m.def("displacement_to_fm", &displacement_to_fm, py::arg("cavity"),
        py::arg("displacement_m"));
  m.def("mode_cleaner_intensity_modulation", &mode_cleaner_intensity_modulation,
        py::arg("mode_cleaner"), py::arg("fm_amplitude_hz"));
  m.def(
      "calibration_curve",
      [](const OpticalCavity& cavity, const Beam& beam,
         const std::vector<double>& amplitudes, double frequency, double rbw) {
        return calibration_curve(cavity, beam, amplitudes, frequency, rbw);
      },
      py::arg("cavity"), py::arg("beam"), py::arg("fm_amplitudes_hz"),
      py::arg("measurement_frequency_hz"), py::arg("rbw_hz"));
  m.def(
      "log_log_slope",
      [](const std::vector<FmCalibrationPoint>& pts) { return log_log_slope(pts); },
      py::arg("points"));
  m.def("shot_floor_fm", &shot_floor_fm, py::arg("cavity"), py::arg("beam"),
        py::arg("frequency_hz"), py::arg("technical_floor_hz_per_rthz") = 0.0);

  // fitting
  py::class_<LorentzianModel>(m, "LorentzianModel")
      .def(py::init([](double center, double q, double amplitude, double offset) {
             return LorentzianModel{center, q, amplitude, offset};
           }),
           py::arg("center_hz"), py::arg("quality_factor"), py::arg("peak_amplitude"),
           py::arg("offset"))
      .def_readwrite("center_hz", &LorentzianModel::center_hz)
      .def_readwrite("quality_factor", &LorentzianModel::quality_factor)
      .def_readwrite("peak_amplitude", &LorentzianModel::peak_amplitude)
      .def_readwrite("offset", &LorentzianModel::offset);

  py::class_<LorentzianFitResult>(m, "LorentzianFitResult")
      .def_readonly("model", &LorentzianFitResult::model)
      .def_readonly("residual_norm", &LorentzianFitResult::residual_norm)
      .def_readonly("iterations", &LorentzianFitResult::iterations)
      .def_readonly("converged", &LorentzianFitResult::converged)
      .def_readonly("parameter_uncertainties",
                    &LorentzianFitResult::parameter_uncertainties)
      .def_readonly("cost_trace", &LorentzianFitResult::cost_trace);

  py::enum_<FitWeights>(m, "FitWeights")
      .value("none", FitWeights::none)
      .value("chi_squared", FitWeights::chi_squared);

  m.def("lorentzian_eval", &lorentzian_eval, py::arg("model"), py::arg("frequency_hz"));
  m.def("lorentzian_jacobian", &lorentzian_jacobian, py::arg("model"),
        py::arg("frequency_hz"));
  m.def("fit_lorentzian", &fit_lorentzian, py::arg("spectrum"),
        py::arg("initial") = std::nullopt, py::arg("weights") = FitWeights::none);

  // config
  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def_static("defaults", &ExperimentConfig::defaults)
      .def_static("parse", &ExperimentConfig::parse, py::arg("text"))
      .def_static("load", &ExperimentConfig::load, py::arg("path"))
      .def_readonly("cavity", &ExperimentConfig::cavity)
      .def_readonly("beam", &ExperimentConfig::beam)
      .def_readonly("mode", &ExperimentConfig::mode)
      .def_readonly("environment", &ExperimentConfig::environment)
      .def_readonly("mode_cleaner", &ExperimentConfig::mode_cleaner)
      .def_readonly("spatial", &ExperimentConfig::spatial)
      .def_readonly("drive", &ExperimentConfig::drive)
      .def_readonly("analyzer", &ExperimentConfig::analyzer)
      .def_readonly("analyzer_center_hz", &ExperimentConfig::analyzer_center_hz)
      .def_readonly("analyzer_span_hz", &ExperimentConfig::analyzer_span_hz);
}
