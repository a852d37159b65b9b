// Acceptance suite: one check per quantitative anchor of the toolkit, each
// printed as a PASS/FAIL line. Run with no arguments for all criteria or with
// a single criterion number. Exit status = number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "cavsense/calibration.hpp"
#include "cavsense/config.hpp"
#include "cavsense/constants.hpp"
#include "cavsense/csv.hpp"
#include "cavsense/detection.hpp"
#include "cavsense/fitting.hpp"
#include "cavsense/rng.hpp"

using namespace cavsense;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("[%2d] %s  %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
  if (!pass) ++g_failures;
}

std::string pct(double deviation) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f%%", 100.0 * deviation);
  return buf;
}

double rel(double value, double target) {
  return std::abs(value - target) / std::abs(target);
}

// criteria 1-2: measured sensitivity anchors, each evaluated in < 1 ms
void criterion_sensitivity(int id, double frequency, double target) {
  const auto cfg = ExperimentConfig::defaults();
  volatile double sink = dx_min(cfg.cavity, cfg.beam, frequency);  // warm up
  const auto t0 = std::chrono::steady_clock::now();
  const double value = dx_min(cfg.cavity, cfg.beam, frequency);
  const auto t1 = std::chrono::steady_clock::now();
  sink = value;
  (void)sink;
  const double us = std::chrono::duration<double, std::micro>(t1 - t0).count();
  const double dev = rel(value, target);
  std::ostringstream detail;
  detail << "dx_min(" << frequency / 1e6 << " MHz) = " << format_number(value)
         << " m/rtHz, target " << target << " +-5% (dev " << pct(dev)
         << ", runtime " << us << " us)";
  report(id, dev < 0.05 && us < 1000.0, detail.str());
}

void criterion_3() {
  const auto cfg = ExperimentConfig::defaults();
  const double fm2 = shot_floor_fm(cfg.cavity, cfg.beam, 2.0e6);
  const double fm05 = shot_floor_fm(cfg.cavity, cfg.beam, 5.0e5);
  const double dev2 = rel(fm2, 0.096);
  const double dev05 = rel(fm05, 0.068);
  std::ostringstream detail;
  detail << "shot_floor_fm = " << format_number(fm2) << " Hz/rtHz @2 MHz (target "
         << "96 mHz +-5%, dev " << pct(dev2) << "), " << format_number(fm05)
         << " @500 kHz (target 68 mHz +-5%, dev " << pct(dev05) << ")";
  report(3, dev2 < 0.05 && dev05 < 0.05, detail.str());
}

void criterion_4() {
  const auto cfg = ExperimentConfig::defaults();
  const auto d = derive_cavity(cfg.cavity);
  const double dev_f = rel(d.finesse, 37000.0);
  const double dev_fsr = rel(d.free_spectral_range_hz, 141e9);
  const double dev_bw = rel(d.bandwidth_hz, 1.9e6);
  std::ostringstream detail;
  detail << "finesse dev " << pct(dev_f) << " (<1%), FSR dev " << pct(dev_fsr)
         << " (<0.5%), bandwidth dev " << pct(dev_bw) << " (<3%)";
  report(4, dev_f < 0.01 && dev_fsr < 0.005 && dev_bw < 0.03, detail.str());
}

void criterion_5() {
  const auto cfg = ExperimentConfig::defaults();
  const double amp = std::abs(susceptibility(cfg.mode, 2.0e6)) * 1.2e-9;
  const double dev = rel(amp, 1.6e-15);
  std::ostringstream detail;
  detail << "driven amplitude = " << format_number(amp) << " m, target 1.6e-15 +-10% "
         << "(dev " << pct(dev) << ")";
  report(5, dev < 0.10, detail.str());
}

void criterion_6() {
  const double total = 2.0 * constants::pi / 3e5;
  const OpticalCavity projected(1.06e-3, 810e-9, total - 1e-6, 1e-6, 3e5);
  const Beam miliwatt(1e-3, 0.91);
  const double floor = dx_min(projected, miliwatt, 1.0);
  std::ostringstream detail;
  detail << "projected floor (F=3e5, P=1 mW, f<<bandwidth) = " << format_number(floor)
         << " m/rtHz < 1e-20";
  report(6, floor < 1e-20, detail.str());
}

void criterion_7() {
  const ThermalEnvironment room(300.0);
  const double target = constants::boltzmann * 300.0 * 3.2e-11;
  const double s = std::sqrt(10.0);
  bool pass = true;
  std::ostringstream detail;
  detail << "equipartition over [f_M/sqrt(10), f_M*sqrt(10)]:";
  for (double q : {1e2, 1e4, 1e6}) {
    const MechanicalMode mode(2.0e6, q, 3.2e-11);
    const double var = thermal_variance(mode, room, 2.0e6 / s, 2.0e6 * s);
    const double dev = rel(var, target);
    detail << " Q=" << q << " dev " << pct(dev) << ";";
    pass = pass && dev < 0.005;
  }
  detail << " tol 0.5%";
  report(7, pass, detail.str());
}

void criterion_8() {
  const auto cfg = ExperimentConfig::defaults();
  std::vector<double> amplitudes;
  for (int i = 0; i < 10; ++i) amplitudes.push_back(0.02 * std::pow(3.0, i));
  const auto points =
      calibration_curve(cfg.cavity, cfg.beam, amplitudes, 2.0e6, 1.0);
  const double slope = log_log_slope(points);
  std::ostringstream detail;
  detail << "calibration log-log slope = " << format_number(slope)
         << " (|slope-2| = " << std::abs(slope - 2.0) << " < 1e-6)";
  report(8, std::abs(slope - 2.0) < 1e-6, detail.str());
}

void criterion_9() {
  const auto t0 = std::chrono::steady_clock::now();
  const LorentzianModel truth{2.0e6, 44000.0, 2.2235e4, 1.0};
  const int n_seeds = 500;
  int ok = 0;
  for (int seed = 0; seed < n_seeds; ++seed) {
    const AnalyzerSettings settings{1.0, 1000, 2.0e6 - 250.0, 2.0e6 + 250.0, 500,
                                    static_cast<std::uint64_t>(seed)};
    const auto trace = synthesize_trace(
        [&](double f) { return lorentzian_eval(truth, f); }, settings);
    const auto fit = fit_lorentzian(trace);
    if (fit.converged &&
        std::abs(fit.model.quality_factor - 44000.0) / 44000.0 < 0.05)
      ++ok;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream detail;
  detail << "Q within 5% in " << ok << "/" << n_seeds << " seeded traces (need >=475), "
         << seconds << " s (< 30 s)";
  report(9, ok >= 475 && seconds < 30.0, detail.str());
}

void criterion_10() {
  rng::SplitMix64 gen(777);
  bool pass = true;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const LorentzianModel m{
        std::pow(10.0, 3.0 + 4.0 * gen.uniform()),
        std::pow(10.0, 1.0 + 4.0 * gen.uniform()),
        std::pow(10.0, -2.0 + 9.0 * gen.uniform()),
        std::pow(10.0, -2.0 + 3.0 * gen.uniform()),
    };
    for (double u : {1.0, 1.0 + 0.5 / m.quality_factor, 0.8, 1.2}) {
      const double f = m.center_hz * u;
      const auto jac = lorentzian_jacobian(m, f);
      for (int p = 0; p < 4; ++p) {
        LorentzianModel hi = m, lo = m;
        double* fields_hi[4] = {&hi.center_hz, &hi.quality_factor,
                                &hi.peak_amplitude, &hi.offset};
        double* fields_lo[4] = {&lo.center_hz, &lo.quality_factor,
                                &lo.peak_amplitude, &lo.offset};
        const double step = 1e-6 * *fields_hi[p];
        *fields_hi[p] += step;
        *fields_lo[p] -= step;
        const double fd =
            (lorentzian_eval(hi, f) - lorentzian_eval(lo, f)) / (2.0 * step);
        const double scale = std::max(std::abs(fd), std::abs(jac[p]));
        if (scale > 1e-30) {
          const double err = std::abs(jac[p] - fd) / scale;
          worst = std::max(worst, err);
          pass = pass && err < 1e-5;
        }
      }
    }
  }
  std::ostringstream detail;
  detail << "analytic vs central-FD jacobian on 100 random models: worst rel err "
         << worst << " (< 1e-5)";
  report(10, pass, detail.str());
}

void criterion_11() {
  const auto cfg = ExperimentConfig::defaults();
  const ThermalEnvironment room(300.0);
  const auto gen = [&](double f) {
    return normalized_thermal_spectrum(cfg.cavity, cfg.beam, cfg.mode, room, f);
  };
  AnalyzerSettings settings = cfg.analyzer;
  settings.seed = 31415926;

  std::string csv[2];
  for (int run = 0; run < 2; ++run) {
    const auto trace = synthesize_trace(gen, settings);
    std::vector<double> displacement(trace.values.size());
    for (std::size_t i = 0; i < trace.values.size(); ++i) {
      const double floor = dx_min(cfg.cavity, cfg.beam, trace.frequencies_hz[i]);
      displacement[i] = (trace.values[i] - 1.0) * floor * floor;
    }
    std::ostringstream out;
    write_spectrum_csv(out, trace, displacement);
    csv[run] = out.str();
  }
  std::ostringstream detail;
  detail << "two identically seeded spectrum CSVs are byte-identical ("
         << csv[0].size() << " bytes)";
  report(11, !csv[0].empty() && csv[0] == csv[1], detail.str());
}

void criterion_12() {
  const auto cfg = ExperimentConfig::defaults();
  const ThermalEnvironment room(300.0);
  Spectrum analytic;
  analytic.unit = SpectrumUnit::shot_normalized_power;
  for (int i = 0; i < 500; ++i) {
    const double f = 2.0e6 - 250.0 + i * (500.0 / 499.0);
    analytic.frequencies_hz.push_back(f);
    analytic.values.push_back(
        normalized_thermal_spectrum(cfg.cavity, cfg.beam, cfg.mode, room, f));
  }
  const auto back =
      equivalent_displacement(analytic, cfg.cavity, cfg.beam, ConversionMode::noise);
  double worst = 0.0;
  for (std::size_t i = 0; i < back.values.size(); ++i) {
    const double truth = thermal_psd(cfg.mode, room, analytic.frequencies_hz[i]);
    worst = std::max(worst, std::abs(back.values[i] - truth) / truth);
  }
  std::ostringstream detail;
  detail << "normalized -> equivalent displacement round trip: worst per-bin rel err "
         << worst << " (< 1e-12)";
  report(12, worst < 1e-12, detail.str());
}

void run(int criterion) {
  switch (criterion) {
    case 1: criterion_sensitivity(1, 2.0e6, 2.8e-19); break;
    case 2: criterion_sensitivity(2, 5.0e5, 2.0e-19); break;
    case 3: criterion_3(); break;
    case 4: criterion_4(); break;
    case 5: criterion_5(); break;
    case 6: criterion_6(); break;
    case 7: criterion_7(); break;
    case 8: criterion_8(); break;
    case 9: criterion_9(); break;
    case 10: criterion_10(); break;
    case 11: criterion_11(); break;
    case 12: criterion_12(); break;
    default:
      std::fprintf(stderr, "unknown criterion %d\n", criterion);
      ++g_failures;
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) {
    run(std::atoi(argv[1]));
  } else {
    for (int i = 1; i <= 12; ++i) run(i);
    std::printf("%d/12 criteria pass\n", 12 - g_failures);
  }
  return g_failures;
}
