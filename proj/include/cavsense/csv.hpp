#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cavsense/spectrum.hpp"

namespace cavsense {

inline constexpr const char* kSpectrumCsvHeader =
    "frequency_hz,normalized_power,displacement_psd_m2_per_hz";

/// Write a shot-normalized spectrum with its per-bin equivalent-displacement
/// column. Scientific notation, 17 significant digits (lossless round trip),
/// LF line endings.
void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum,
                        const std::vector<double>& displacement_psd);

/// Read a spectrum CSV produced by write_spectrum_csv (comment lines starting
/// with '#' are skipped). Returns the frequency / normalized_power columns as
/// a shot-normalized Spectrum. Throws ValidationError naming the bad line.
Spectrum parse_spectrum_csv(std::istream& in);

/// Format one double the way all CSV writers here do.
std::string format_number(double x);

}  // namespace cavsense
