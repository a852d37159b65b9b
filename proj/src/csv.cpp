#include "cavsense/csv.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include "cavsense/errors.hpp"

namespace cavsense {

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return buf;
}

void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum,
                        const std::vector<double>& displacement_psd) {
  if (displacement_psd.size() != spectrum.frequencies_hz.size())
    throw ValidationError("displacement column length mismatch");
  out << kSpectrumCsvHeader << "\n";
  for (std::size_t i = 0; i < spectrum.frequencies_hz.size(); ++i) {
    out << format_number(spectrum.frequencies_hz[i]) << ','
        << format_number(spectrum.values[i]) << ','
        << format_number(displacement_psd[i]) << "\n";
  }
}

Spectrum parse_spectrum_csv(std::istream& in) {
  Spectrum spectrum;
  spectrum.unit = SpectrumUnit::shot_normalized_power;

  std::string line;
  int lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kSpectrumCsvHeader)
        throw ValidationError("line " + std::to_string(lineno) +
                              ": expected header '" + kSpectrumCsvHeader + "'");
      header_seen = true;
      continue;
    }
    double fields[3];
    int field = 0;
    std::size_t pos = 0;
    while (field < 3) {
      const std::size_t comma = line.find(',', pos);
      const std::string cell = line.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      try {
        std::size_t used = 0;
        fields[field] = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw ValidationError("line " + std::to_string(lineno) + ": field " +
                              std::to_string(field + 1) + " is not a number: '" +
                              cell + "'");
      }
      ++field;
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (field != 3)
      throw ValidationError("line " + std::to_string(lineno) +
                            ": expected 3 comma-separated fields");
    spectrum.frequencies_hz.push_back(fields[0]);
    spectrum.values.push_back(fields[1]);
  }
  if (!header_seen) throw ValidationError("empty input: no CSV header found");
  spectrum.validate();
  return spectrum;
}

}  // namespace cavsense
