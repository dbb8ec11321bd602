#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include <json.hpp>

#include "qspectra/finite_spectrum.hpp"
#include "qspectra/info_geometry.hpp"
#include "qspectra/spectral_zeta.hpp"

namespace qspectra::io {

/// Shortest form of "%.17g": 17 significant digits, '.' separator.
std::string format_double(double x);

// {"eigenvalues": [...], "scale": s}; scale defaults to 1.
Spectrum spectrum_from_json(const nlohmann::json& j);
nlohmann::json spectrum_to_json(const Spectrum& spec);

/// One eigenvalue per line. Blank lines and lines starting with '#' are
/// skipped, as is a non-numeric first line (header).
Spectrum spectrum_from_csv(std::istream& in, double scale = 1.0);

// {"kind": "finite_diag" | "shifted_linear" | "power_spectrum", ...,
//  "scale": s}
ZetaModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const ZetaModel& model);

using OperatorInput = std::variant<Spectrum, ZetaModel>;

/// Reads a spectrum (.csv, or JSON with "eigenvalues") or a zeta model
/// (JSON with "kind").
OperatorInput read_operator(const std::string& path);

void write_field_csv(const MetricField& field, std::ostream& out);
void write_field_json(const MetricField& field, std::ostream& out);

}  // namespace qspectra::io
