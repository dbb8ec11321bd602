#include "qspectra/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qspectra/errors.hpp"

namespace qspectra::io {

namespace {

double require_number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ParseError(std::string("expected numeric field \"") + key + "\"");
  }
  return j.at(key).get<double>();
}

double optional_scale(const nlohmann::json& j) {
  return j.contains("scale") ? require_number(j, "scale") : 1.0;
}

std::vector<double> number_array(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw ParseError(std::string("expected array field \"") + key + "\"");
  }
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) throw ParseError(std::string("non-numeric entry in \"") + key + "\"");
    out.push_back(v.get<double>());
  }
  return out;
}

bool parse_double(std::string_view text, double& value) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r' ||
                           text.back() == ',')) {
    text.remove_suffix(1);
  }
  if (text.empty()) return false;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Spectrum spectrum_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("spectrum: expected a JSON object");
  try {
    return Spectrum(number_array(j, "eigenvalues"), optional_scale(j));
  } catch (const DomainError& e) {
    throw ParseError(std::string("spectrum: ") + e.what());
  }
}

nlohmann::json spectrum_to_json(const Spectrum& spec) {
  return {{"eigenvalues", std::vector<double>(spec.eigenvalues().begin(), spec.eigenvalues().end())},
          {"scale", spec.scale()}};
}

Spectrum spectrum_from_csv(std::istream& in, double scale) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    while (!view.empty() && (view.front() == ' ' || view.front() == '\t')) view.remove_prefix(1);
    if (view.empty() || view == "\r" || view.front() == '#') continue;
    double value = 0.0;
    if (!parse_double(view, value)) {
      if (values.empty() && line_no == 1) continue;  // header
      throw ParseError("spectrum csv: line " + std::to_string(line_no) + " is not a number");
    }
    values.push_back(value);
  }
  try {
    return Spectrum(std::move(values), scale);
  } catch (const DomainError& e) {
    throw ParseError(std::string("spectrum csv: ") + e.what());
  }
}

ZetaModel model_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw ParseError("model: expected an object with a string \"kind\"");
  }
  const auto kind = j.at("kind").get<std::string>();
  try {
    if (kind == "finite_diag") {
      return ZetaModel::finite_diag(number_array(j, "eigenvalues"), optional_scale(j));
    }
    if (kind == "shifted_linear") {
      return ZetaModel::shifted_linear(require_number(j, "a"), optional_scale(j));
    }
    if (kind == "power_spectrum") {
      return ZetaModel::power_spectrum(require_number(j, "alpha"), optional_scale(j));
    }
  } catch (const DomainError& e) {
    throw ParseError("model: " + std::string(e.what()));
  }
  throw ParseError("model: unknown kind \"" + kind + "\"");
}

nlohmann::json model_to_json(const ZetaModel& model) {
  nlohmann::json j = std::visit(
      [](const auto& kind) -> nlohmann::json {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, FiniteDiag>) {
          return {{"kind", "finite_diag"}, {"eigenvalues", kind.eigenvalues}};
        } else if constexpr (std::is_same_v<T, ShiftedLinear>) {
          return {{"kind", "shifted_linear"}, {"a", kind.a}};
        } else {
          return {{"kind", "power_spectrum"}, {"alpha", kind.alpha}};
        }
      },
      model.kind());
  j["scale"] = model.scale();
  return j;
}

OperatorInput read_operator(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file " + path);
  if (ends_with(path, ".csv") || ends_with(path, ".txt")) return spectrum_from_csv(in);

  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (j.is_object() && j.contains("kind")) return model_from_json(j);
  return spectrum_from_json(j);
}

void write_field_csv(const MetricField& field, std::ostream& out) {
  out << "p1,p2,p3,phi,sqrt_det_g\n";
  for (std::size_t i = 0; i < field.points.size(); ++i) {
    const auto p = field.points[i].probabilities();
    out << format_double(p[0]) << ',' << format_double(p[1]) << ',' << format_double(p[2]) << ','
        << format_double(field.phi[i]) << ',' << format_double(field.volume[i]) << '\n';
  }
}

void write_field_json(const MetricField& field, std::ostream& out) {
  out << "[";
  for (std::size_t i = 0; i < field.points.size(); ++i) {
    const auto p = field.points[i].probabilities();
    out << (i == 0 ? "\n" : ",\n") << "  {\"p1\": " << format_double(p[0])
        << ", \"p2\": " << format_double(p[1]) << ", \"p3\": " << format_double(p[2])
        << ", \"phi\": " << format_double(field.phi[i])
        << ", \"sqrt_det_g\": " << format_double(field.volume[i]) << "}";
  }
  out << "\n]\n";
}

}  // namespace qspectra::io
