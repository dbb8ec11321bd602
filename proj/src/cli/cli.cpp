#include "qspectra/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qspectra/errors.hpp"
#include "qspectra/finite_spectrum.hpp"
#include "qspectra/info_geometry.hpp"
#include "qspectra/io.hpp"
#include "qspectra/spectral_zeta.hpp"

namespace qspectra::cli {

namespace {

using nlohmann::json;
using io::format_double;

// JSON has no infinity; a clamped q > 1 determinant is written as null.
json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

struct Common {
  std::string format;
  std::string out_path;
};

void add_common(CLI::App* sub, Common& c, const std::string& default_format) {
  c.format = default_format;
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--out", c.out_path, "Write output to this file instead of stdout");
}

void emit(const Common& c, const std::string& text, std::ostream& out) {
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.out_path, std::ios::binary);
  if (!file) throw ParseError("cannot open output file " + c.out_path);
  file << text;
  if (!file) throw ParseError("failed writing " + c.out_path);
}

// Flat key/value report, rendered as a two-column CSV or a JSON object.
class Report {
 public:
  void add(const std::string& key, json value) { rows_.emplace_back(key, std::move(value)); }

  std::string render(const std::string& format) const {
    if (format == "json") {
      json j = json::object();
      for (const auto& [k, v] : rows_) j[k] = v;
      return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "key,value\n";
    for (const auto& [k, v] : rows_) os << k << ',' << cell(v) << '\n';
    return os.str();
  }

 private:
  static std::string cell(const json& v) {
    if (v.is_null()) return "";
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return format_double(v.get<double>());
    if (v.is_string()) {
      const auto s = v.get<std::string>();
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string quoted = "\"";
      for (char ch : s) quoted += (ch == '"' ? std::string("\"\"") : std::string(1, ch));
      return quoted + "\"";
    }
    return cell(json(v.dump()));
  }

  std::vector<std::pair<std::string, json>> rows_;
};

// ----------------------------------------------------------------- qdet

struct QdetArgs {
  Common common;
  std::string input, input_ref;
  double q = 1.0;
  std::optional<double> theta;
};

double logdet_of(const io::OperatorInput& op, QParam q) {
  if (const auto* spec = std::get_if<Spectrum>(&op)) return q_logdet(*spec, q);
  return qdet_zeta(std::get<ZetaModel>(op), q);
}

std::string describe(const io::OperatorInput& op) {
  if (const auto* spec = std::get_if<Spectrum>(&op)) {
    return "spectrum of " + std::to_string(spec->size()) + " eigenvalues, scale " +
           format_double(spec->scale());
  }
  return std::get<ZetaModel>(op).describe();
}

std::string cmd_qdet(const QdetArgs& a) {
  const QParam q(a.q);
  const auto op = io::read_operator(a.input);
  Report r;
  r.add("q", a.q);
  r.add("operator", describe(op));
  if (const auto* model = std::get_if<ZetaModel>(&op)) {
    const auto pole = model->pole();
    r.add("pole_s", pole ? json(*pole) : json(nullptr));
    r.add("evaluated_s", a.q - 1.0);
  }
  const double value = logdet_of(op, q);
  const QValue det = q_exp(value, q);
  r.add("ln_q_det", value);
  r.add("q_det", number_or_null(det.value));
  r.add("clamped", det.clamped);
  if (!a.input_ref.empty()) {
    const auto ref = io::read_operator(a.input_ref);
    const double ref_value = logdet_of(ref, q);
    r.add("reference", describe(ref));
    r.add("ln_q_det_reference", ref_value);
    r.add("relative_ln_q_det", value - ref_value);
  }
  if (a.theta) {
    const QParam qp = theta_reparam(q, *a.theta);
    r.add("theta", *a.theta);
    r.add("q_prime", qp.value());
    if (const auto* spec = std::get_if<Spectrum>(&op)) {
      r.add("gamma_q_prime", gamma(*spec, qp));
      r.add("theta_covariance_residual", check_theta_covariance(*spec, q, *a.theta));
    } else {
      const auto& model = std::get<ZetaModel>(op);
      r.add("ln_q_prime_det", qdet_zeta(model, qp));
      r.add("theta_covariance_residual", theta_covariance_zeta(model, q, *a.theta));
    }
  }
  return r.render(a.common.format);
}

// ----------------------------------------------------------------- zeta

struct ZetaArgs {
  Common common;
  std::string input;
  std::vector<double> s;
};

std::string cmd_zeta(const ZetaArgs& a) {
  const auto op = io::read_operator(a.input);
  const ZetaModel model = std::holds_alternative<Spectrum>(op) ? ZetaModel::from_spectrum(std::get<Spectrum>(op))
                                                               : std::get<ZetaModel>(op);
  std::vector<double> values;
  for (double s : a.s) values.push_back(zeta_value(model, s));
  const double deriv = zeta_deriv0(model);
  if (a.common.format == "json") {
    json rows = json::array();
    for (std::size_t i = 0; i < a.s.size(); ++i) rows.push_back({{"s", a.s[i]}, {"zeta", values[i]}});
    json j = {{"operator", model.describe()}, {"values", rows}, {"zeta_deriv0", deriv}};
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "s,zeta\n";
  for (std::size_t i = 0; i < a.s.size(); ++i) os << format_double(a.s[i]) << ',' << format_double(values[i]) << '\n';
  os << "# zeta_deriv0," << format_double(deriv) << '\n';
  return os.str();
}

// ------------------------------------------------------------- geometry

struct GeometryArgs {
  Common common;
  double q = 1.4;
  int resolution = 60;
  double margin = 1e-3;
};

std::string cmd_geometry(const GeometryArgs& a) {
  const auto field = grid_field(3, a.resolution, QParam(a.q), a.margin);
  std::ostringstream os;
  if (a.common.format == "json") {
    io::write_field_json(field, os);
  } else {
    io::write_field_csv(field, os);
  }
  return os.str();
}

// --------------------------------------------------------------- weight

struct WeightArgs {
  Common common;
  std::vector<double> q = {0.5, 1.0, 2.0};
  double lambda_min = 0.1, lambda_max = 10.0;
  int points = 101;
};

std::string cmd_weight(const WeightArgs& a) {
  const auto curves = spectral_weight_curves(a.lambda_min, a.lambda_max, a.points, a.q);
  if (a.common.format == "json") {
    json list = json::array();
    for (std::size_t i = 0; i < curves.q.size(); ++i) {
      list.push_back({{"q", curves.q[i]}, {"weight", curves.weight[i]}});
    }
    return json{{"lambda", curves.lambda}, {"curves", list}}.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "lambda";
  for (double q : curves.q) os << ",w_q=" << format_double(q);
  os << '\n';
  for (std::size_t j = 0; j < curves.lambda.size(); ++j) {
    os << format_double(curves.lambda[j]);
    for (std::size_t i = 0; i < curves.q.size(); ++i) os << ',' << format_double(curves.weight[i][j]);
    os << '\n';
  }
  return os.str();
}

// --------------------------------------------------------------- verify

struct VerifyArgs {
  Common common;
  std::vector<std::string> overrides;
};

double parse_positive(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !std::isfinite(v) || v <= 0.0) {
    throw ParseError(what + ": expected a positive number, got \"" + text + "\"");
  }
  return v;
}

std::string comparison_name(Comparison c) { return c == Comparison::kAtMost ? "<=" : ">"; }

std::pair<std::string, bool> cmd_verify(const VerifyArgs& a) {
  VerifyOptions options;
  if (const char* env = std::getenv("QSPECTRA_TOLERANCE_SCALE"); env && *env) {
    options.tolerance_scale = parse_positive(env, "QSPECTRA_TOLERANCE_SCALE");
  }
  for (const auto& item : a.overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("--tolerance expects name=value, got \"" + item + "\"");
    options.overrides[item.substr(0, eq)] = parse_positive(item.substr(eq + 1), "--tolerance " + item.substr(0, eq));
  }
  const auto results = run_verification(options);
  bool all = true;
  for (const auto& r : results) all = all && r.passed;

  if (a.common.format == "csv") {
    std::ostringstream os;
    os << "check,residual,comparison,tolerance,passed\n";
    for (const auto& r : results) {
      os << r.name << ',' << format_double(r.residual) << ',' << comparison_name(r.comparison) << ','
         << format_double(r.tolerance) << ',' << (r.passed ? "true" : "false") << '\n';
    }
    return {os.str(), all};
  }
  json checks = json::array();
  std::size_t failed = 0;
  for (const auto& r : results) {
    failed += r.passed ? 0 : 1;
    checks.push_back({{"name", r.name},
                      {"residual", number_or_null(r.residual)},
                      {"comparison", comparison_name(r.comparison)},
                      {"tolerance", r.tolerance},
                      {"passed", r.passed},
                      {"detail", r.detail}});
  }
  json j = {{"tolerance_scale", options.tolerance_scale},
            {"checks", checks},
            {"total", results.size()},
            {"failed", failed},
            {"passed", all}};
  return {j.dump(2) + "\n", all};
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"q-deformed spectral determinants, zeta models and simplex geometry"};
  app.require_subcommand(1);

  QdetArgs qdet;
  auto* qdet_cmd = app.add_subcommand("qdet", "q-deformed log-determinant of a spectrum or zeta model");
  add_common(qdet_cmd, qdet.common, "json");
  qdet_cmd->add_option("--input", qdet.input, "Spectrum (.json/.csv) or zeta model (.json)")->required();
  qdet_cmd->add_option("--input-ref", qdet.input_ref, "Reference operator for the relative value");
  qdet_cmd->add_option("--q", qdet.q, "Deformation parameter")->required();
  qdet_cmd->add_option("--theta", qdet.theta, "Also report the theta-covariance residual");

  ZetaArgs zeta;
  auto* zeta_cmd = app.add_subcommand("zeta", "Spectral zeta values and zeta'(0)");
  add_common(zeta_cmd, zeta.common, "json");
  zeta_cmd->add_option("--input", zeta.input, "Spectrum or zeta model")->required();
  zeta_cmd->add_option("--s", zeta.s, "Points s at which to evaluate")->required()->delimiter(',');

  GeometryArgs geo;
  auto* geo_cmd = app.add_subcommand("geometry", "Potential and volume element on the ternary simplex");
  add_common(geo_cmd, geo.common, "csv");
  geo_cmd->add_option("--q", geo.q, "Deformation parameter")->capture_default_str();
  geo_cmd->add_option("--resolution", geo.resolution, "Subdivisions per simplex edge")->capture_default_str();
  geo_cmd->add_option("--margin", geo.margin, "Minimum distance of every p_i from 0")->capture_default_str();

  WeightArgs weight;
  auto* weight_cmd = app.add_subcommand("weight", "Spectral weight curves w = lambda^-q");
  add_common(weight_cmd, weight.common, "csv");
  weight_cmd->add_option("--q", weight.q, "q values")->delimiter(',')->capture_default_str();
  weight_cmd->add_option("--lambda-min", weight.lambda_min)->capture_default_str();
  weight_cmd->add_option("--lambda-max", weight.lambda_max)->capture_default_str();
  weight_cmd->add_option("--points", weight.points, "Grid size")->capture_default_str();

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run the invariant battery");
  add_common(verify_cmd, verify.common, "json");
  verify_cmd->add_option("--tolerance", verify.overrides, "Override a tolerance, name=value (repeatable)");
  verify_cmd->add_flag_callback(
      "--list", [&out] {
        for (const auto& [name, tol] : default_tolerances()) out << name << ' ' << format_double(tol) << '\n';
        throw CLI::Success();
      },
      "List check names and default tolerances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInputError;
  }

  try {
    if (*qdet_cmd) emit(qdet.common, cmd_qdet(qdet), out);
    if (*zeta_cmd) emit(zeta.common, cmd_zeta(zeta), out);
    if (*geo_cmd) emit(geo.common, cmd_geometry(geo), out);
    if (*weight_cmd) emit(weight.common, cmd_weight(weight), out);
    if (*verify_cmd) {
      const auto [text, passed] = cmd_verify(verify);
      emit(verify.common, text, out);
      return passed ? kExitOk : kExitVerifyFailed;
    }
  } catch (const PoleError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitOk;
}

}  // namespace qspectra::cli
