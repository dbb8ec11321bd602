#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qspectra/errors.hpp"
#include "qspectra/io.hpp"
#include "support.hpp"

using namespace qspectra;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& text) {
  const auto path = fs::temp_directory_path() / ("qspectra_io_" + name);
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("format_double keeps 17 significant digits") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(1.0) == "1");
  CHECK(io::format_double(-0.25) == "-0.25");
  qtest::Rng rng(17);
  for (int i = 0; i < 1000; ++i) {
    const double x = qtest::log_uniform(rng, 1e-300, 1e300);
    CHECK(std::stod(io::format_double(x)) == x);
  }
}

TEST_CASE("spectrum JSON round trip") {
  qtest::Rng rng(18);
  for (int i = 0; i < 50; ++i) {
    const Spectrum s(qtest::positive_values(rng, 1 + i % 7, 1e-3, 1e3), qtest::log_uniform(rng, 0.1, 10.0));
    const auto back = io::spectrum_from_json(nlohmann::json::parse(io::spectrum_to_json(s).dump()));
    CHECK(back.scale() == s.scale());
    CHECK(std::equal(back.eigenvalues().begin(), back.eigenvalues().end(), s.eigenvalues().begin(),
                     s.eigenvalues().end()));
  }
  CHECK(io::spectrum_from_json(nlohmann::json::parse(R"({"eigenvalues":[2,3]})")).scale() == 1.0);
  CHECK_THROWS_AS(io::spectrum_from_json(nlohmann::json::parse(R"({"eigenvalues":[2,-3]})")), ParseError);
  CHECK_THROWS_AS(io::spectrum_from_json(nlohmann::json::parse(R"({"eigenvalues":"2"})")), ParseError);
  CHECK_THROWS_AS(io::spectrum_from_json(nlohmann::json::parse(R"([1,2])")), ParseError);
}

TEST_CASE("spectrum CSV") {
  std::istringstream with_header("lambda\n2.0\n\n# comment\n3\r\n 4.5 \n");
  const auto s = io::spectrum_from_csv(with_header);
  REQUIRE(s.size() == 3);
  CHECK(s.eigenvalues()[2] == 4.5);

  std::istringstream bad("1\nfoo\n");
  CHECK_THROWS_AS(io::spectrum_from_csv(bad), ParseError);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(io::spectrum_from_csv(empty), ParseError);
  std::istringstream negative("1\n-2\n");
  CHECK_THROWS_AS(io::spectrum_from_csv(negative), ParseError);
}

TEST_CASE("model JSON round trip") {
  const std::vector<ZetaModel> models = {ZetaModel::finite_diag({0.5, 2.0}, 3.0), ZetaModel::shifted_linear(0.7),
                                         ZetaModel::power_spectrum(2.0, 1.5)};
  for (const auto& m : models) {
    const auto j = io::model_to_json(m);
    const auto back = io::model_from_json(nlohmann::json::parse(j.dump()));
    CHECK(io::model_to_json(back) == j);
    CHECK(back.describe() == m.describe());
  }
  CHECK_THROWS_AS(io::model_from_json(nlohmann::json::parse(R"({"kind":"laplacian"})")), ParseError);
  CHECK_THROWS_AS(io::model_from_json(nlohmann::json::parse(R"({"kind":"shifted_linear"})")), ParseError);
  CHECK_THROWS_AS(io::model_from_json(nlohmann::json::parse(R"({"kind":"power_spectrum","alpha":0})")), ParseError);
}

TEST_CASE("read_operator dispatches on content") {
  const auto spec = write_temp("s.json", R"({"eigenvalues":[2,3],"scale":2})");
  const auto model = write_temp("m.json", R"({"kind":"shifted_linear","a":1.0,"scale":1.0})");
  const auto csv = write_temp("s.csv", "2\n3\n");
  const auto broken = write_temp("b.json", "{not json");
  CHECK(std::holds_alternative<Spectrum>(io::read_operator(spec.string())));
  CHECK(std::get<Spectrum>(io::read_operator(spec.string())).scale() == 2.0);
  CHECK(std::holds_alternative<ZetaModel>(io::read_operator(model.string())));
  CHECK(std::get<Spectrum>(io::read_operator(csv.string())).size() == 2);
  CHECK_THROWS_AS(io::read_operator(broken.string()), ParseError);
  CHECK_THROWS_AS(io::read_operator("/nonexistent/qspectra.json"), ParseError);
  for (const auto& p : {spec, model, csv, broken}) fs::remove(p);
}

TEST_CASE("field writers") {
  const auto field = grid_field(3, 2, QParam(1.4), 1e-3);
  std::ostringstream csv;
  io::write_field_csv(field, csv);
  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "p1,p2,p3,phi,sqrt_det_g");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 4);

  std::ostringstream json;
  io::write_field_json(field, json);
  const auto parsed = nlohmann::json::parse(json.str());
  REQUIRE(parsed.size() == field.points.size());
  for (std::size_t i = 0; i < field.points.size(); ++i) {
    CHECK(parsed[i]["p1"].get<double>() == field.points[i].probabilities()[0]);
    CHECK(parsed[i]["phi"].get<double>() == field.phi[i]);
    CHECK(parsed[i]["sqrt_det_g"].get<double>() == field.volume[i]);
  }
}
