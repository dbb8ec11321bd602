#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qspectra/cli.hpp"

namespace fs = std::filesystem;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "qspectra");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = qspectra::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = fs::temp_directory_path() / ("qspectra_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

const double kHalfLn2Pi = 0.5 * std::log(2.0 * M_PI);

}  // namespace

TEST_CASE("qdet on a finite spectrum") {
  const auto spec = temp_file("spec.json", R"({"eigenvalues":[2,3]})");
  const auto r = invoke({"qdet", "--input", spec, "--q", "0"});
  REQUIRE(r.code == qspectra::cli::kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["ln_q_det"].get<double>() == 3.0);
  CHECK(j["q_det"].get<double>() == 4.0);
  CHECK(j["clamped"].get<bool>() == false);

  const auto ref = temp_file("ref.csv", "1\n1.5\n");
  const auto rel = invoke({"qdet", "--input", spec, "--input-ref", ref, "--q", "0", "--theta", "2"});
  REQUIRE(rel.code == 0);
  const auto k = nlohmann::json::parse(rel.out);
  CHECK(k["relative_ln_q_det"].get<double>() == 2.5);
  CHECK(k["q_prime"].get<double>() == -1.0);
  CHECK(k["theta_covariance_residual"].get<double>() <= 1e-14);

  const auto csv = invoke({"qdet", "--input", spec, "--q", "1", "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK_THAT(csv.out, ContainsSubstring("key,value\n"));
  CHECK_THAT(csv.out, ContainsSubstring("ln_q_det,1.791759469228055"));
}

TEST_CASE("qdet on zeta models") {
  const auto model = temp_file("sl.json", R"({"kind":"shifted_linear","a":1.0,"scale":1.0})");
  const auto r = invoke({"qdet", "--input", model, "--q", "0.999"});
  REQUIRE(r.code == 0);
  CHECK_THAT(nlohmann::json::parse(r.out)["ln_q_det"].get<double>(), WithinAbs(kHalfLn2Pi, 2e-3));

  const auto pole = invoke({"qdet", "--input", model, "--q", "2"});
  CHECK(pole.code == qspectra::cli::kExitInputError);
  CHECK_THAT(pole.err, ContainsSubstring("pole at s = 1"));

  const auto unsupported = invoke({"qdet", "--input", model, "--q", "0.5", "--theta", "2"});
  CHECK(unsupported.code == qspectra::cli::kExitInputError);
}

TEST_CASE("input errors exit with code 2") {
  CHECK(invoke({"qdet", "--input", "/nonexistent.json", "--q", "1"}).code == 2);
  CHECK(invoke({"qdet", "--input", temp_file("bad.json", "{"), "--q", "1"}).code == 2);
  CHECK(invoke({"qdet", "--q", "1"}).code == 2);
  CHECK(invoke({"qdet", "--input", temp_file("ok.json", R"({"eigenvalues":[1]})"), "--q", "nan"}).code == 2);
  CHECK(invoke({"weight", "--lambda-min", "0"}).code == 2);
  CHECK(invoke({"geometry", "--format", "xml"}).code == 2);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("zeta command") {
  const auto model = temp_file("ps.json", R"({"kind":"power_spectrum","alpha":2})");
  const auto r = invoke({"zeta", "--input", model, "--s", "1,-1"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK_THAT(j["values"][0]["zeta"].get<double>(), WithinAbs(M_PI * M_PI / 6.0, 1e-13));
  CHECK_THAT(j["values"][1]["zeta"].get<double>(), WithinAbs(0.0, 1e-13));  // zeta(-2)
  CHECK_THAT(j["zeta_deriv0"].get<double>(), WithinAbs(-2.0 * kHalfLn2Pi, 1e-8));
  CHECK(invoke({"zeta", "--input", model, "--s", "0.5"}).code == 2);
}

TEST_CASE("geometry command") {
  const auto r = invoke({"geometry"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "p1,p2,p3,phi,sqrt_det_g");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 3600);

  const auto flat = invoke({"geometry", "--q", "0", "--resolution", "5", "--format", "json"});
  REQUIRE(flat.code == 0);
  for (const auto& row : nlohmann::json::parse(flat.out)) {
    CHECK_THAT(row["sqrt_det_g"].get<double>(), WithinAbs(std::sqrt(3.0), 1e-14));
  }
  CHECK(invoke({"geometry", "--margin", "0"}).code == 2);
  CHECK(invoke({"geometry", "--resolution", "0"}).code == 2);

  const auto out = (fs::temp_directory_path() / "qspectra_cli_field.csv").string();
  REQUIRE(invoke({"geometry", "--resolution", "3", "--out", out}).code == 0);
  CHECK(fs::file_size(out) > 0);
  CHECK(invoke({"geometry", "--out", "/nonexistent/dir/x.csv"}).code == 2);
}

TEST_CASE("weight command") {
  const auto r = invoke({"weight", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const auto lambda = j["lambda"].get<std::vector<double>>();
  const auto it = std::find(lambda.begin(), lambda.end(), 1.0);
  REQUIRE(it != lambda.end());
  const auto idx = static_cast<std::size_t>(it - lambda.begin());
  REQUIRE(j["curves"].size() == 3);
  for (const auto& c : j["curves"]) CHECK(c["weight"][idx].get<double>() == 1.0);

  const auto csv = invoke({"weight", "--q", "2", "--lambda-min", "0.5", "--lambda-max", "2", "--points", "3"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out == "lambda,w_q=2\n0.5,4\n1,1\n2,0.25\n");
}

TEST_CASE("verify reports every check and honours overrides") {
  const auto list = invoke({"verify", "--list"});
  REQUIRE(list.code == 0);
  CHECK_THAT(list.out, ContainsSubstring("finite_spectrum.theta_covariance"));
  CHECK_THAT(list.out, ContainsSubstring("combinatorics.scaling_law.q0.5"));

  const auto forced = invoke({"verify", "--tolerance", "finite_spectrum.theta_covariance=1e-30"});
  CHECK(forced.code == qspectra::cli::kExitVerifyFailed);
  const auto report = nlohmann::json::parse(forced.out);
  bool seen = false;
  for (const auto& c : report["checks"]) {
    if (c["name"] == "finite_spectrum.theta_covariance") {
      seen = true;
      CHECK(c["passed"].get<bool>() == false);
      CHECK(c["tolerance"].get<double>() == 1e-30);
    }
    if (c["name"] == "q_algebra.pseudo_additivity") CHECK(c["passed"].get<bool>());
  }
  CHECK(seen);
  CHECK(report["total"].get<std::size_t>() == qspectra::cli::default_tolerances().size());

  CHECK(invoke({"verify", "--tolerance", "no.such.check=1"}).code == 2);
  CHECK(invoke({"verify", "--tolerance", "finite_spectrum.theta_covariance"}).code == 2);
  CHECK(invoke({"verify", "--tolerance", "finite_spectrum.theta_covariance=-1"}).code == 2);
}

TEST_CASE("verify tolerance scale") {
  qspectra::cli::VerifyOptions loose;
  loose.tolerance_scale = 1e6;
  loose.overrides["finite_spectrum.theta_covariance"] = 1e-30;
  for (const auto& r : qspectra::cli::run_verification(loose)) {
    if (r.name == "finite_spectrum.theta_covariance") CHECK_THAT(r.tolerance, Catch::Matchers::WithinRel(1e-24, 1e-15));
    if (r.name == "info_geometry.boundary_enhancement") CHECK(r.tolerance == 10.0);
  }
  ::setenv("QSPECTRA_TOLERANCE_SCALE", "abc", 1);
  CHECK(invoke({"verify"}).code == 2);
  ::unsetenv("QSPECTRA_TOLERANCE_SCALE");
}
