#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace qspectra::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitInputError = 2;

/// Runs the command line; output that is not redirected with --out goes to
/// `out`, diagnostics to `err`.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

enum class Comparison { kAtMost, kAbove };

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  Comparison comparison = Comparison::kAtMost;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  /// Multiplies every tolerance (QSPECTRA_TOLERANCE_SCALE).
  double tolerance_scale = 1.0;
  /// Absolute tolerance per check name; still multiplied by the scale.
  std::map<std::string, double> overrides;
};

/// Every check in the battery with its default tolerance.
std::map<std::string, double> default_tolerances();

/// Runs the invariant battery. A failing or throwing check is recorded and
/// the remaining checks still run. Unknown override names throw.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

}  // namespace qspectra::cli
