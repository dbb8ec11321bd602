#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qspectra/finite_spectrum.hpp"
#include "qspectra/q_algebra.hpp"

namespace qspectra {

inline constexpr int kMaxBernoulliIndex = 60;

/// B_0 .. B_count (count + 1 values), B_1 = -1/2. count <= 60.
std::vector<double> bernoulli_numbers(int count);

/// Euler-Maclaurin continuation parameters for the Hurwitz zeta function:
/// `direct_terms` summed explicitly, `correction_terms` Bernoulli corrections.
/// For s < 0 the direct sum is shortened (never lengthened) to whatever
/// cutoff minimises the estimated rounding plus truncation error, since the
/// direct sum and the integral tail cancel to many digits there.
struct EulerMaclaurinConfig {
  int direct_terms = 50;
  int correction_terms = 15;
};

/// Evaluations closer than this to a pole are rejected.
inline constexpr double kPoleGuard = 1e-6;

// zeta(s, a) = sum_{k>=0} (k + a)^{-s}, continued to real s != 1.
double hurwitz_zeta(double s, double a, const EulerMaclaurinConfig& config = {});

// (zeta(s, a) - zeta(0, a)) / s, evaluated without cancellation; at s = 0 it
// is the s-derivative zeta'(0, a).
double hurwitz_zeta_divided_difference(double s, double a,
                                       const EulerMaclaurinConfig& config = {});

struct FiniteDiag {
  std::vector<double> eigenvalues;
};

/// lambda_k = k - 1 + a, k >= 1; zeta_A(s) = zeta(s, a).
struct ShiftedLinear {
  double a;
};

/// lambda_k = k^alpha, k >= 1; zeta_A(s) = zeta(alpha s).
struct PowerSpectrum {
  double alpha;
};

/// Model operator A whose spectral zeta function has an exact continuation.
/// Every value refers to the dimensionless operator A/mu, mu = scale().
class ZetaModel {
 public:
  using Kind = std::variant<FiniteDiag, ShiftedLinear, PowerSpectrum>;

  static ZetaModel finite_diag(std::vector<double> eigenvalues, double scale = 1.0);
  static ZetaModel from_spectrum(const Spectrum& spec);
  static ZetaModel shifted_linear(double a, double scale = 1.0);
  static ZetaModel power_spectrum(double alpha, double scale = 1.0);

  const Kind& kind() const noexcept { return kind_; }
  double scale() const noexcept { return scale_; }

  const EulerMaclaurinConfig& continuation() const noexcept { return continuation_; }
  ZetaModel with_continuation(EulerMaclaurinConfig config) const;

  /// Location of the (single) pole of zeta_A, if any.
  std::optional<double> pole() const;
  std::string describe() const;

 private:
  ZetaModel(Kind kind, double scale);

  Kind kind_;
  double scale_;
  EulerMaclaurinConfig continuation_;
};

// zeta_{A/mu}(s) = mu^s zeta_A(s).
double zeta_value(const ZetaModel& model, double s);

// (zeta_{A/mu}(s) - zeta_{A/mu}(0)) / s, continuous through s = 0.
double zeta_divided_difference(const ZetaModel& model, double s);

/// zeta_A'(0) by Richardson-extrapolated central differences of zeta_value
/// (steps h and h/2, h = 1e-3).
double zeta_deriv0(const ZetaModel& model);

/// ln_q det_q A = (zeta_A(q-1) - zeta_A(0)) / (1-q). Tends to -zeta_A'(0) as
/// q -> 1; within the near-one band the divided difference is evaluated at
/// s = q - 1 directly, which is -zeta'(0) plus its (q-1) corrections.
double qdet_zeta(const ZetaModel& model, QParam q);

double relative_qdet_zeta(const ZetaModel& model, const ZetaModel& reference, QParam q);

/// A^theta within the model family. FiniteDiag is closed under every
/// theta != 0, PowerSpectrum under theta > 0 (alpha -> alpha theta,
/// mu -> mu^theta), ShiftedLinear only under theta = 1. Anything else throws
/// UnsupportedError.
ZetaModel power_transform(const ZetaModel& model, double theta);

/// |qdet_zeta(A, q') - qdet_zeta(A^theta, q) / theta|, q' = 1 + theta (q - 1).
double theta_covariance_zeta(const ZetaModel& model, QParam q, double theta);

}  // namespace qspectra
