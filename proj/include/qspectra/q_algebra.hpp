#pragma once

#include <span>

namespace qspectra {

/// Deformation index q together with the width of the band around q = 1 in
/// which series expansions replace the generic formulas.
class QParam {
 public:
  static constexpr double kDefaultNearOneEps = 1e-8;

  explicit QParam(double q, double near_one_eps = kDefaultNearOneEps);

  double value() const noexcept { return q_; }
  double near_one_eps() const noexcept { return near_one_eps_; }
  double one_minus_q() const noexcept { return 1.0 - q_; }
  bool near_one() const noexcept;

 private:
  double q_;
  double near_one_eps_;
};

/// Result of an operation containing the positive-part clamp [y]_+.
/// When the clamp fires the value is 0 for q < 1 and +inf for q > 1
/// (the base of the power vanishes and the exponent 1/(1-q) has that sign).
struct QValue {
  double value = 0.0;
  bool clamped = false;
};

// ln_q x = (x^{1-q} - 1)/(1 - q), evaluated as expm1((1-q) ln x)/(1-q).
double q_log(double x, QParam q);

// exp_q u = [1 + (1-q) u]_+^{1/(1-q)}.
QValue q_exp(double u, QParam q);

// x (x)_q y = [x^{1-q} + y^{1-q} - 1]_+^{1/(1-q)}.
QValue q_mul(double x, double y, QParam q);

// x (/)_q y = [x^{1-q} - y^{1-q} + 1]_+^{1/(1-q)}.
QValue q_div(double x, double y, QParam q);

/// q' = 1 + theta (q - 1). Satisfies ln_{q'} x = ln_q(x^theta) / theta.
QParam theta_reparam(QParam q, double theta);

/// Left fold x_1 (x)_q x_2 (x)_q ... in the given order. A clamp at any step
/// pins the running product to its clamped value (0 or +inf) and the fold
/// continues from there; `clamped` reports whether any step clamped. Ordering
/// only matters once a clamp has fired.
QValue q_product(std::span<const double> factors, QParam q);

}  // namespace qspectra
