#include "qspectra/q_algebra.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qspectra/errors.hpp"

namespace qspectra {

namespace {

void require_positive(double x, const char* op) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(op) + ": operand must be finite and > 0, got " +
                      std::to_string(x));
  }
}

// Value of [0]_+^{1/(1-q)}.
double clamped_value(QParam q) {
  return q.one_minus_q() > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

}  // namespace

QParam::QParam(double q, double near_one_eps) : q_(q), near_one_eps_(near_one_eps) {
  if (!std::isfinite(q)) throw DomainError("QParam: q must be finite");
  if (!(near_one_eps > 0.0)) throw DomainError("QParam: near_one_eps must be > 0");
}

bool QParam::near_one() const noexcept {
  return std::abs(q_ - 1.0) < near_one_eps_;
}

double q_log(double x, QParam q) {
  require_positive(x, "q_log");
  const double log_x = std::log(x);
  const double k = q.one_minus_q();
  if (q.near_one()) {
    // expm1(u)/u = 1 + u/2 + u^2/6 + O(u^3); exact ln x at q = 1.
    const double u = k * log_x;
    return log_x * (1.0 + u * (0.5 + u / 6.0));
  }
  return std::expm1(k * log_x) / k;
}

QValue q_exp(double u, QParam q) {
  if (std::isnan(u)) throw DomainError("q_exp: argument is NaN");
  const double k = q.one_minus_q();
  const double t = k * u;
  if (!(1.0 + t > 0.0)) return {clamped_value(q), true};
  if (q.near_one() && std::abs(t) < 1e-3) {
    // log1p(t)/k = u (1 - t/2 + t^2/3 - ...)
    return {std::exp(u * (1.0 - t * (0.5 - t / 3.0))), false};
  }
  return {std::exp(std::log1p(t) / k), false};
}

QValue q_mul(double x, double y, QParam q) {
  require_positive(x, "q_mul");
  require_positive(y, "q_mul");
  if (q.value() == 1.0) return {x * y, false};
  return q_exp(q_log(x, q) + q_log(y, q), q);
}

QValue q_div(double x, double y, QParam q) {
  require_positive(x, "q_div");
  require_positive(y, "q_div");
  if (q.value() == 1.0) return {x / y, false};
  return q_exp(q_log(x, q) - q_log(y, q), q);
}

QParam theta_reparam(QParam q, double theta) {
  if (theta == 0.0 || !std::isfinite(theta)) {
    throw DomainError("theta_reparam: theta must be finite and non-zero");
  }
  return QParam(1.0 + theta * (q.value() - 1.0), q.near_one_eps());
}

QValue q_product(std::span<const double> factors, QParam q) {
  const double k = q.one_minus_q();
  // Running ln_q of the product. A clamped product sits at base 0, whose
  // q-log is -1/(1-q) for either sign of 1-q.
  double acc = 0.0;
  bool at_zero_base = false;
  bool clamped = false;
  for (double x : factors) {
    require_positive(x, "q_product");
    const double term = q_log(x, q);
    acc += term;
    at_zero_base = at_zero_base && term == 0.0;
    if (!(1.0 + k * acc > 0.0)) {
      acc = -1.0 / k;
      at_zero_base = true;
      clamped = true;
    }
  }
  if (at_zero_base) return {clamped_value(q), true};
  QValue out = q_exp(acc, q);
  out.clamped = out.clamped || clamped;
  return out;
}

}  // namespace qspectra
