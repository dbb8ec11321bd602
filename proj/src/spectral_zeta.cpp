#include "qspectra/spectral_zeta.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "qspectra/errors.hpp"
#include "qspectra/summation.hpp"

namespace qspectra {

namespace {

constexpr int kMaxCorrectionTerms = kMaxBernoulliIndex / 2 - 1;

// B_{2j} / (2j)! for j = 0..30.
const std::array<double, kMaxBernoulliIndex / 2 + 1>& bernoulli_factorial_ratios() {
  static const auto table = [] {
    std::array<double, kMaxBernoulliIndex / 2 + 1> out{};
    const auto b = bernoulli_numbers(kMaxBernoulliIndex);
    double factorial = 1.0;
    for (int n = 0; n <= kMaxBernoulliIndex; ++n) {
      if (n > 0) factorial *= n;
      if (n % 2 == 0) out[static_cast<std::size_t>(n / 2)] = b[static_cast<std::size_t>(n)] / factorial;
    }
    return out;
  }();
  return table;
}

// expm1(-s L) / s, with the limit -L at s = 0.
double expm1_ratio(double s, double log_value) {
  if (s == 0.0) return -log_value;
  return std::expm1(-s * log_value) / s;
}

struct EulerMaclaurinSum {
  double zeta = 0.0;
  double divided = 0.0;  // (zeta(s,a) - zeta(0,a)) / s
  double error_estimate = 0.0;
};

// Euler-Maclaurin with `cutoff` direct terms, given the precomputed direct
// terms (k + a)^{-s} and their prefix sums.
EulerMaclaurinSum euler_maclaurin(double s, double a, int cutoff, int corrections,
                                  double direct_sum, double direct_magnitude,
                                  bool want_divided, double direct_divided) {
  const auto& c = bernoulli_factorial_ratios();
  const double x = cutoff + a;
  const double log_x = std::log(x);
  const double x_pow = std::exp(-s * log_x);  // X^{-s}

  EulerMaclaurinSum out;
  const double integral_tail = x * x_pow / (s - 1.0);
  const double half_term = 0.5 * x_pow;
  double total = direct_sum + integral_tail + half_term;
  double magnitude = direct_magnitude + std::abs(integral_tail) + half_term;

  // (s)(s+1)...(s+2j-2) = s * rising_divided
  double rising_divided = 1.0;
  double power = x_pow / x;  // X^{-s-2j+1}
  double divided_corrections = 0.0;
  for (int j = 1; j <= corrections; ++j) {
    const double term_divided = c[static_cast<std::size_t>(j)] * rising_divided * power;
    const double term = s * term_divided;
    total += term;
    magnitude += std::abs(term);
    divided_corrections += term_divided;
    rising_divided *= (s + 2 * j - 1) * (s + 2 * j);
    power /= x * x;
  }
  const double next = std::abs(c[static_cast<std::size_t>(corrections + 1)] * s * rising_divided * power);
  out.zeta = total;
  out.error_estimate = std::numeric_limits<double>::epsilon() * magnitude + next;

  if (want_divided) {
    const double tail_ratio = expm1_ratio(s, log_x);
    out.divided = direct_divided + x * (tail_ratio + 1.0) / (s - 1.0) + 0.5 * tail_ratio +
                  divided_corrections;
  }
  return out;
}

EulerMaclaurinSum hurwitz_sums(double s, double a, const EulerMaclaurinConfig& config,
                               bool want_divided) {
  if (!std::isfinite(s)) throw DomainError("hurwitz_zeta: s must be finite");
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("hurwitz_zeta: a must be finite and > 0");
  if (std::abs(s - 1.0) < kPoleGuard) {
    std::ostringstream msg;
    msg << "hurwitz_zeta: s = " << s << " is at the pole s = 1";
    throw PoleError(s, 1.0, msg.str());
  }
  if (config.direct_terms < 0 || config.correction_terms < 1 ||
      config.correction_terms > kMaxCorrectionTerms) {
    throw DomainError("hurwitz_zeta: invalid Euler-Maclaurin configuration");
  }

  const int max_cutoff = config.direct_terms;
  const int corrections = config.correction_terms;

  // Direct terms are shared by every candidate cutoff.
  std::vector<double> terms(static_cast<std::size_t>(max_cutoff));
  std::vector<double> log_terms(static_cast<std::size_t>(max_cutoff));
  for (int k = 0; k < max_cutoff; ++k) {
    log_terms[static_cast<std::size_t>(k)] = std::log(k + a);
    terms[static_cast<std::size_t>(k)] = std::exp(-s * log_terms[static_cast<std::size_t>(k)]);
  }

  auto direct_parts = [&](int cutoff) {
    const auto n = static_cast<std::size_t>(cutoff);
    const double sum = pairwise_sum(n, [&](std::size_t k) { return terms[k]; });
    const double divided =
        want_divided ? pairwise_sum(n, [&](std::size_t k) { return expm1_ratio(s, log_terms[k]); })
                     : 0.0;
    return std::pair{sum, divided};
  };

  if (s >= 0.0) {
    const auto [sum, divided] = direct_parts(max_cutoff);
    return euler_maclaurin(s, a, max_cutoff, corrections, sum, sum, want_divided, divided);
  }

  // s < 0: pick the cutoff with the smallest error estimate.
  int best_cutoff = max_cutoff;
  double best_error = std::numeric_limits<double>::infinity();
  double prefix = 0.0;
  double prefix_magnitude = 0.0;
  for (int cutoff = 0; cutoff <= max_cutoff; ++cutoff) {
    if (cutoff > 0) {
      prefix += terms[static_cast<std::size_t>(cutoff - 1)];
      prefix_magnitude += std::abs(terms[static_cast<std::size_t>(cutoff - 1)]);
    }
    const auto trial =
        euler_maclaurin(s, a, cutoff, corrections, prefix, prefix_magnitude, false, 0.0);
    if (trial.error_estimate < best_error) {
      best_error = trial.error_estimate;
      best_cutoff = cutoff;
    }
  }
  const auto [sum, divided] = direct_parts(best_cutoff);
  return euler_maclaurin(s, a, best_cutoff, corrections, sum, sum, want_divided, divided);
}

[[noreturn]] void throw_model_pole(const ZetaModel& model, double s, double pole) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "zeta of " << model.describe() << ": s = " << s << " hits the pole at s = " << pole;
  msg.precision(3);
  msg << " (guard " << kPoleGuard << ")";
  throw PoleError(s, pole, msg.str());
}

void guard_pole(const ZetaModel& model, double s) {
  if (!std::isfinite(s)) throw DomainError("zeta: s must be finite");
  if (const auto pole = model.pole(); pole && std::abs(s - *pole) < kPoleGuard) {
    throw_model_pole(model, s, *pole);
  }
}

// zeta_A(s) for the unscaled operator.
double unscaled_zeta(const ZetaModel& model, double s) {
  const auto& config = model.continuation();
  return std::visit(
      [&](const auto& kind) -> double {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, FiniteDiag>) {
          const auto& ev = kind.eigenvalues;
          return pairwise_sum(ev.size(), [&](std::size_t k) { return std::pow(ev[k], -s); });
        } else if constexpr (std::is_same_v<T, ShiftedLinear>) {
          return hurwitz_zeta(s, kind.a, config);
        } else {
          return hurwitz_zeta(kind.alpha * s, 1.0, config);
        }
      },
      model.kind());
}

}  // namespace

double hurwitz_zeta(double s, double a, const EulerMaclaurinConfig& config) {
  return hurwitz_sums(s, a, config, false).zeta;
}

double hurwitz_zeta_divided_difference(double s, double a, const EulerMaclaurinConfig& config) {
  return hurwitz_sums(s, a, config, true).divided;
}

ZetaModel::ZetaModel(Kind kind, double scale) : kind_(std::move(kind)), scale_(scale) {
  if (!(scale_ > 0.0) || !std::isfinite(scale_)) {
    throw DomainError("ZetaModel: scale must be finite and > 0");
  }
}

ZetaModel ZetaModel::finite_diag(std::vector<double> eigenvalues, double scale) {
  // Reuse the Spectrum validation.
  Spectrum checked(eigenvalues, scale);
  return ZetaModel(FiniteDiag{std::move(eigenvalues)}, scale);
}

ZetaModel ZetaModel::from_spectrum(const Spectrum& spec) {
  return finite_diag({spec.eigenvalues().begin(), spec.eigenvalues().end()}, spec.scale());
}

ZetaModel ZetaModel::shifted_linear(double a, double scale) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("ShiftedLinear: a must be finite and > 0");
  return ZetaModel(ShiftedLinear{a}, scale);
}

ZetaModel ZetaModel::power_spectrum(double alpha, double scale) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("PowerSpectrum: alpha must be finite and > 0");
  }
  return ZetaModel(PowerSpectrum{alpha}, scale);
}

ZetaModel ZetaModel::with_continuation(EulerMaclaurinConfig config) const {
  ZetaModel copy = *this;
  copy.continuation_ = config;
  return copy;
}

std::optional<double> ZetaModel::pole() const {
  return std::visit(
      [](const auto& kind) -> std::optional<double> {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, FiniteDiag>) {
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, ShiftedLinear>) {
          return 1.0;
        } else {
          return 1.0 / kind.alpha;
        }
      },
      kind_);
}

std::string ZetaModel::describe() const {
  std::ostringstream out;
  out.precision(17);
  std::visit(
      [&out](const auto& kind) {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, FiniteDiag>) {
          out << "finite_diag(n=" << kind.eigenvalues.size() << ")";
        } else if constexpr (std::is_same_v<T, ShiftedLinear>) {
          out << "shifted_linear(a=" << kind.a << ")";
        } else {
          out << "power_spectrum(alpha=" << kind.alpha << ")";
        }
      },
      kind_);
  if (scale_ != 1.0) out << "/mu=" << scale_;
  return out.str();
}

double zeta_value(const ZetaModel& model, double s) {
  guard_pole(model, s);
  const double mu_pow = model.scale() == 1.0 ? 1.0 : std::pow(model.scale(), s);
  return mu_pow * unscaled_zeta(model, s);
}

double zeta_divided_difference(const ZetaModel& model, double s) {
  guard_pole(model, 0.0);
  guard_pole(model, s);
  const double log_mu = std::log(model.scale());
  const auto& config = model.continuation();
  return std::visit(
      [&](const auto& kind) -> double {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, FiniteDiag>) {
          const auto& ev = kind.eigenvalues;
          return pairwise_sum(ev.size(), [&](std::size_t k) {
            return expm1_ratio(s, std::log(ev[k]) - log_mu);
          });
        } else {
          // mu^s zeta(s) - zeta(0) = (mu^s - 1) zeta(s) + (zeta(s) - zeta(0))
          double divided = 0.0;
          double zeta_s = 0.0;
          if constexpr (std::is_same_v<T, ShiftedLinear>) {
            const auto sums = hurwitz_sums(s, kind.a, config, true);
            divided = sums.divided;
            zeta_s = sums.zeta;
          } else {
            const auto sums = hurwitz_sums(kind.alpha * s, 1.0, config, true);
            divided = kind.alpha * sums.divided;
            zeta_s = sums.zeta;
          }
          if (log_mu == 0.0) return divided;
          return divided + expm1_ratio(s, -log_mu) * zeta_s;
        }
      },
      model.kind());
}

double zeta_deriv0(const ZetaModel& model) {
  guard_pole(model, 0.0);
  double h = 1e-3;
  if (const auto pole = model.pole()) h = std::min(h, std::abs(*pole) / 8.0);
  auto central = [&model](double step) {
    return (zeta_value(model, step) - zeta_value(model, -step)) / (2.0 * step);
  };
  return (4.0 * central(h / 2.0) - central(h)) / 3.0;
}

double qdet_zeta(const ZetaModel& model, QParam q) {
  return -zeta_divided_difference(model, q.value() - 1.0);
}

double relative_qdet_zeta(const ZetaModel& model, const ZetaModel& reference, QParam q) {
  return qdet_zeta(model, q) - qdet_zeta(reference, q);
}

ZetaModel power_transform(const ZetaModel& model, double theta) {
  if (theta == 0.0 || !std::isfinite(theta)) {
    throw DomainError("power_transform: theta must be finite and non-zero");
  }
  const double mu = model.scale();
  ZetaModel out = std::visit(
      [&](const auto& kind) -> ZetaModel {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, FiniteDiag>) {
          std::vector<double> values;
          values.reserve(kind.eigenvalues.size());
          for (double lambda : kind.eigenvalues) values.push_back(std::pow(lambda / mu, theta));
          return ZetaModel::finite_diag(std::move(values), 1.0);
        } else if constexpr (std::is_same_v<T, ShiftedLinear>) {
          if (theta != 1.0) {
            throw UnsupportedError(
                "power_transform: shifted_linear spectra are only closed under theta = 1");
          }
          return model;
        } else {
          if (!(theta > 0.0)) {
            throw UnsupportedError(
                "power_transform: power_spectrum is only closed under theta > 0");
          }
          return ZetaModel::power_spectrum(kind.alpha * theta, std::pow(mu, theta));
        }
      },
      model.kind());
  return out.with_continuation(model.continuation());
}

double theta_covariance_zeta(const ZetaModel& model, QParam q, double theta) {
  const QParam q_prime = theta_reparam(q, theta);
  const ZetaModel transformed = power_transform(model, theta);
  return std::abs(qdet_zeta(model, q_prime) - qdet_zeta(transformed, q) / theta);
}

}  // namespace qspectra
