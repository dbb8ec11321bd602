#include "qspectra/finite_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qspectra/errors.hpp"
#include "qspectra/summation.hpp"

namespace qspectra {

Spectrum::Spectrum(std::vector<double> eigenvalues, double scale)
    : eigenvalues_(std::move(eigenvalues)), scale_(scale) {
  if (eigenvalues_.empty()) throw DomainError("Spectrum: no eigenvalues");
  if (!(scale_ > 0.0) || !std::isfinite(scale_)) {
    throw DomainError("Spectrum: scale must be finite and > 0");
  }
  for (double lambda : eigenvalues_) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
      throw DomainError("Spectrum: eigenvalues must be finite and > 0, got " +
                        std::to_string(lambda));
    }
  }
}

Spectrum Spectrum::direct_sum(const Spectrum& a, const Spectrum& b) {
  if (a.scale() != b.scale()) throw DomainError("direct_sum: scales differ");
  std::vector<double> values(a.eigenvalues().begin(), a.eigenvalues().end());
  values.insert(values.end(), b.eigenvalues().begin(), b.eigenvalues().end());
  return Spectrum(std::move(values), a.scale());
}

double q_logdet(const Spectrum& spec, QParam q) {
  // Summing the stabilised ln_q per eigenvalue avoids the cancellation
  // between Tr A^{1-q} and Tr I near q = 1.
  return pairwise_sum(spec.size(),
                      [&spec, q](std::size_t k) { return q_log(spec.dimensionless(k), q); });
}

QValue q_det(const Spectrum& spec, QParam q) {
  return q_exp(q_logdet(spec, q), q);
}

double relative_q_logdet(const Spectrum& a, const Spectrum& reference, QParam q) {
  return q_logdet(a, q) - q_logdet(reference, q);
}

double gamma(const Spectrum& spec, QParam q) {
  return q_logdet(spec, q);
}

double gamma_variation(const Spectrum& spec, const SpectrumVariation& delta, QParam q) {
  if (delta.deltas.size() != spec.size()) {
    throw DomainError("gamma_variation: variation has " + std::to_string(delta.deltas.size()) +
                      " entries, spectrum has " + std::to_string(spec.size()));
  }
  const double mu = spec.scale();
  return pairwise_sum(spec.size(), [&](std::size_t k) {
    return std::pow(spec.dimensionless(k), -q.value()) * (delta.deltas[k] / mu);
  });
}

double flow_derivative(const Spectrum& spec, const SpectrumVariation& dspec_dtau, QParam q) {
  return gamma_variation(spec, dspec_dtau, q);
}

Spectrum power_transform(const Spectrum& spec, double theta) {
  if (theta == 0.0 || !std::isfinite(theta)) {
    throw DomainError("power_transform: theta must be finite and non-zero");
  }
  std::vector<double> values;
  values.reserve(spec.size());
  for (std::size_t k = 0; k < spec.size(); ++k) {
    values.push_back(std::pow(spec.dimensionless(k), theta));
  }
  return Spectrum(std::move(values), 1.0);
}

double check_theta_covariance(const Spectrum& spec, QParam q, double theta) {
  const QParam q_prime = theta_reparam(q, theta);
  const double lhs = gamma(spec, q_prime);
  const double rhs = gamma(power_transform(spec, theta), q) / theta;
  return std::abs(lhs - rhs);
}

double spectral_weight(double lambda, QParam q) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("spectral_weight: lambda must be finite and > 0");
  }
  return std::pow(lambda, -q.value());
}

WeightCurves spectral_weight_curves(double lambda_min, double lambda_max, int points,
                                    std::span<const double> qs) {
  if (!(lambda_min > 0.0) || !(lambda_max > lambda_min) || !std::isfinite(lambda_max)) {
    throw DomainError("spectral_weight_curves: need 0 < lambda_min < lambda_max");
  }
  if (points < 2) throw DomainError("spectral_weight_curves: need at least 2 points");
  if (qs.empty()) throw DomainError("spectral_weight_curves: no q values");

  WeightCurves out;
  const double lo = std::log(lambda_min);
  const double hi = std::log(lambda_max);
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    out.lambda.push_back(i == 0 ? lambda_min
                                : i == points - 1 ? lambda_max : std::exp(lo + t * (hi - lo)));
  }
  if (lambda_min < 1.0 && 1.0 < lambda_max) {
    // A grid node that should be 1 but picked up rounding is snapped, not duplicated.
    auto nearest = std::min_element(out.lambda.begin(), out.lambda.end(), [](double a, double b) {
      return std::abs(std::log(a)) < std::abs(std::log(b));
    });
    if (std::abs(std::log(*nearest)) < 1e-12) {
      *nearest = 1.0;
    } else {
      out.lambda.insert(std::upper_bound(out.lambda.begin(), out.lambda.end(), 1.0), 1.0);
    }
  }
  for (double qv : qs) {
    const QParam q(qv);
    out.q.push_back(qv);
    auto& row = out.weight.emplace_back();
    row.reserve(out.lambda.size());
    for (double lambda : out.lambda) row.push_back(spectral_weight(lambda, q));
  }
  return out;
}

}  // namespace qspectra
