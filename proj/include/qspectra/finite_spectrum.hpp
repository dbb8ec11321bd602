#pragma once

#include <span>
#include <vector>

#include "qspectra/q_algebra.hpp"

namespace qspectra {

/// Finite list of strictly positive eigenvalues together with the reference
/// scale mu. Every spectral function acts on the dimensionless values
/// lambda_k / mu.
class Spectrum {
 public:
  explicit Spectrum(std::vector<double> eigenvalues, double scale = 1.0);

  std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }
  double scale() const noexcept { return scale_; }
  std::size_t size() const noexcept { return eigenvalues_.size(); }

  double dimensionless(std::size_t k) const { return eigenvalues_[k] / scale_; }

  /// Spectrum of A (+) B. Both operands must share the same scale.
  static Spectrum direct_sum(const Spectrum& a, const Spectrum& b);

 private:
  std::vector<double> eigenvalues_;
  double scale_;
};

/// Perturbations delta lambda_k (or d lambda_k / d tau), same units as the
/// eigenvalues they vary.
struct SpectrumVariation {
  std::vector<double> deltas;
};

// ln_q det_q A = sum_k ln_q(lambda_k/mu) = (Tr A^{1-q} - Tr I)/(1-q).
double q_logdet(const Spectrum& spec, QParam q);

// det_q A = exp_q(ln_q det_q A); independent of eigenvalue order.
QValue q_det(const Spectrum& spec, QParam q);

double relative_q_logdet(const Spectrum& a, const Spectrum& reference, QParam q);

/// Effective action Gamma_q[A] = ln_q det_q A.
double gamma(const Spectrum& spec, QParam q);

// delta Gamma_q = Tr(A^{-q} delta A) = sum_k (lambda_k/mu)^{-q} delta_k/mu.
double gamma_variation(const Spectrum& spec, const SpectrumVariation& delta, QParam q);

// d Gamma_q / d tau = Tr(A^{-q} dA/dtau).
double flow_derivative(const Spectrum& spec, const SpectrumVariation& dspec_dtau, QParam q);

/// A^theta defined spectrally on the dimensionless operator A/mu; the result
/// carries scale 1.
Spectrum power_transform(const Spectrum& spec, double theta);

/// |Gamma_{q'}[A] - Gamma_q[A^theta]/theta| with q' = 1 + theta (q - 1).
double check_theta_covariance(const Spectrum& spec, QParam q, double theta);

// w(lambda) = lambda^{-q}.
double spectral_weight(double lambda, QParam q);

/// w(lambda) = lambda^{-q} for several q over a shared lambda grid.
struct WeightCurves {
  std::vector<double> lambda;
  std::vector<double> q;
  std::vector<std::vector<double>> weight;  // weight[i][j] = w(lambda[j], q[i])
};

/// `points` log-spaced samples of [lambda_min, lambda_max]; lambda = 1 is
/// added exactly when it lies inside the range and is not already sampled.
WeightCurves spectral_weight_curves(double lambda_min, double lambda_max, int points,
                                    std::span<const double> qs);

}  // namespace qspectra
