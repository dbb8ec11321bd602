#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qspectra/q_algebra.hpp"

namespace qspectra {

/// Probability vector: p_i >= 0 and sum p_i = 1 within 1e-12.
class Distribution {
 public:
  explicit Distribution(std::vector<double> p);

  std::span<const double> probabilities() const noexcept { return p_; }
  std::size_t size() const noexcept { return p_.size(); }

 private:
  std::vector<double> p_;
};

/// n = n_1 + ... + n_m with every part >= 1.
class Partition {
 public:
  explicit Partition(std::vector<std::int64_t> parts);
  Partition(std::int64_t n, std::vector<std::int64_t> parts);

  std::int64_t total() const noexcept { return n_; }
  std::span<const std::int64_t> parts() const noexcept { return parts_; }

  /// p_i = n_i / n.
  Distribution ratios() const;

 private:
  std::int64_t n_ = 0;
  std::vector<std::int64_t> parts_;
};

// sum_{k=1}^{n} k^r, pairwise summation.
double generalized_harmonic(std::int64_t n, double r);

// ln_q(n!_q) = sum_{k=1}^{n} ln_q k; ln(n!) at q = 1.
double q_factorial_log(std::int64_t n, QParam q);

// n!_q = exp_q(ln_q(n!_q)), i.e. the q-product 1 (x)_q 2 (x)_q ... (x)_q n.
QValue q_factorial(std::int64_t n, QParam q);

// ln_q of the q-multinomial coefficient [n; n_1..n_m]_q:
// (sum_{k<=n} k^{1-q} - sum_i sum_{k<=n_i} k^{1-q}) / (1-q).
double q_multinomial_log(const Partition& part, QParam q);

// Tsallis entropy (sum p_i^q - 1)/(1-q); Shannon entropy at q = 1.
// Zero-probability entries do not contribute for any q.
double tsallis_entropy(const Distribution& p, QParam q);

double shannon_entropy(const Distribution& p);

/// Leading large-n term n^{2-q}/(2-q) * H_{2-q}(p) of the q-multinomial
/// log. Throws DomainError at q = 2, where the coefficient has a pole.
double asymptotic_leading(std::int64_t n, const Distribution& p, QParam q);

/// q_multinomial_log(part) - asymptotic_leading(n, n_i/n). Vanishes
/// identically at q = 0.
double asymptotic_remainder(const Partition& part, QParam q);

}  // namespace qspectra
