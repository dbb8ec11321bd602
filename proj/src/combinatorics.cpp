#include "qspectra/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qspectra/errors.hpp"
#include "qspectra/summation.hpp"

namespace qspectra {

namespace {

void require_positive_count(std::int64_t n, const char* op) {
  if (n < 1) throw DomainError(std::string(op) + ": n must be >= 1");
}

// sum_{k=lo}^{hi} ln_q k.
double q_log_range(std::int64_t lo, std::int64_t hi, QParam q) {
  if (hi < lo) return 0.0;
  const auto count = static_cast<std::size_t>(hi - lo + 1);
  return pairwise_sum(count, [lo, q](std::size_t i) {
    return q_log(static_cast<double>(lo + static_cast<std::int64_t>(i)), q);
  });
}

}  // namespace

Distribution::Distribution(std::vector<double> p) : p_(std::move(p)) {
  if (p_.empty()) throw DomainError("Distribution: empty");
  for (double x : p_) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw DomainError("Distribution: probabilities must be finite and >= 0");
    }
  }
  const double total = pairwise_sum(p_);
  if (std::abs(total - 1.0) > 1e-12) {
    throw DomainError("Distribution: probabilities sum to " + std::to_string(total));
  }
}

Partition::Partition(std::vector<std::int64_t> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw DomainError("Partition: at least one part required");
  for (auto part : parts_) {
    if (part < 1) throw DomainError("Partition: parts must be >= 1");
    n_ += part;
  }
}

Partition::Partition(std::int64_t n, std::vector<std::int64_t> parts)
    : Partition(std::move(parts)) {
  if (n != n_) {
    throw DomainError("Partition: parts sum to " + std::to_string(n_) + ", expected " +
                      std::to_string(n));
  }
}

Distribution Partition::ratios() const {
  std::vector<double> p;
  p.reserve(parts_.size());
  for (auto part : parts_) p.push_back(static_cast<double>(part) / static_cast<double>(n_));
  return Distribution(std::move(p));
}

double generalized_harmonic(std::int64_t n, double r) {
  require_positive_count(n, "generalized_harmonic");
  return pairwise_sum(static_cast<std::size_t>(n), [r](std::size_t i) {
    return std::pow(static_cast<double>(i + 1), r);
  });
}

double q_factorial_log(std::int64_t n, QParam q) {
  require_positive_count(n, "q_factorial_log");
  return q_log_range(2, n, q);  // ln_q 1 = 0
}

QValue q_factorial(std::int64_t n, QParam q) {
  return q_exp(q_factorial_log(n, q), q);
}

double q_multinomial_log(const Partition& part, QParam q) {
  const auto parts = part.parts();
  // sum over the parts equals n, so the reference terms (the "-1" in each
  // ln_q k) cancel between the full spectrum and the subspectra.
  const auto largest = std::max_element(parts.begin(), parts.end());
  const std::int64_t n_check = std::accumulate(parts.begin(), parts.end(), std::int64_t{0});
  if (n_check != part.total()) throw DomainError("q_multinomial_log: inconsistent partition");

  // The terms k <= max n_i appear in both sums and are dropped.
  double value = q_log_range(*largest + 1, part.total(), q);
  for (auto it = parts.begin(); it != parts.end(); ++it) {
    if (it == largest) continue;
    value -= q_log_range(2, *it, q);
  }
  return value;
}

double tsallis_entropy(const Distribution& p, QParam q) {
  const auto probs = p.probabilities();
  // H_q(p) = sum_i p_i ln_q(1/p_i), which is the stated formula on the simplex
  // and stays accurate as q -> 1.
  return pairwise_sum(probs.size(), [probs, q](std::size_t i) {
    const double pi = probs[i];
    return pi > 0.0 ? pi * q_log(1.0 / pi, q) : 0.0;
  });
}

double shannon_entropy(const Distribution& p) {
  const auto probs = p.probabilities();
  return pairwise_sum(probs.size(), [probs](std::size_t i) {
    const double pi = probs[i];
    return pi > 0.0 ? -pi * std::log(pi) : 0.0;
  });
}

double asymptotic_leading(std::int64_t n, const Distribution& p, QParam q) {
  require_positive_count(n, "asymptotic_leading");
  const double r = 2.0 - q.value();
  if (std::abs(r) < q.near_one_eps()) {
    throw DomainError("asymptotic_leading: coefficient 1/(2-q) has a pole at q = 2");
  }
  const double entropy = tsallis_entropy(p, QParam(r, q.near_one_eps()));
  return std::pow(static_cast<double>(n), r) / r * entropy;
}

double asymptotic_remainder(const Partition& part, QParam q) {
  const double leading = asymptotic_leading(part.total(), part.ratios(), q);
  return q_multinomial_log(part, q) - leading;
}

}  // namespace qspectra
