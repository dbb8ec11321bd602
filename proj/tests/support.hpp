#pragma once

// Hand-rolled generators for the property tests. Every generator takes the
// engine explicitly so a failing case can be replayed from its seed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace qtest {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double log_uniform(Rng& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

inline std::vector<double> positive_values(Rng& rng, std::size_t n, double lo, double hi) {
  std::vector<double> out(n);
  for (double& v : out) v = log_uniform(rng, lo, hi);
  return out;
}

// Parts sum to n; between 1 and max_parts of them.
inline std::vector<std::int64_t> composition(Rng& rng, std::int64_t n, std::size_t max_parts) {
  const auto limit = static_cast<std::size_t>(std::min<std::int64_t>(n, static_cast<std::int64_t>(max_parts)));
  const std::size_t m = std::uniform_int_distribution<std::size_t>(1, limit)(rng);
  std::vector<std::int64_t> cuts;
  while (cuts.size() + 1 < m) {
    const auto c = std::uniform_int_distribution<std::int64_t>(1, n - 1)(rng);
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::int64_t> parts;
  std::int64_t prev = 0;
  for (auto c : cuts) {
    parts.push_back(c - prev);
    prev = c;
  }
  parts.push_back(n - prev);
  return parts;
}

// Interior simplex point with every coordinate >= floor.
inline std::vector<double> simplex_point(Rng& rng, std::size_t m, double floor) {
  std::vector<double> w(m);
  double total = 0.0;
  for (double& x : w) total += (x = std::exponential_distribution<double>(1.0)(rng));
  double partial = 0.0;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    w[i] = floor + (1.0 - static_cast<double>(m) * floor) * w[i] / total;
    partial += w[i];
  }
  w[m - 1] = 1.0 - partial;
  return w;
}

inline double rel_err(double got, double want) {
  const double scale = std::max(std::abs(got), std::abs(want));
  return scale == 0.0 ? 0.0 : std::abs(got - want) / scale;
}

}  // namespace qtest
