#pragma once

#include <cstddef>
#include <span>

namespace qspectra {

namespace detail {

template <class Term>
double pairwise_sum_range(Term& term, std::size_t lo, std::size_t hi) {
  constexpr std::size_t kBlock = 16;
  if (hi - lo <= kBlock) {
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += term(i);
    return acc;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum_range(term, lo, mid) + pairwise_sum_range(term, mid, hi);
}

}  // namespace detail

// Sum of term(0) + ... + term(count - 1) in a fixed binary-tree order.
// Rounding error grows as O(log count) and the result does not depend on
// how the caller might parallelise the leaves.
template <class Term>
double pairwise_sum(std::size_t count, Term term) {
  if (count == 0) return 0.0;
  return detail::pairwise_sum_range(term, 0, count);
}

inline double pairwise_sum(std::span<const double> values) {
  return pairwise_sum(values.size(), [values](std::size_t i) { return values[i]; });
}

}  // namespace qspectra
