#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "qspectra/errors.hpp"
#include "qspectra/spectral_zeta.hpp"

namespace qspectra {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

// B_0..B_max from sum_{k=0}^{m} C(m+1, k) B_k = 0, in exact rationals.
std::vector<double> compute_bernoulli(int max_index) {
  std::vector<cpp_rational> b(static_cast<std::size_t>(max_index) + 1);
  b[0] = 1;
  for (int m = 1; m <= max_index; ++m) {
    cpp_rational acc = 0;
    cpp_int binom = 1;  // C(m+1, k)
    for (int k = 0; k < m; ++k) {
      acc += cpp_rational(binom) * b[static_cast<std::size_t>(k)];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    b[static_cast<std::size_t>(m)] = -acc / cpp_rational(m + 1);
  }
  std::vector<double> out;
  out.reserve(b.size());
  for (const auto& v : b) out.push_back(v.convert_to<double>());
  return out;
}

}  // namespace

std::vector<double> bernoulli_numbers(int count) {
  if (count < 0 || count > kMaxBernoulliIndex) {
    throw DomainError("bernoulli_numbers: count must be in [0, " +
                      std::to_string(kMaxBernoulliIndex) + "]");
  }
  static const std::vector<double> table = compute_bernoulli(kMaxBernoulliIndex);
  return {table.begin(), table.begin() + count + 1};
}

}  // namespace qspectra
