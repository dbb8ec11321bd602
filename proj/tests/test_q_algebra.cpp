#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "qspectra/errors.hpp"
#include "qspectra/q_algebra.hpp"
#include "support.hpp"

using namespace qspectra;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Independent evaluation in long double straight from the definition.
long double ref_q_log(long double x, long double q) {
  if (q == 1.0L) return std::log(x);
  return (std::pow(x, 1.0L - q) - 1.0L) / (1.0L - q);
}

const std::vector<double> kQs = {-0.5, 0.3, 1.0, 1.7, 2.5};

std::vector<double> xs() {
  std::vector<double> out;
  for (int i = 0; i < 10; ++i) out.push_back(std::pow(10.0, -1.0 + 2.0 * i / 9.0));
  return out;
}

}  // namespace

TEST_CASE("q_log reference values") {
  CHECK(q_log(1.0, QParam(0.3)) == 0.0);
  CHECK(q_log(1.0, QParam(1.0)) == 0.0);
  CHECK_THAT(q_log(4.0, QParam(0.5)), WithinRel(2.0, 1e-15));
  CHECK_THAT(q_log(2.0, QParam(2.0)), WithinRel(0.5, 1e-15));
  CHECK(q_log(std::exp(1.0), QParam(1.0)) == std::log(std::exp(1.0)));
}

TEST_CASE("q_log agrees with an extended-precision evaluation") {
  qtest::Rng rng(1);
  for (int i = 0; i < 2000; ++i) {
    const double x = qtest::log_uniform(rng, 1e-3, 1e3);
    double q = qtest::uniform(rng, -1.0, 3.0);
    if (std::abs(q - 1.0) < 1e-2) q += 0.05;
    const double want = static_cast<double>(ref_q_log(x, q));
    INFO("x = " << x << ", q = " << q);
    CHECK(qtest::rel_err(q_log(x, QParam(q)), want) < 1e-13);
  }
}

TEST_CASE("q_log is continuous through the near-one band") {
  for (double x : {0.2, 0.9, 1.5, 7.0}) {
    const double ln = std::log(x);
    for (double d : {1e-6, 2e-8, 1e-8, 5e-9, 1e-12}) {
      for (double sign : {-1.0, 1.0}) {
        const double q = 1.0 + sign * d;
        // First-order model of the deviation: ln_q x ~ ln x + (1-q) ln^2 x / 2.
        const double model = ln + (1.0 - q) * ln * ln / 2.0;
        CHECK_THAT(q_log(x, QParam(q)), WithinAbs(model, 1e-15 + d * d * std::abs(ln * ln * ln)));
      }
    }
  }
}

TEST_CASE("q_log rejects non-positive arguments") {
  CHECK_THROWS_AS(q_log(0.0, QParam(0.5)), DomainError);
  CHECK_THROWS_AS(q_log(-1.0, QParam(1.0)), DomainError);
  CHECK_THROWS_AS(q_log(std::nan(""), QParam(1.0)), DomainError);
  CHECK_THROWS_AS(QParam(std::numeric_limits<double>::infinity()), DomainError);
  CHECK_THROWS_AS(QParam(1.0, 0.0), DomainError);
}

TEST_CASE("q_exp reference values and clamping") {
  for (double q : kQs) {
    const auto one = q_exp(0.0, QParam(q));
    CHECK(one.value == 1.0);
    CHECK_FALSE(one.clamped);
  }
  CHECK_THAT(q_exp(3.0, QParam(0.0)).value, WithinRel(4.0, 1e-15));
  CHECK_THAT(q_exp(-2.0, QParam(2.0)).value, WithinRel(1.0 / 3.0, 1e-15));

  const auto low = q_exp(-2.0, QParam(0.0));
  CHECK(low.clamped);
  CHECK(low.value == 0.0);

  // q > 1: the base reaching zero sends the power to +infinity.
  const auto high = q_exp(1.0, QParam(2.0));
  CHECK(high.clamped);
  CHECK(std::isinf(high.value));
  CHECK_FALSE(q_exp(0.999, QParam(2.0)).clamped);
  CHECK_THAT(q_exp(1.0, QParam(1.0)).value, WithinRel(std::exp(1.0), 1e-15));
}

TEST_CASE("q_exp inverts q_log on the unclamped branch") {
  qtest::Rng rng(2);
  for (int i = 0; i < 2000; ++i) {
    const double x = qtest::log_uniform(rng, 0.1, 10.0);
    const QParam q(qtest::uniform(rng, -1.0, 3.0));
    const auto r = q_exp(q_log(x, q), q);
    REQUIRE_FALSE(r.clamped);
    CHECK(qtest::rel_err(r.value, x) < 1e-12);
  }
}

TEST_CASE("q_mul and q_div reference values") {
  CHECK_THAT(q_mul(2.0, 3.0, QParam(0.0)).value, WithinRel(4.0, 1e-15));
  CHECK_THAT(q_mul(2.0, 2.0, QParam(0.5)).value, WithinRel(9.0 - 4.0 * std::sqrt(2.0), 1e-14));
  CHECK_THAT(q_div(4.0, 3.0, QParam(0.0)).value, WithinRel(2.0, 1e-15));
  const auto clamped = q_div(1.0, 3.0, QParam(0.0));
  CHECK(clamped.clamped);
  CHECK(clamped.value == 0.0);
  CHECK(q_mul(2.0, 3.0, QParam(1.0)).value == 6.0);
  CHECK(q_div(2.0, 4.0, QParam(1.0)).value == 0.5);
  for (double q : kQs) {
    for (double x : xs()) {
      CHECK_THAT(q_mul(x, 1.0, QParam(q)).value, WithinRel(x, 1e-14));
      CHECK_THAT(q_div(x, x, QParam(q)).value, WithinRel(1.0, 1e-14));
    }
  }
}

TEST_CASE("pseudo-additivity over the x, y, q grid") {
  for (double qv : kQs) {
    const QParam q(qv);
    for (double x : xs()) {
      for (double y : xs()) {
        const double lx = q_log(x, q), ly = q_log(y, q);
        const double cross = (1.0 - qv) * lx * ly;
        const double scale = std::abs(lx) + std::abs(ly) + std::abs(cross);
        CHECK(std::abs(q_log(x * y, q) - (lx + ly + cross)) <= 1e-12 * scale);
      }
    }
  }
}

TEST_CASE("q-product and q-quotient are dual to addition of q-logs") {
  for (double qv : kQs) {
    const QParam q(qv);
    for (double x : xs()) {
      for (double y : xs()) {
        const double lx = q_log(x, q), ly = q_log(y, q);
        const double scale = std::abs(lx) + std::abs(ly);
        if (const auto m = q_mul(x, y, q); !m.clamped) {
          CHECK(std::abs(q_log(m.value, q) - (lx + ly)) <= 1e-12 * scale);
        }
        if (const auto d = q_div(x, y, q); !d.clamped) {
          CHECK(std::abs(q_log(d.value, q) - (lx - ly)) <= 1e-12 * scale);
        } else {
          // A clamp fires only when the q-log difference leaves the range of ln_q.
          CHECK(1.0 + (1.0 - qv) * (lx - ly) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("theta reparametrisation") {
  CHECK(theta_reparam(QParam(0.7), 1.0).value() == 0.7);
  CHECK_THAT(theta_reparam(QParam(0.3), -1.0).value(), WithinAbs(1.7, 1e-15));
  CHECK(theta_reparam(QParam(0.5), 2.0).value() == 0.0);
  CHECK_THROWS_AS(theta_reparam(QParam(0.5), 0.0), DomainError);

  for (double qv : kQs) {
    const QParam q(qv);
    for (double theta : {-2.0, -1.0, -1.0 / qv, 0.5, 3.0}) {
      const QParam qp = theta_reparam(q, theta);
      for (double x : xs()) {
        CHECK(qtest::rel_err(q_log(x, qp), q_log(std::pow(x, theta), q) / theta) <= 1e-12);
      }
    }
  }
}

TEST_CASE("q_mul is commutative and associative away from the clamp") {
  int checked = 0;
  for (double qv : kQs) {
    const QParam q(qv);
    for (double x : xs()) {
      for (double y : xs()) {
        const auto xy = q_mul(x, y, q);
        if (xy.clamped) continue;
        CHECK(qtest::rel_err(xy.value, q_mul(y, x, q).value) <= 1e-12);
        for (double z : xs()) {
          const auto yz = q_mul(y, z, q);
          if (yz.clamped) continue;
          const auto left = q_mul(xy.value, z, q), right = q_mul(x, yz.value, q);
          if (left.clamped || right.clamped) continue;
          ++checked;
          CHECK(qtest::rel_err(left.value, right.value) <= 1e-12);
        }
      }
    }
  }
  CHECK(checked > 3000);
}

TEST_CASE("q_product folds left and keeps a clamp sticky") {
  const std::vector<double> factors = {1.0, 2.0, 3.0, 4.0};
  const auto four = q_product(factors, QParam(0.0));
  CHECK_FALSE(four.clamped);
  CHECK_THAT(four.value, WithinRel(7.0, 1e-15));  // exp_0(0+1+2+3)
  CHECK_THAT(q_product(factors, QParam(1.0)).value, WithinRel(24.0, 1e-14));
  CHECK(q_product(std::vector<double>{}, QParam(0.4)).value == 1.0);

  // 0.2 (x)_0 0.3 = [0.2 + 0.3 - 1]_+ clamps to 0; factors of 1 keep it there.
  const std::vector<double> small = {0.2, 0.3, 1.0, 1.0};
  const auto pinned = q_product(small, QParam(0.0));
  CHECK(pinned.clamped);
  CHECK(pinned.value == 0.0);

  // Growing factors afterwards move the product back into the admissible range,
  // but the flag records that the chain passed through a clamp.
  const std::vector<double> recover = {0.2, 0.3, 5.0};
  const auto r = q_product(recover, QParam(0.0));
  CHECK(r.clamped);
  CHECK_THAT(r.value, WithinRel(4.0, 1e-15));

  const std::vector<double> big = {3.0, 3.0};
  const auto inf = q_product(big, QParam(2.0));  // 1/3 + 1/3 - 1 < 0
  CHECK(inf.clamped);
  CHECK(std::isinf(inf.value));
}
