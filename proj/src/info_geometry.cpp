#include "qspectra/info_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "qspectra/errors.hpp"
#include "qspectra/summation.hpp"

namespace qspectra {

namespace {

constexpr double kPotentialPoleGuard = 1e-6;

void require_potential_regular(QParam q) {
  if (std::abs(2.0 - q.value()) < kPotentialPoleGuard) {
    throw DomainError("potential_phi: Phi_q has a pole (m-1)/(2-q) at q = 2");
  }
}

}  // namespace

SimplexPoint::SimplexPoint(std::vector<double> p) : p_(std::move(p)) {
  if (p_.size() < 2) throw DomainError("SimplexPoint: need m >= 2 components");
  for (double x : p_) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw DomainError("SimplexPoint: point is not in the open simplex (p_i = " +
                        std::to_string(x) + ")");
    }
  }
  const double total = pairwise_sum(p_);
  if (std::abs(total - 1.0) > 1e-12) {
    throw DomainError("SimplexPoint: components sum to " + std::to_string(total));
  }
}

SimplexPoint SimplexPoint::from_coordinates(std::span<const double> xi) {
  std::vector<double> p(xi.begin(), xi.end());
  double rest = 1.0;
  for (double x : xi) rest -= x;
  p.push_back(rest);
  return SimplexPoint(std::move(p));
}

double potential_phi_extended(std::span<const double> p, QParam q) {
  require_potential_regular(q);
  const double r = 2.0 - q.value();
  const QParam entropic(r, q.near_one_eps());
  // p (p^{1-q} - 1)/(q - 1) = p ln_{2-q}(1/p); stable through q = 1.
  const double sum = pairwise_sum(p.size(), [&](std::size_t i) {
    if (!(p[i] > 0.0)) throw DomainError("potential_phi: components must be > 0");
    return p[i] * q_log(1.0 / p[i], entropic);
  });
  return sum / r;
}

double potential_phi(const SimplexPoint& pt, QParam q) {
  return potential_phi_extended(pt.probabilities(), q);
}

Eigen::DiagonalMatrix<double, Eigen::Dynamic> hessian_phi(const SimplexPoint& pt, QParam q) {
  const auto p = pt.probabilities();
  Eigen::VectorXd diag(static_cast<Eigen::Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) {
    diag(static_cast<Eigen::Index>(i)) = -std::pow(p[i], -q.value());
  }
  return Eigen::DiagonalMatrix<double, Eigen::Dynamic>(diag);
}

Eigen::MatrixXd embedding_jacobian(std::size_t m) {
  if (m < 2) throw DomainError("embedding_jacobian: need m >= 2");
  const auto rows = static_cast<Eigen::Index>(m);
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(rows, rows - 1);
  jac.topRows(rows - 1).setIdentity();
  jac.row(rows - 1).setConstant(-1.0);
  return jac;
}

Eigen::MatrixXd induced_metric(const SimplexPoint& pt, QParam q) {
  const auto p = pt.probabilities();
  const auto dim = static_cast<Eigen::Index>(p.size() - 1);
  const double last = std::pow(p.back(), -q.value());
  Eigen::MatrixXd g = Eigen::MatrixXd::Constant(dim, dim, last);
  for (Eigen::Index a = 0; a < dim; ++a) {
    g(a, a) += std::pow(p[static_cast<std::size_t>(a)], -q.value());
  }
  return g;
}

double volume_element(const SimplexPoint& pt, QParam q) {
  const auto p = pt.probabilities();
  const std::size_t dim = p.size() - 1;
  const double qv = q.value();
  // log det g = -q sum_{a<m} ln p_a + log1p(p_m^{-q} sum_{a<m} p_a^q)
  const double log_prod = pairwise_sum(dim, [&](std::size_t a) { return std::log(p[a]); });
  const double weight_sum = pairwise_sum(dim, [&](std::size_t a) { return std::pow(p[a], qv); });
  const double log_det = -qv * log_prod + std::log1p(std::pow(p.back(), -qv) * weight_sum);
  return std::exp(0.5 * log_det);
}

MetricField grid_field(int m, int resolution, QParam q, double margin) {
  if (m != 3) throw DomainError("grid_field: only the ternary simplex (m = 3) is gridded");
  if (resolution < 1) throw DomainError("grid_field: resolution must be >= 1");
  if (!(margin > 0.0) || !(margin < 1.0 / 3.0)) {
    throw DomainError("grid_field: margin must lie in (0, 1/3)");
  }
  require_potential_regular(q);

  // Centroids in units of 1/(3R): up-triangles (3i+1, 3j+1, 3k+1) with
  // i+j+k = R-1 and down-triangles (3i+2, 3j+2, 3k+2) with i+j+k = R-2.
  const long long denom = 3LL * resolution;
  std::vector<std::tuple<long long, long long, long long>> lattice;
  lattice.reserve(static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution));
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; i + j < resolution; ++j) {
      const int k = resolution - 1 - i - j;
      lattice.emplace_back(3LL * i + 1, 3LL * j + 1, 3LL * k + 1);
      if (i + j <= resolution - 2) {
        const int kd = resolution - 2 - i - j;
        lattice.emplace_back(3LL * i + 2, 3LL * j + 2, 3LL * kd + 2);
      }
    }
  }
  std::sort(lattice.begin(), lattice.end());

  MetricField field;
  field.q = q;
  for (const auto& [a, b, c] : lattice) {
    const double p1 = static_cast<double>(a) / static_cast<double>(denom);
    const double p2 = static_cast<double>(b) / static_cast<double>(denom);
    const double p3 = static_cast<double>(c) / static_cast<double>(denom);
    if (std::min({p1, p2, p3}) < margin) continue;
    SimplexPoint pt({p1, p2, p3});
    field.phi.push_back(potential_phi(pt, q));
    field.volume.push_back(volume_element(pt, q));
    field.points.push_back(std::move(pt));
  }
  if (field.points.empty()) throw DomainError("grid_field: margin excludes every grid point");
  return field;
}

}  // namespace qspectra
