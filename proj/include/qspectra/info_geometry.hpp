#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "qspectra/q_algebra.hpp"

namespace qspectra {

/// Interior point of the probability simplex (every p_i > 0, sum p_i = 1
/// within 1e-12). Coordinates are xi_a = p_a, a = 1..m-1, with
/// p_m = 1 - sum_a xi_a.
class SimplexPoint {
 public:
  explicit SimplexPoint(std::vector<double> p);
  static SimplexPoint from_coordinates(std::span<const double> xi);

  std::span<const double> probabilities() const noexcept { return p_; }
  std::size_t dimension() const noexcept { return p_.size(); }

 private:
  std::vector<double> p_;
};

/// Phi_q(p) = H_{2-q}(p)/(2-q) = (1 - sum p_i^{2-q}) / ((2-q)(1-q)); the
/// Shannon entropy at q = 1. Rejects q within 1e-6 of 2, where Phi_q has a
/// p-independent pole (m - 1)/(2 - q).
double potential_phi(const SimplexPoint& pt, QParam q);

/// Extension of Phi_q to the open positive orthant,
/// sum_i (p_i^{2-q} - p_i) / ((q-1)(2-q)); it agrees with potential_phi on the
/// simplex and has the same Hessian everywhere.
double potential_phi_extended(std::span<const double> p, QParam q);

// d^2 Phi_q / dp_i dp_j = -p_i^{-q} delta_ij.
Eigen::DiagonalMatrix<double, Eigen::Dynamic> hessian_phi(const SimplexPoint& pt, QParam q);

/// dp_i/dxi_a for the standard coordinates: identity on the first m-1 rows,
/// -1 on the last row.
Eigen::MatrixXd embedding_jacobian(std::size_t m);

// g_ab = p_a^{-q} delta_ab + p_m^{-q}, a, b = 1..m-1.
Eigen::MatrixXd induced_metric(const SimplexPoint& pt, QParam q);

/// sqrt(det g) from the rank-one update
/// det g = (prod_{a<m} p_a^{-q}) (1 + p_m^{-q} sum_{a<m} p_a^q).
double volume_element(const SimplexPoint& pt, QParam q);

/// Potential and volume element sampled over the ternary simplex.
struct MetricField {
  std::vector<SimplexPoint> points;
  std::vector<double> phi;
  std::vector<double> volume;
  QParam q{1.4};
};

/// Samples the m = 3 simplex at the centroids of the `resolution`^2 triangles
/// of its barycentric subdivision, keeping only points whose smallest
/// coordinate is >= margin. Rows are ordered by (p1, p2) ascending.
MetricField grid_field(int m, int resolution, QParam q, double margin);

}  // namespace qspectra
