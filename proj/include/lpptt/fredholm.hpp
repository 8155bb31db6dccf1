#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace lpptt {

/// Nystrom grid for operators on L^2(-L, 0) + L^2(0, L): one Gauss-Legendre
/// rule per half, concatenated left-to-right.  The split keeps quadrature
/// nodes away from the sign-indicator discontinuities that the two-time
/// kernel carries at 0.
struct QuadratureGrid {
  double L = 0.0;
  int nodes_per_side = 0;
  std::vector<double> nodes;    ///< ascending, negative half first
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

QuadratureGrid build_grid(double L, int nodes_per_side);

/// Gauss-Legendre rule on [a, a + L] (single interval), used for operators
/// restricted to a half line.
QuadratureGrid build_interval_grid(double a, double L, int nodes);

/// Symmetrized Nystrom discretization  M_pq = sqrt(w_p) k(x_p, x_q) sqrt(w_q).
/// det(I + M) then approximates the Fredholm determinant of k on the grid's
/// interval.
template <typename Kernel>
Eigen::MatrixXd discretize(const Kernel& k, const QuadratureGrid& grid) {
  const Eigen::Index n = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd m(n, n);
  std::vector<double> sw(grid.size());
  for (std::size_t p = 0; p < grid.size(); ++p) sw[p] = std::sqrt(grid.weights[p]);
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = 0; q < n; ++q)
      m(p, q) = sw[static_cast<std::size_t>(p)] * sw[static_cast<std::size_t>(q)] *
                k(grid.nodes[static_cast<std::size_t>(p)], grid.nodes[static_cast<std::size_t>(q)]);
  return m;
}

/// det(I + M) for a complex matrix via partially pivoted LU with exponent
/// tracking, so intermediate products cannot overflow.  Throws
/// accuracy_error if the final value itself is out of double range.
std::complex<double> det_one_plus(const Eigen::MatrixXcd& m);
double det_one_plus(const Eigen::MatrixXd& m);

/// GUE Tracy-Widom distribution  F2(xi) = det(I - K_Ai) on L^2(xi, infty),
/// by Nystrom quadrature on [xi, xi + L] with the batch Airy kernel.
double tracy_widom_f2(double xi, double L = 14.0, int nodes = 80);

}  // namespace lpptt
