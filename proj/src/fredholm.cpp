#include "lpptt/fredholm.hpp"

#include <cmath>

#include "lpptt/airy.hpp"
#include "lpptt/errors.hpp"
#include "lpptt/quadrature.hpp"

namespace lpptt {

QuadratureGrid build_grid(double L, int nodes_per_side) {
  if (!(L > 0.0)) throw parameter_error("build_grid: L must be positive");
  if (nodes_per_side < 2) throw parameter_error("build_grid: need at least two nodes per side");
  QuadratureGrid g;
  g.L = L;
  g.nodes_per_side = nodes_per_side;
  const QuadRule left = gauss_legendre(nodes_per_side, -L, 0.0);
  const QuadRule right = gauss_legendre(nodes_per_side, 0.0, L);
  g.nodes = left.x;
  g.nodes.insert(g.nodes.end(), right.x.begin(), right.x.end());
  g.weights = left.w;
  g.weights.insert(g.weights.end(), right.w.begin(), right.w.end());
  return g;
}

QuadratureGrid build_interval_grid(double a, double L, int nodes) {
  if (!(L > 0.0)) throw parameter_error("build_interval_grid: L must be positive");
  if (nodes < 2) throw parameter_error("build_interval_grid: need at least two nodes");
  QuadratureGrid g;
  g.L = L;
  g.nodes_per_side = nodes;
  const QuadRule rule = gauss_legendre(nodes, a, a + L);
  g.nodes = rule.x;
  g.weights = rule.w;
  return g;
}

namespace {

/// Determinant of an LU-factored matrix as mantissa * 2^exponent.
std::complex<double> scaled_det(const Eigen::PartialPivLU<Eigen::MatrixXcd>& lu,
                                const Eigen::Index n) {
  std::complex<double> mant{1.0, 0.0};
  long exponent = 0;
  const auto& u = lu.matrixLU();
  for (Eigen::Index i = 0; i < n; ++i) {
    mant *= u(i, i);
    const double mag = std::abs(mant);
    if (mag == 0.0) return {0.0, 0.0};
    int e = 0;
    std::frexp(mag, &e);
    if (e > 60 || e < -60) {
      mant = std::complex<double>(std::ldexp(mant.real(), -e), std::ldexp(mant.imag(), -e));
      exponent += e;
    }
  }
  mant *= static_cast<double>(lu.permutationP().determinant());
  const double total = exponent + std::log2(std::max(std::abs(mant), 1e-300));
  if (total > 1000.0)
    throw accuracy_error("det_one_plus: determinant overflows double range");
  return {std::ldexp(mant.real(), static_cast<int>(exponent)),
          std::ldexp(mant.imag(), static_cast<int>(exponent))};
}

}  // namespace

std::complex<double> det_one_plus(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw parameter_error("det_one_plus: matrix must be square");
  Eigen::MatrixXcd a = m;
  a.diagonal().array() += 1.0;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  return scaled_det(lu, a.rows());
}

double det_one_plus(const Eigen::MatrixXd& m) {
  return det_one_plus(Eigen::MatrixXcd(m.cast<std::complex<double>>())).real();
}

double tracy_widom_f2(double xi, double L, int nodes) {
  const QuadratureGrid g = build_interval_grid(xi, L, nodes);
  Eigen::MatrixXd k = airy_kernel_matrix(g.nodes, g.nodes);
  for (Eigen::Index p = 0; p < k.rows(); ++p) {
    const double swp = std::sqrt(g.weights[static_cast<std::size_t>(p)]);
    for (Eigen::Index q = 0; q < k.cols(); ++q)
      k(p, q) *= -swp * std::sqrt(g.weights[static_cast<std::size_t>(q)]);
  }
  return det_one_plus(k);
}

}  // namespace lpptt
