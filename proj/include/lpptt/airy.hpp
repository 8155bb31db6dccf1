#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace lpptt {

/// Airy function evaluator, real arguments only.  Four branches:
///   x < -neg_series_cutoff   oscillatory asymptotic expansion
///   x in [-neg., series_cutoff]   Maclaurin series in 80-bit arithmetic
///   x in (series_cutoff, asymptotic_cutoff)   steepest-descent quadrature
///   x >= asymptotic_cutoff   exponential asymptotic expansion
/// The seams are placed where adjacent branches agree to ~1e-13: the series
/// loses e^{2*zeta(x)} to cancellation on the positive axis and e^{zeta(|x|)}
/// on the negative axis, while the asymptotic floors are ~e^{-2*zeta}.
struct AiryEvaluator {
  double series_cutoff = 5.0;       ///< series -> descent quadrature seam
  double asymptotic_cutoff = 8.0;   ///< descent quadrature -> asymptotics seam
  double neg_series_cutoff = 8.0;   ///< |x| of the series -> asymptotics seam
  int asymptotic_terms = 25;        ///< hard cap; truncation is at the minimal term
  int contour_nodes = 96;           ///< Gauss-Legendre nodes of the descent branch

  double ai(double x) const;
};

/// Ai(x) through a shared default evaluator.
double airy_ai(double x);

/// The Airy kernel  K(x, y) = int_0^infty Ai(x+s) Ai(y+s) ds  by panelled
/// Gauss-Legendre quadrature (oscillation-aware truncation).
double airy_kernel(double x, double y);

/// Batch form: entry (i, j) = K(xs[i], ys[j]).  All entries share one
/// s-lattice, so the cost is |lattice| * (|xs|+|ys|) Airy evaluations plus
/// one matrix product; this is the memoized path the kernel assembly and the
/// Fredholm discretizations use.
Eigen::MatrixXd airy_kernel_matrix(const std::vector<double>& xs,
                                   const std::vector<double>& ys);

/// Exponentially deformed Airy function
///   Ai_{xi, eta}(x, y) = Ai(xi + eta^2 + x + y) e^{(xi + x + y) eta + 2 eta^3 / 3},
/// the building block of the positive-axis kernel form.
double deformed_airy(double xi, double eta, double x, double y);

/// Batch form of deformed_airy: entry (i, j) = Ai_{xi,eta}(xs[i], ys[j]).
Eigen::MatrixXd deformed_airy_matrix(double xi, double eta,
                                     const std::vector<double>& xs,
                                     const std::vector<double>& ys);

/// The cubic-exponent weight  G_{xi,eta}(z) = exp(z^3/3 + eta z^2 - xi z).
std::complex<double> g_exponential(std::complex<double> z, double xi, double eta);

/// A vertical integration contour Re z = anchor, |Im z| <= half_length,
/// traversed upward with `nodes` equispaced (trapezoid) points.
struct VerticalLine {
  double anchor = 0.0;
  double half_length = 0.0;
  int nodes = 0;
};

/// (2 pi i)^{-1} integral over the line of f(z) dz, trapezoid rule.
template <typename F>
std::complex<double> integrate_vertical(const VerticalLine& line, F&& f) {
  const double h = 2.0 * line.half_length / (line.nodes - 1);
  std::complex<double> acc{0.0, 0.0};
  for (int k = 0; k < line.nodes; ++k) {
    const double t = -line.half_length + h * k;
    std::complex<double> v = f(std::complex<double>(line.anchor, t));
    if (k == 0 || k == line.nodes - 1) v *= 0.5;
    acc += v;
  }
  return acc * (h / (2.0 * M_PI));  // dz = i dt and 1/(2 pi i) cancel the i
}

/// Residuals of the two contour identities tying G to Ai:
///   (2 pi i)^{-1} int_{Re z = D} G_{xi,eta}(z) dz = Ai(xi+eta^2) e^{xi eta + 2 eta^3/3}
///   (2 pi i)^{-1} int_{Re z = -d} dz / G_{xi,eta}(z) = Ai(xi+eta^2) e^{-xi eta - 2 eta^3/3}
/// Valid for D + eta > 0 and d - eta > 0 (else the integrals diverge and a
/// parameter_error is thrown).
struct AiryContourCheck {
  std::complex<double> descent_integral;
  std::complex<double> ascent_integral;
  double descent_expected;
  double ascent_expected;
  double descent_residual;
  double ascent_residual;
};

AiryContourCheck verify_airy_contour(double xi, double eta, double D, double d,
                                     int nodes = 800);

}  // namespace lpptt
