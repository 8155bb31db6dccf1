#pragma once

#include <complex>
#include <vector>

#include "lpptt/fredholm.hpp"
#include "lpptt/kernels.hpp"
#include "lpptt/scaling.hpp"

namespace lpptt {

/// Circle |u| = radius (radius > 1 so the pole of 1/(u-1) is enclosed),
/// sampled at u_nodes equispaced points; the trapezoid rule on a circle is
/// spectrally accurate for the Laurent-type integrand.
struct ContourSpec {
  double radius = 2.0;
  int u_nodes = 64;
};

struct TwoTimeResult {
  double value = 0.0;          ///< real part of the contour average
  double imag_residue = 0.0;   ///< |imaginary part|, should be ~0
  double delta = 0.0;          ///< conjugation rate actually used
  double grid_L = 0.0;
  int grid_nodes_per_side = 0;
  double radius = 0.0;
  int u_nodes = 0;
  std::vector<std::complex<double>> u_points;      ///< diagnostic trace
  std::vector<std::complex<double>> determinants;  ///< det(I + K(u)) per point
};

/// Contour integral (2 pi i)^{-1} oint det(I + K(u)) du / (u - 1) where the
/// Fredholm determinant is evaluated from preassembled S and T matrices on
/// `grid`:  det(I + u^{1(x>0)} (S + u^{-1} T)) with symmetrized weights.
/// With invert_u set, the determinant argument is K(1/u) instead (the
/// time-inversion duality evaluation); the contour measure is unchanged.
TwoTimeResult contour_from_matrices(const Eigen::MatrixXd& S, const Eigen::MatrixXd& T,
                                    const QuadratureGrid& grid, const ContourSpec& contour,
                                    bool invert_u = false, int threads = 0);

/// Joint distribution value by the whole-line (Airy-factored) kernel form.
TwoTimeResult eval_k_form(const KernelContext& ctx, const ContourSpec& contour,
                          const QuadratureGrid& grid, bool invert_u = false,
                          int threads = 0);
TwoTimeResult eval_k_form(const TwoTimeParams& params,
                          const ContourSpec& contour = ContourSpec{},
                          double L = 10.0, int nodes_per_side = 60, int threads = 0);

/// The same value by the positive-axis block form; `grid` must be a
/// half-line grid on [0, L] (build_interval_grid(0, L, n)).
TwoTimeResult eval_q_form(const KernelContext& ctx, const ContourSpec& contour,
                          const QuadratureGrid& grid, int threads = 0);
TwoTimeResult eval_q_form(const TwoTimeParams& params,
                          const ContourSpec& contour = ContourSpec{},
                          double L = 10.0, int nodes = 60, int threads = 0);

/// Duality evaluation: the value at `params` recomputed from the
/// alpha -> 1/alpha transformed parameters with u -> 1/u on the contour.
/// Agreement with eval_k_form(params) is a structural identity.
TwoTimeResult eval_dual_form(const TwoTimeParams& params,
                             const ContourSpec& contour = ContourSpec{},
                             double L = 10.0, int nodes_per_side = 60, int threads = 0);

/// Consistency of the one-time marginal: pushing the second threshold far
/// out must reproduce the one-point (Tracy-Widom) value at the first point.
struct MarginalCheck {
  double two_time_value = 0.0;
  double f2_value = 0.0;
  double gap = 0.0;  ///< |two_time_value - f2_value|
};

MarginalCheck marginal_check(double xi1, double eta1, double xi2_large, double alpha,
                             const ContourSpec& contour = ContourSpec{},
                             double L = 10.0, int nodes_per_side = 60, int threads = 0);

}  // namespace lpptt
