#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "lpptt/scaling.hpp"

namespace lpptt {

/// Everything a kernel evaluation needs: scaled parameters (with the
/// conjugation rate delta set), contour offsets for the diagnostic contour
/// representations, and the cutoff/node budget of the coupling integrals.
/// The offsets must satisfy 0 < D1 < alpha*D2 < D3 and 0 < d1 < alpha*d2 < d3.
struct KernelContext {
  TwoTimeParams params;
  double D1 = 0, D2 = 0, D3 = 0;
  double d1 = 0, d2 = 0, d3 = 0;
  double s_cutoff = 40.0;  ///< upper limit of the s / lambda couplings
  int s_nodes = 320;       ///< total panel nodes across [0, s_cutoff]

  /// Defaults: D1 = d1 = 0.5, D2 = d2 = 0.75/alpha, D3 = d3 = 2 max(1, alpha).
  /// If params.delta is zero it is filled by choose_delta(params).
  static KernelContext make(const TwoTimeParams& params);

  void validate() const;

  double a_first() const { return params.xi1 + params.eta1 * params.eta1; }
  double b_increment() const { return params.delta_xi + params.delta_eta * params.delta_eta; }
};

/// Components of the whole-line kernel pair:
///   S = S1 + 1(x>0) S2 - S3 1(y<0),   T = -T1 - 1(x>0) S2 + S3 1(y<0),
/// where (with K = Airy kernel, A1 = xi1 + eta1^2, B1 = dxi + deta^2)
///   S1(x,y) = -alpha e^{(eta1-d)x + (d-a*deta)y} int_0^inf e^{(a*deta-eta1)s}
///               K(A1-s, A1-x) K(B1+a s, B1+a y) ds
///   T1(x,y) = the same integral over (-inf, 0] with a plus sign
///   S2(x,y) = alpha e^{(d-a*deta)(y-x)} K(B1+a x, B1+a y)
///   S3(x,y) = e^{(d-eta1)(y-x)} K(A1-x, A1-y).
enum class STPart { S1, T1, S2, S3 };

struct STMatrices {
  Eigen::MatrixXd S1, T1, S2, S3;  ///< components on the point set
  Eigen::MatrixXd S, T;            ///< indicator-assembled pair
};

/// Assemble all components on xs (rows) x ys (columns).  One s-lattice and
/// one Airy memo per component; cost is a few matrix products.
STMatrices s_t_assemble(const KernelContext& ctx, const std::vector<double>& xs,
                        const std::vector<double>& ys);

/// Pointwise component value (same quadrature path as the batch assembly).
double kernel_component(STPart part, double x, double y, const KernelContext& ctx);

/// R_u(x, y) = S(x, y) + u^{-1} T(x, y).
std::complex<double> r_u(double x, double y, std::complex<double> u,
                         const KernelContext& ctx);

/// One 2x2 block of a matrix kernel evaluated at a point pair.
struct BlockKernelValue {
  std::complex<double> entry[2][2];
};

/// The two-time matrix kernel on L^2(R_-) + L^2(R_+):
/// row block 1 carries R_u, row block 2 carries u R_u.  Entry (i, j) is
/// meaningful when x lies in the half-line of row block i (x < 0 for i = 0,
/// x > 0 for i = 1); a mismatch throws parameter_error.
BlockKernelValue k_block(double x, double y, std::complex<double> u,
                         const KernelContext& ctx);

/// Components of the positive-axis form.  M1..M3 are deformed-Airy-kernel
/// style one-integral operators, k1..k7 the coupling chains; all live on
/// (R_+)^2 and are combined with u-dependent scalar coefficients in q_block.
enum class QPart { M1, M2, M3, K1, K2, K3, K4, K5, K6, K7 };

struct QMatrices {
  Eigen::MatrixXd M1, M2, M3, K1, K2, K3, K4, K5, K6, K7;
};

QMatrices q_assemble(const KernelContext& ctx, const std::vector<double>& vs,
                     const std::vector<double>& ws);

double q_component(QPart part, double v1, double v2, const KernelContext& ctx);

/// Scalar coefficients of the positive-axis blocks:
///   Q11 = (2-u-1/u) k1 + (u-1)(k2 + k5 + M3) - u M2
///   Q12 = (u+1/u-2) k3 + (1-u) k4
///   Q21 = (1-1/u) k6 - k7
///   Q22 = (1/u-1) M1
BlockKernelValue q_block(double v1, double v2, std::complex<double> u,
                         const KernelContext& ctx);

/// Q blocks combined from preassembled component matrices (u-dependent
/// scalar combinations only; no quadrature).
void q_combine(const QMatrices& parts, std::complex<double> u, Eigen::MatrixXcd& q11,
               Eigen::MatrixXcd& q12, Eigen::MatrixXcd& q21, Eigen::MatrixXcd& q22);

}  // namespace lpptt
