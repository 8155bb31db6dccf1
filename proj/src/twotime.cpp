#include "lpptt/twotime.hpp"

#include <cmath>

#include "lpptt/errors.hpp"
#include "lpptt/parallel.hpp"

namespace lpptt {

namespace {

void check_contour(const ContourSpec& contour) {
  if (!(contour.radius > 1.0))
    throw parameter_error("contour: radius must exceed 1 to enclose the pole at u = 1");
  if (contour.u_nodes < 4 || contour.u_nodes % 2 != 0)
    throw parameter_error("contour: u_nodes must be even and at least 4");
}

/// Average the integrand det(u) * u/(u-1) over the sampled circle.  The
/// determinant trace is hermitian in the angle (real kernels), so only the
/// upper half circle is computed.
TwoTimeResult average_contour(const std::vector<std::complex<double>>& dets,
                              const ContourSpec& contour) {
  const int n = contour.u_nodes;
  std::complex<double> acc{0.0, 0.0};
  TwoTimeResult out;
  out.u_points.resize(static_cast<std::size_t>(n));
  out.determinants.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double theta = 2.0 * M_PI * j / n;
    const std::complex<double> u = contour.radius * std::exp(std::complex<double>(0.0, theta));
    const std::complex<double> det =
        j <= n / 2 ? dets[static_cast<std::size_t>(j)]
                   : std::conj(dets[static_cast<std::size_t>(n - j)]);
    out.u_points[static_cast<std::size_t>(j)] = u;
    out.determinants[static_cast<std::size_t>(j)] = det;
    acc += det * u / (u - 1.0);
  }
  acc /= static_cast<double>(n);
  out.value = acc.real();
  out.imag_residue = std::abs(acc.imag());
  out.radius = contour.radius;
  out.u_nodes = n;
  return out;
}

}  // namespace

TwoTimeResult contour_from_matrices(const Eigen::MatrixXd& S, const Eigen::MatrixXd& T,
                                    const QuadratureGrid& grid, const ContourSpec& contour,
                                    bool invert_u, int threads) {
  check_contour(contour);
  const Eigen::Index n = static_cast<Eigen::Index>(grid.size());
  if (S.rows() != n || S.cols() != n || T.rows() != n || T.cols() != n)
    throw parameter_error("contour_from_matrices: matrix shape does not match the grid");

  // Symmetrized weights and the positive-half row mask applied once.
  Eigen::VectorXd sw(n);
  for (Eigen::Index p = 0; p < n; ++p)
    sw(p) = std::sqrt(grid.weights[static_cast<std::size_t>(p)]);
  const Eigen::MatrixXd Sw = sw.asDiagonal() * S * sw.asDiagonal();
  const Eigen::MatrixXd Tw = sw.asDiagonal() * T * sw.asDiagonal();

  const int half = contour.u_nodes / 2;
  std::vector<std::complex<double>> dets(static_cast<std::size_t>(half) + 1);
  parallel_for(0, half + 1, threads, [&](std::int64_t j) {
    const double theta = 2.0 * M_PI * static_cast<double>(j) / contour.u_nodes;
    std::complex<double> u = contour.radius * std::exp(std::complex<double>(0.0, theta));
    if (invert_u) u = 1.0 / u;
    Eigen::MatrixXcd m = Sw.cast<std::complex<double>>() + (1.0 / u) * Tw;
    for (Eigen::Index p = 0; p < n; ++p)
      if (grid.nodes[static_cast<std::size_t>(p)] > 0.0) m.row(p) *= u;
    dets[static_cast<std::size_t>(j)] = det_one_plus(m);
  });

  TwoTimeResult out = average_contour(dets, contour);
  out.grid_L = grid.L;
  out.grid_nodes_per_side = grid.nodes_per_side;
  return out;
}

TwoTimeResult eval_k_form(const KernelContext& ctx, const ContourSpec& contour,
                          const QuadratureGrid& grid, bool invert_u, int threads) {
  const STMatrices m = s_t_assemble(ctx, grid.nodes, grid.nodes);
  TwoTimeResult out = contour_from_matrices(m.S, m.T, grid, contour, invert_u, threads);
  out.delta = ctx.params.delta;
  return out;
}

TwoTimeResult eval_k_form(const TwoTimeParams& params, const ContourSpec& contour,
                          double L, int nodes_per_side, int threads) {
  const KernelContext ctx = KernelContext::make(params);
  return eval_k_form(ctx, contour, build_grid(L, nodes_per_side), false, threads);
}

TwoTimeResult eval_q_form(const KernelContext& ctx, const ContourSpec& contour,
                          const QuadratureGrid& grid, int threads) {
  check_contour(contour);
  for (double x : grid.nodes)
    if (x < 0.0)
      throw parameter_error("eval_q_form: needs a half-line grid on [0, L]");
  const QMatrices parts = q_assemble(ctx, grid.nodes, grid.nodes);

  const Eigen::Index n = static_cast<Eigen::Index>(grid.size());
  Eigen::VectorXd sw(n);
  for (Eigen::Index p = 0; p < n; ++p)
    sw(p) = std::sqrt(grid.weights[static_cast<std::size_t>(p)]);

  const int half = contour.u_nodes / 2;
  std::vector<std::complex<double>> dets(static_cast<std::size_t>(half) + 1);
  parallel_for(0, half + 1, threads, [&](std::int64_t j) {
    const double theta = 2.0 * M_PI * static_cast<double>(j) / contour.u_nodes;
    const std::complex<double> u =
        contour.radius * std::exp(std::complex<double>(0.0, theta));
    Eigen::MatrixXcd q11, q12, q21, q22;
    q_combine(parts, u, q11, q12, q21, q22);
    Eigen::MatrixXcd big(2 * n, 2 * n);
    big.topLeftCorner(n, n) = q11;
    big.topRightCorner(n, n) = q12;
    big.bottomLeftCorner(n, n) = q21;
    big.bottomRightCorner(n, n) = q22;
    for (Eigen::Index p = 0; p < 2 * n; ++p) {
      const double w = sw(p % n);
      big.row(p) *= w;
      big.col(p) *= w;
    }
    dets[static_cast<std::size_t>(j)] = det_one_plus(big);
  });

  TwoTimeResult out = average_contour(dets, contour);
  out.delta = ctx.params.delta;
  out.grid_L = grid.L;
  out.grid_nodes_per_side = grid.nodes_per_side;
  return out;
}

TwoTimeResult eval_q_form(const TwoTimeParams& params, const ContourSpec& contour,
                          double L, int nodes, int threads) {
  const KernelContext ctx = KernelContext::make(params);
  return eval_q_form(ctx, contour, build_interval_grid(0.0, L, nodes), threads);
}

TwoTimeResult eval_dual_form(const TwoTimeParams& params, const ContourSpec& contour,
                             double L, int nodes_per_side, int threads) {
  const TwoTimeParams dual = alpha_inverse_transform(params);
  const KernelContext ctx = KernelContext::make(dual);
  return eval_k_form(ctx, contour, build_grid(L, nodes_per_side), /*invert_u=*/true, threads);
}

MarginalCheck marginal_check(double xi1, double eta1, double xi2_large, double alpha,
                             const ContourSpec& contour, double L, int nodes_per_side,
                             int threads) {
  const TwoTimeParams p = params_from_scaled(xi1, eta1, xi2_large, 0.0, alpha);
  MarginalCheck out;
  out.two_time_value = eval_k_form(p, contour, L, nodes_per_side, threads).value;
  out.f2_value = tracy_widom_f2(xi1 + eta1 * eta1);
  out.gap = std::abs(out.two_time_value - out.f2_value);
  return out;
}

}  // namespace lpptt
