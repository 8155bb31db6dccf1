#include "lpptt/kernels.hpp"

#include <cmath>

#include "lpptt/airy.hpp"
#include "lpptt/errors.hpp"
#include "lpptt/quadrature.hpp"

namespace lpptt {

KernelContext KernelContext::make(const TwoTimeParams& params) {
  KernelContext ctx;
  ctx.params = params;
  if (ctx.params.delta == 0.0) ctx.params.delta = choose_delta(params);
  const double a = params.alpha;
  ctx.D1 = ctx.d1 = 0.5;
  ctx.D2 = ctx.d2 = 0.75 / a;
  ctx.D3 = ctx.d3 = 2.0 * std::max(1.0, a);
  ctx.validate();
  return ctx;
}

void KernelContext::validate() const {
  const double a = params.alpha;
  if (!(a > 0.0) || !(params.alpha_prime > 0.0))
    throw parameter_error("KernelContext: alpha and alpha' must be positive");
  const double a3 = a * a * a, ap3 = std::pow(params.alpha_prime, 3);
  if (std::abs(ap3 - a3 - 1.0) > 1e-9 * (1.0 + a3))
    throw parameter_error("KernelContext: alpha'^3 = alpha^3 + 1 violated");
  if (!(params.delta > std::max(params.eta1, a * params.delta_eta)))
    throw parameter_error("KernelContext: delta must exceed max(eta1, alpha*delta_eta)");
  if (!(0.0 < D1 && D1 < a * D2 && a * D2 < D3))
    throw parameter_error("KernelContext: descent offsets must satisfy 0 < D1 < alpha D2 < D3");
  if (!(0.0 < d1 && d1 < a * d2 && a * d2 < d3))
    throw parameter_error("KernelContext: ascent offsets must satisfy 0 < d1 < alpha d2 < d3");
  if (!(s_cutoff > 0.0) || s_nodes < 16)
    throw parameter_error("KernelContext: coupling quadrature too small");
}

namespace {

/// Panelled rule for the coupling integrals on [0, cutoff]: fixed-length
/// panels keep the Airy oscillation resolved along the whole range.
QuadRule coupling_rule(double cutoff, int total_nodes) {
  const int panels = std::max(1, static_cast<int>(std::ceil(cutoff / 2.0)));
  const int per_panel = std::max(6, (total_nodes + panels - 1) / panels);
  return panel_rule(0.0, cutoff, 2.0, per_panel);
}

std::vector<double> affine(const std::vector<double>& xs, double scale, double shift) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = shift + scale * xs[i];
  return out;
}

Eigen::VectorXd exp_vector(const std::vector<double>& xs, double rate) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = std::exp(rate * xs[i]);
  return v;
}

}  // namespace

STMatrices s_t_assemble(const KernelContext& ctx, const std::vector<double>& xs,
                        const std::vector<double>& ys) {
  ctx.validate();
  if (xs.empty() || ys.empty()) throw parameter_error("s_t_assemble: empty point set");
  const TwoTimeParams& p = ctx.params;
  const double a = p.alpha, delta = p.delta;
  const double A1 = ctx.a_first(), B1 = ctx.b_increment();
  const double cs = a * p.delta_eta - p.eta1;

  const QuadRule s = coupling_rule(ctx.s_cutoff, ctx.s_nodes);
  const std::vector<double> s_neg_shift = affine(s.x, -1.0, A1);  // A1 - s
  const std::vector<double> s_pos_shift = affine(s.x, 1.0, A1);   // A1 + s
  const std::vector<double> s_up = affine(s.x, a, B1);            // B1 + a s
  const std::vector<double> s_down = affine(s.x, -a, B1);         // B1 - a s
  const std::vector<double> x_first = affine(xs, -1.0, A1);       // A1 - x
  const std::vector<double> y_first = affine(ys, -1.0, A1);
  const std::vector<double> x_inc = affine(xs, a, B1);            // B1 + a x
  const std::vector<double> y_inc = affine(ys, a, B1);

  // s-integral factors: rows = s-lattice, columns = evaluation points.
  const Eigen::MatrixXd P1 = airy_kernel_matrix(s_neg_shift, x_first);
  const Eigen::MatrixXd P2 = airy_kernel_matrix(s_up, y_inc);
  const Eigen::MatrixXd P1t = airy_kernel_matrix(s_pos_shift, x_first);
  const Eigen::MatrixXd P2t = airy_kernel_matrix(s_down, y_inc);

  Eigen::VectorXd w_fwd(static_cast<Eigen::Index>(s.size()));
  Eigen::VectorXd w_bwd(static_cast<Eigen::Index>(s.size()));
  for (std::size_t k = 0; k < s.size(); ++k) {
    w_fwd(static_cast<Eigen::Index>(k)) = s.w[k] * std::exp(cs * s.x[k]);
    w_bwd(static_cast<Eigen::Index>(k)) = s.w[k] * std::exp(-cs * s.x[k]);
  }

  const Eigen::VectorXd row_gauge = exp_vector(xs, p.eta1 - delta);       // e^{(eta1-d)x}
  const Eigen::VectorXd col_gauge = exp_vector(ys, delta - a * p.delta_eta);
  const Eigen::VectorXd row_inc = exp_vector(xs, -(delta - a * p.delta_eta));
  const Eigen::VectorXd row_one = exp_vector(xs, -(delta - p.eta1));
  const Eigen::VectorXd col_one = exp_vector(ys, delta - p.eta1);

  STMatrices out;
  out.S1 = -a * row_gauge.asDiagonal() * (P1.transpose() * w_fwd.asDiagonal() * P2) *
           col_gauge.asDiagonal();
  out.T1 = a * row_gauge.asDiagonal() * (P1t.transpose() * w_bwd.asDiagonal() * P2t) *
           col_gauge.asDiagonal();
  out.S2 = a * row_inc.asDiagonal() * airy_kernel_matrix(x_inc, y_inc) * col_gauge.asDiagonal();
  out.S3 = row_one.asDiagonal() * airy_kernel_matrix(x_first, y_first) * col_one.asDiagonal();

  // S = S1 + 1(x>0) S2 - S3 1(y<0);  T = -T1 - 1(x>0) S2 + S3 1(y<0).
  out.S = out.S1;
  out.T = -out.T1;
  for (Eigen::Index i = 0; i < out.S.rows(); ++i) {
    if (xs[static_cast<std::size_t>(i)] > 0.0) {
      out.S.row(i) += out.S2.row(i);
      out.T.row(i) -= out.S2.row(i);
    }
  }
  for (Eigen::Index j = 0; j < out.S.cols(); ++j) {
    if (ys[static_cast<std::size_t>(j)] < 0.0) {
      out.S.col(j) -= out.S3.col(j);
      out.T.col(j) += out.S3.col(j);
    }
  }
  return out;
}

double kernel_component(STPart part, double x, double y, const KernelContext& ctx) {
  const STMatrices m = s_t_assemble(ctx, {x}, {y});
  switch (part) {
    case STPart::S1: return m.S1(0, 0);
    case STPart::T1: return m.T1(0, 0);
    case STPart::S2: return m.S2(0, 0);
    case STPart::S3: return m.S3(0, 0);
  }
  throw parameter_error("kernel_component: unknown part");
}

std::complex<double> r_u(double x, double y, std::complex<double> u,
                         const KernelContext& ctx) {
  if (u == std::complex<double>(0.0, 0.0))
    throw parameter_error("r_u: u must be nonzero");
  const STMatrices m = s_t_assemble(ctx, {x}, {y});
  return m.S(0, 0) + m.T(0, 0) / u;
}

BlockKernelValue k_block(double x, double y, std::complex<double> u,
                         const KernelContext& ctx) {
  if (x == 0.0 || y == 0.0)
    throw parameter_error("k_block: block membership undefined at 0");
  const std::complex<double> r = r_u(x, y, u, ctx);
  BlockKernelValue b;
  b.entry[0][0] = b.entry[0][1] = r;
  b.entry[1][0] = b.entry[1][1] = u * r;
  return b;
}

namespace {

/// Deformed-Airy factor matrix: entry (i, j) = Ai_{xi,eta}(us[i], vs[j]).
Eigen::MatrixXd factor(double xi, double eta, const std::vector<double>& us,
                       const std::vector<double>& vs) {
  return deformed_airy_matrix(xi, eta, us, vs);
}

}  // namespace

QMatrices q_assemble(const KernelContext& ctx, const std::vector<double>& vs,
                     const std::vector<double>& ws) {
  ctx.validate();
  if (vs.empty() || ws.empty()) throw parameter_error("q_assemble: empty point set");
  for (double v : vs)
    if (v < 0.0) throw parameter_error("q_assemble: the positive-axis form needs v >= 0");
  for (double w : ws)
    if (w < 0.0) throw parameter_error("q_assemble: the positive-axis form needs v >= 0");

  const TwoTimeParams& p = ctx.params;
  const double a = p.alpha, ap = p.alpha_prime, delta = p.delta;
  const QuadRule lam = coupling_rule(ctx.s_cutoff, ctx.s_nodes);

  Eigen::VectorXd W(static_cast<Eigen::Index>(lam.size()));
  for (std::size_t k = 0; k < lam.size(); ++k) W(static_cast<Eigen::Index>(k)) = lam.w[k];

  const std::vector<double>& l = lam.x;
  const std::vector<double> l_neg_a = affine(l, -a, 0.0);   // -alpha lambda
  const std::vector<double> l_a = affine(l, a, 0.0);        // alpha lambda
  const std::vector<double> l_ap = affine(l, ap, 0.0);      // alpha' lambda
  const std::vector<double> vs_ap = affine(vs, 1.0 / ap, 0.0);
  const std::vector<double> ws_ap = affine(ws, 1.0 / ap, 0.0);
  const std::vector<double> ws_a_ap = affine(ws, a / ap, 0.0);

  const Eigen::VectorXd ev_pos = exp_vector(vs, delta);   // e^{delta v}
  const Eigen::VectorXd ew_neg = exp_vector(ws, -delta);  // e^{-delta w}

  // Shared factor matrices (the chain middles are the expensive ones).
  const Eigen::MatrixXd inc_left = factor(p.delta_xi, -p.delta_eta, vs, l_neg_a);
  const Eigen::MatrixXd inc_right = factor(p.delta_xi, p.delta_eta, l_neg_a, ws);
  const Eigen::MatrixXd one_mm = factor(p.xi1, -p.eta1, l, l);
  const Eigen::MatrixXd one_pp = factor(p.xi1, p.eta1, l, l);
  const Eigen::MatrixXd one_mm_scaled = factor(p.xi1, -p.eta1, l, l_ap);
  const Eigen::MatrixXd two_right = factor(p.xi2, p.eta2, l_a, ws_ap);
  const Eigen::MatrixXd one_v_l = factor(p.xi1, p.eta1, vs, l);

  QMatrices q;
  q.M1 = ev_pos.asDiagonal() * (one_v_l * W.asDiagonal() * factor(p.xi1, -p.eta1, l, ws)) *
         ew_neg.asDiagonal();
  q.M2 = (1.0 / ap) * factor(p.xi2, -p.eta2, vs_ap, l) * W.asDiagonal() *
         factor(p.xi2, p.eta2, l, ws_ap);
  q.M3 = factor(p.delta_xi, -p.delta_eta, vs, l) * W.asDiagonal() *
         factor(p.delta_xi, p.delta_eta, l, ws);
  q.K1 = a * inc_left * W.asDiagonal() * one_mm * W.asDiagonal() * one_pp * W.asDiagonal() *
         inc_right;
  q.K2 = a * factor(p.xi2, -p.eta2, vs_ap, l_a) * W.asDiagonal() *
         factor(p.xi1, p.eta1, l_ap, l) * W.asDiagonal() * inc_right;
  q.K3 = a * (inc_left * W.asDiagonal() * factor(p.xi1, -p.eta1, l, ws)) * ew_neg.asDiagonal();
  q.K4 = (a / ap) * factor(p.xi2, -p.eta2, vs_ap, ws_a_ap) * ew_neg.asDiagonal();
  q.K5 = a * inc_left * W.asDiagonal() * one_mm_scaled * W.asDiagonal() * two_right;
  q.K6 = ev_pos.asDiagonal() * (one_v_l * W.asDiagonal() * one_mm * W.asDiagonal() * one_pp *
                                W.asDiagonal() * inc_right);
  q.K7 = ev_pos.asDiagonal() *
         (one_v_l * W.asDiagonal() * one_mm_scaled * W.asDiagonal() * two_right);
  return q;
}

double q_component(QPart part, double v1, double v2, const KernelContext& ctx) {
  const QMatrices q = q_assemble(ctx, {v1}, {v2});
  switch (part) {
    case QPart::M1: return q.M1(0, 0);
    case QPart::M2: return q.M2(0, 0);
    case QPart::M3: return q.M3(0, 0);
    case QPart::K1: return q.K1(0, 0);
    case QPart::K2: return q.K2(0, 0);
    case QPart::K3: return q.K3(0, 0);
    case QPart::K4: return q.K4(0, 0);
    case QPart::K5: return q.K5(0, 0);
    case QPart::K6: return q.K6(0, 0);
    case QPart::K7: return q.K7(0, 0);
  }
  throw parameter_error("q_component: unknown part");
}

void q_combine(const QMatrices& m, std::complex<double> u, Eigen::MatrixXcd& q11,
               Eigen::MatrixXcd& q12, Eigen::MatrixXcd& q21, Eigen::MatrixXcd& q22) {
  if (u == std::complex<double>(0.0, 0.0))
    throw parameter_error("q_combine: u must be nonzero");
  const std::complex<double> inv = 1.0 / u;
  const std::complex<double> one{1.0, 0.0};
  q11 = (2.0 - u - inv) * m.K1 + (u - one) * (m.K2 + m.K5 + m.M3) - u * m.M2;
  q12 = (u + inv - 2.0) * m.K3 + (one - u) * m.K4;
  q21 = (one - inv) * m.K6 - m.K7;
  q22 = (inv - one) * m.M1;
}

BlockKernelValue q_block(double v1, double v2, std::complex<double> u,
                         const KernelContext& ctx) {
  const QMatrices parts = q_assemble(ctx, {v1}, {v2});
  Eigen::MatrixXcd q11, q12, q21, q22;
  q_combine(parts, u, q11, q12, q21, q22);
  BlockKernelValue b;
  b.entry[0][0] = q11(0, 0);
  b.entry[0][1] = q12(0, 0);
  b.entry[1][0] = q21(0, 0);
  b.entry[1][1] = q22(0, 0);
  return b;
}

}  // namespace lpptt
