#include "lpptt/airy.hpp"

#include <algorithm>
#include <cmath>

#include "lpptt/errors.hpp"
#include "lpptt/quadrature.hpp"

namespace lpptt {

namespace {

// Ai(0) = 3^{-2/3} / Gamma(2/3) and Ai'(0) = -3^{-1/3} / Gamma(1/3).
constexpr long double kAi0 = 0.35502805388781723926006318600418317640L;
constexpr long double kAiPrime0 = -0.25881940379280679840518356018920396348L;

/// Maclaurin series in 80-bit arithmetic.  Both constituent series are
/// entire; extended precision absorbs the e^{zeta}-scale cancellation that
/// caps the usable range (|x| <= 8 negative, x <= 5 positive for ~1e-13).
double series_ai(double x) {
  const long double z = x;
  const long double z3 = z * z * z;
  long double tf = kAi0;           // term of the even-type series
  long double tg = kAiPrime0 * z;  // term of the odd-type series
  long double acc = tf + tg;
  for (int n = 0; n < 200; ++n) {
    tf *= z3 / (3.0L * (n + 1) * (3 * n + 2));
    tg *= z3 / (3.0L * (n + 1) * (3 * n + 4));
    acc += tf + tg;
    if (std::abs(tf) + std::abs(tg) < 1e-24L * std::abs(acc) + 1e-300L) break;
  }
  return static_cast<double>(acc);
}

/// Coefficients u_k of the Poincare expansions, u_0 = 1.
double asym_coeff_step(double u_prev, int k) {
  return u_prev * ((6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0)) /
         ((2.0 * k - 1.0) * 216.0 * k);
}

/// x >= asymptotic_cutoff:  Ai(x) ~ e^{-zeta} / (2 sqrt(pi) x^{1/4}) *
/// sum_k (-1)^k u_k zeta^{-k}, truncated at the minimal term.
double asym_pos(double x, int max_terms) {
  const double zeta = (2.0 / 3.0) * std::pow(x, 1.5);
  double u = 1.0, term = 1.0, acc = 1.0, prev = 1.0;
  for (int k = 1; k <= max_terms; ++k) {
    u = asym_coeff_step(u, k);
    term = u / std::pow(zeta, k);
    if (term > prev) break;  // past the minimal term: stop before divergence
    acc += (k % 2 ? -term : term);
    prev = term;
    if (term < 1e-18) break;
  }
  return std::exp(-zeta) / (2.0 * std::sqrt(M_PI) * std::pow(x, 0.25)) * acc;
}

/// x <= -neg_series_cutoff:  oscillatory expansion with z = -x,
/// zeta = (2/3) z^{3/2}:
///   Ai(-z) ~ pi^{-1/2} z^{-1/4} [ cos(zeta - pi/4) * sum (-1)^k u_{2k} zeta^{-2k}
///                               + sin(zeta - pi/4) * sum (-1)^k u_{2k+1} zeta^{-2k-1} ]
double asym_neg(double x, int max_terms) {
  const double z = -x;
  const double zeta = (2.0 / 3.0) * std::pow(z, 1.5);
  double cos_sum = 1.0, sin_sum = 0.0;
  double u = 1.0, prev = 1.0;
  for (int k = 1; k <= 2 * max_terms; ++k) {
    u = asym_coeff_step(u, k);
    const double term = u / std::pow(zeta, k);
    if (term > prev) break;
    const double sign = (k / 2) % 2 ? -1.0 : 1.0;  // (-1)^{floor(k/2)}
    if (k % 2)
      sin_sum += sign * term;
    else
      cos_sum += sign * term;
    prev = term;
    if (term < 1e-18) break;
  }
  const double phase = zeta - 0.25 * M_PI;
  return (std::cos(phase) * cos_sum + std::sin(phase) * sin_sum) /
         (std::sqrt(M_PI) * std::pow(z, 0.25));
}

/// Mid-band branch: steepest descent through the saddle sqrt(x).  On the
/// vertical line z = sqrt(x) + i t the exponent is exactly
/// -zeta - sqrt(x) t^2 - i t^3/3, so
///   Ai(x) = (e^{-zeta} / pi) int_0^infty e^{-sqrt(x) t^2} cos(t^3/3) dt,
/// a Gaussian integral evaluated by fixed Gauss-Legendre quadrature.
double descent_ai(double x, int nodes) {
  static const QuadRule unit = gauss_legendre(96, 0.0, 1.0);
  const QuadRule* rule = &unit;
  QuadRule custom;
  if (nodes != 96) {
    custom = gauss_legendre(nodes, 0.0, 1.0);
    rule = &custom;
  }
  const double rx = std::sqrt(x);
  const double zeta = (2.0 / 3.0) * x * rx;
  const double T = std::sqrt(40.0 / rx);  // e^{-sqrt(x) T^2} = e^{-40}
  double acc = 0.0;
  for (std::size_t k = 0; k < rule->size(); ++k) {
    const double t = T * rule->x[k];
    acc += T * rule->w[k] * std::exp(-rx * t * t) * std::cos(t * t * t / 3.0);
  }
  return std::exp(-zeta) / M_PI * acc;
}

}  // namespace

double AiryEvaluator::ai(double x) const {
  if (x < -neg_series_cutoff) return asym_neg(x, asymptotic_terms);
  if (x <= series_cutoff) return series_ai(x);
  if (x < asymptotic_cutoff) return descent_ai(x, contour_nodes);
  return asym_pos(x, asymptotic_terms);
}

double airy_ai(double x) {
  static const AiryEvaluator eval;
  return eval.ai(x);
}

namespace {

/// s-lattice for int_0^infty Ai(x+s) Ai(y+s) ds over a set of argument
/// pairs: oscillatory until both arguments clear ~2, then superexponential
/// decay.  Fixed-length panels keep the Airy oscillation (wavelength
/// pi / sqrt(|arg|)) resolved everywhere.
QuadRule kernel_lattice(double min_x, double min_y) {
  const double osc = std::max(0.0, 2.0 - std::max(min_x, min_y));
  return panel_rule(0.0, osc + 14.0, 2.0, 20);
}

}  // namespace

Eigen::MatrixXd airy_kernel_matrix(const std::vector<double>& xs,
                                   const std::vector<double>& ys) {
  if (xs.empty() || ys.empty()) throw parameter_error("airy_kernel_matrix: empty argument list");
  const double min_x = *std::min_element(xs.begin(), xs.end());
  const double min_y = *std::min_element(ys.begin(), ys.end());
  const QuadRule s = kernel_lattice(min_x, min_y);
  const Eigen::Index nt = static_cast<Eigen::Index>(s.size());
  Eigen::MatrixXd U(nt, static_cast<Eigen::Index>(xs.size()));
  Eigen::MatrixXd V(nt, static_cast<Eigen::Index>(ys.size()));
  for (Eigen::Index m = 0; m < nt; ++m) {
    const double sw = std::sqrt(s.w[static_cast<std::size_t>(m)]);
    const double t = s.x[static_cast<std::size_t>(m)];
    for (std::size_t i = 0; i < xs.size(); ++i)
      U(m, static_cast<Eigen::Index>(i)) = sw * airy_ai(xs[i] + t);
    for (std::size_t j = 0; j < ys.size(); ++j)
      V(m, static_cast<Eigen::Index>(j)) = sw * airy_ai(ys[j] + t);
  }
  return U.transpose() * V;
}

double airy_kernel(double x, double y) {
  return airy_kernel_matrix({x}, {y})(0, 0);
}

double deformed_airy(double xi, double eta, double x, double y) {
  const double s = x + y;
  return airy_ai(xi + eta * eta + s) *
         std::exp((xi + s) * eta + 2.0 * eta * eta * eta / 3.0);
}

Eigen::MatrixXd deformed_airy_matrix(double xi, double eta,
                                     const std::vector<double>& xs,
                                     const std::vector<double>& ys) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(xs.size()),
                      static_cast<Eigen::Index>(ys.size()));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < ys.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          deformed_airy(xi, eta, xs[i], ys[j]);
  return out;
}

std::complex<double> g_exponential(std::complex<double> z, double xi, double eta) {
  return std::exp(z * z * z / 3.0 + eta * z * z - xi * z);
}

AiryContourCheck verify_airy_contour(double xi, double eta, double D, double d,
                                     int nodes) {
  if (!(D + eta > 0.0))
    throw parameter_error("verify_airy_contour: need D + eta > 0 for a convergent descent line");
  if (!(d - eta > 0.0))
    throw parameter_error("verify_airy_contour: need d - eta > 0 for a convergent ascent line");
  if (nodes < 16) throw parameter_error("verify_airy_contour: too few nodes");

  // |G(D+it)| = e^{...-(D+eta) t^2}; truncate where the envelope is ~e^-42.
  const VerticalLine desc{D, std::sqrt(42.0 / (D + eta)), nodes};
  const VerticalLine asc{-d, std::sqrt(42.0 / (d - eta)), nodes};

  AiryContourCheck out;
  out.descent_integral =
      integrate_vertical(desc, [&](std::complex<double> z) { return g_exponential(z, xi, eta); });
  out.ascent_integral = integrate_vertical(
      asc, [&](std::complex<double> z) { return 1.0 / g_exponential(z, xi, eta); });
  const double ai = airy_ai(xi + eta * eta);
  const double gauge = std::exp(xi * eta + 2.0 * eta * eta * eta / 3.0);
  out.descent_expected = ai * gauge;
  out.ascent_expected = ai / gauge;
  out.descent_residual = std::abs(out.descent_integral - out.descent_expected);
  out.ascent_residual = std::abs(out.ascent_integral - out.ascent_expected);
  return out;
}

}  // namespace lpptt
