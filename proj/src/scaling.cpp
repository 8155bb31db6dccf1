#include "lpptt/scaling.hpp"

#include <cmath>

#include "lpptt/errors.hpp"

namespace lpptt {

ScalingConstants compute_constants(double q) {
  if (!(q > 0.0 && q < 1.0))
    throw parameter_error("compute_constants: q must lie strictly between 0 and 1");
  const double rq = std::sqrt(q);
  ScalingConstants c;
  c.q = q;
  c.c0 = std::cbrt((1.0 + rq) / q);
  c.c1 = std::pow(q, -1.0 / 6.0) * std::cbrt((1.0 + rq) * (1.0 + rq));
  c.c2 = 2.0 * rq / (1.0 - rq);
  c.c3 = std::pow(q, 1.0 / 6.0) * std::cbrt(1.0 + rq) / (1.0 - rq);
  c.c4 = std::cbrt(q) * (1.0 - rq) / std::cbrt(1.0 + rq);
  return c;
}

TwoTimeParams derived_params(double t1, double t2, double eta1, double eta2,
                             double xi1, double xi2) {
  if (!(t1 > 0.0 && t2 > t1))
    throw parameter_error("derived_params: need 0 < t1 < t2");
  const double dt = t2 - t1;
  TwoTimeParams p;
  p.t1 = t1;
  p.t2 = t2;
  p.eta1 = eta1;
  p.eta2 = eta2;
  p.xi1 = xi1;
  p.xi2 = xi2;
  p.alpha = std::cbrt(t1 / dt);
  p.alpha_prime = std::cbrt(t2 / dt);
  p.delta_eta = eta2 * std::pow(t2 / dt, 2.0 / 3.0) - eta1 * std::pow(t1 / dt, 2.0 / 3.0);
  p.delta_xi = xi2 * p.alpha_prime - xi1 * p.alpha;
  return p;
}

TwoTimeParams params_from_scaled(double xi1, double eta1, double xi2, double eta2,
                                 double alpha) {
  if (!(alpha > 0.0)) throw parameter_error("params_from_scaled: alpha must be positive");
  const double t1 = alpha * alpha * alpha;
  return derived_params(t1, t1 + 1.0, eta1, eta2, xi1, xi2);
}

namespace {
constexpr double kDeltaCap = 6.0;
}

double choose_delta(const TwoTimeParams& params, double margin) {
  if (!(margin > 0.0)) throw parameter_error("choose_delta: margin must be positive");
  const double bound = std::max({params.eta1, params.alpha * params.delta_eta, 0.0});
  const double delta = std::min(bound + margin, kDeltaCap);
  if (!(delta > std::max(params.eta1, params.alpha * params.delta_eta)))
    throw parameter_error("choose_delta: conjugation bound exceeds the overflow cap");
  return delta;
}

TwoTimeParams alpha_inverse_transform(const TwoTimeParams& params, double margin) {
  if (!(params.alpha > 0.0))
    throw parameter_error("alpha_inverse_transform: params lack a valid alpha");
  const double beta = 1.0 / params.alpha;
  TwoTimeParams d;
  // Swap (xi1, eta1) with (delta_xi, delta_eta); beta' = alpha'/alpha keeps
  // the cubic relation beta'^3 = beta^3 + 1.
  d.alpha = beta;
  d.alpha_prime = params.alpha_prime / params.alpha;
  d.t1 = beta * beta * beta;
  d.t2 = d.t1 + 1.0;
  d.xi1 = params.delta_xi;
  d.eta1 = params.delta_eta;
  d.delta_xi = params.xi1;
  d.delta_eta = params.eta1;
  d.xi2 = (beta * d.xi1 + d.delta_xi) / d.alpha_prime;
  d.eta2 = (beta * beta * d.eta1 + d.delta_eta) / (d.alpha_prime * d.alpha_prime);
  d.delta = std::min(std::max({d.eta1, d.alpha * d.delta_eta, 0.0}) + margin, kDeltaCap);
  return d;
}

namespace {

std::int64_t round_half_even(double x) {
  // nearbyint honors the default FE_TONEAREST mode = ties to even.
  return static_cast<std::int64_t>(std::nearbyint(x));
}

}  // namespace

std::int64_t scaled_threshold(const ScalingConstants& consts, double T, double t,
                              double xi) {
  const double s = t * T;
  return round_half_even(consts.c2 * s + consts.c3 * xi * std::cbrt(s));
}

DiscreteTarget map_parameters(const ScalingConstants& consts, double T,
                              const TwoTimeParams& params) {
  if (!(T > 0.0)) throw parameter_error("map_parameters: T must be positive");
  const double s1 = params.t1 * T, s2 = params.t2 * T;
  const double b1 = consts.c1 * params.eta1 * std::pow(s1, 2.0 / 3.0);
  const double b2 = consts.c1 * params.eta2 * std::pow(s2, 2.0 / 3.0);
  DiscreteTarget t;
  t.n = round_half_even(s1 - b1);
  t.m = round_half_even(s1 + b1);
  t.N = round_half_even(s2 - b2);
  t.M = round_half_even(s2 + b2);
  t.a = scaled_threshold(consts, T, params.t1, params.xi1);
  t.A = scaled_threshold(consts, T, params.t2, params.xi2);
  if (t.m < 1 || t.n < 1 || t.M < 1 || t.N < 1 || t.a < 1 || t.A < 1)
    throw parameter_error("map_parameters: T too small, a mapped index is nonpositive");
  if (t.m >= t.M || t.n >= t.N)
    throw parameter_error("map_parameters: T too small, observation corners collide");
  return t;
}

}  // namespace lpptt
