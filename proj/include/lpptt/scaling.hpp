#pragma once

#include <cstdint>

namespace lpptt {

/// The q-dependent constants of the KPZ scaling for geometric waiting times.
/// With wc = 1 - sqrt(q) the critical point, they satisfy c0*c4 = wc,
/// c1 = sqrt(q)*c0^2 and c3/c0 = sqrt(q)/(1-sqrt(q)).
struct ScalingConstants {
  double q;
  double c0;  ///< fluctuation scale entering the descent variable
  double c1;  ///< transversal scale (eta direction)
  double c2;  ///< law-of-large-numbers speed
  double c3;  ///< height fluctuation scale (xi direction)
  double c4;  ///< critical-point step used by the steepest-descent check
};

ScalingConstants compute_constants(double q);

/// Scaled coordinates of a two-time evaluation.  The pair of observation
/// times (t1, t2) enters only through the ratio alpha = (t1/(t2-t1))^{1/3};
/// alpha_prime = (t2/(t2-t1))^{1/3} so alpha_prime^3 = alpha^3 + 1.
/// (delta_eta, delta_xi) are the increment coordinates mixing the two
/// observation points, and delta is the exponential-conjugation rate that
/// makes the kernels trace class; it must exceed max(eta1, alpha*delta_eta).
struct TwoTimeParams {
  double t1 = 0, t2 = 0;
  double eta1 = 0, eta2 = 0;
  double xi1 = 0, xi2 = 0;
  double alpha = 0, alpha_prime = 0;
  double delta_eta = 0, delta_xi = 0;
  double delta = 0;
};

/// Fill the derived fields (alpha, alpha_prime, delta_eta, delta_xi) from
/// the primitive ones.  delta is left at zero; see choose_delta.
/// Requires 0 < t1 < t2.
TwoTimeParams derived_params(double t1, double t2, double eta1, double eta2,
                             double xi1, double xi2);

/// Convenience constructor from scaled coordinates: picks t2 - t1 = 1 and
/// t1 = alpha^3, which realizes any alpha > 0.
TwoTimeParams params_from_scaled(double xi1, double eta1, double xi2, double eta2,
                                 double alpha);

/// Smallest safe conjugation rate: max(eta1, alpha*delta_eta, 0) + margin,
/// capped below 6 to keep e^{delta * cutoff} representable at the default
/// quadrature cutoffs.  Throws if the cap would violate the strict bound.
double choose_delta(const TwoTimeParams& params, double margin = 1.0);

/// Parameters of the time-inversion duality: the increment coordinates and
/// the first-point coordinates swap roles and alpha inverts.  The returned
/// delta is chosen with the same margin rule for the swapped kernel bound
/// max(delta_eta, eta1/alpha).
TwoTimeParams alpha_inverse_transform(const TwoTimeParams& params, double margin = 1.0);

/// Lattice endpoints and thresholds for a finite-size experiment.
struct DiscreteTarget {
  std::int64_t m, n;  ///< first observation corner
  std::int64_t M, N;  ///< second observation corner
  std::int64_t a, A;  ///< thresholds for the two passage times
};

/// Threshold for one observation: round_half_even(c2 t T + c3 xi (t T)^{1/3}).
std::int64_t scaled_threshold(const ScalingConstants& consts, double T, double t,
                              double xi);

/// Map scaled coordinates at system size T to lattice corners/thresholds:
///   n = t1*T - c1*eta1*(t1*T)^{2/3}   m = t1*T + c1*eta1*(t1*T)^{2/3}
///   a = c2*t1*T + c3*xi1*(t1*T)^{1/3}
/// (and likewise with (t2, eta2, xi2) for M, N, A), all rounded half to
/// even.  Throws parameter_error when T is too small for the requested
/// coordinates (nonpositive indices, or the corners fail m < M, n < N).
DiscreteTarget map_parameters(const ScalingConstants& consts, double T,
                              const TwoTimeParams& params);

}  // namespace lpptt
