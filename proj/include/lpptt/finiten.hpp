// Exact finite-size evaluation of the two-point distribution
// P(a, A) = P[G(m,n) < a, G(M,N) < A] for geometric last-passage percolation.
//
// The route: the column vector (G(r,1),...,G(r,N)) is a Markov chain whose
// transition is an N x N determinant of finite-differenced negative-binomial
// weights.  Summing the intermediate state with a u-deformation that tracks
// how many components sit below the first threshold turns P(a,A) into a
// contour integral of det L(u) where L(i,j;u) = u^{1(i>n)} L1 + u^{-1(i<=n)} L2
// and L1/L2 are finite sums of products f01(i,x) f12(x,j) over x < 0 / x >= 0.
//
// Everything here is exact rational arithmetic (GMP).  The u-integral is not
// quadrature: det L(u) = u^{-n} p(u) with p a genuine polynomial of degree
// <= N, so P(a,A) is the sum of the coefficients of p of degree >= n.
#pragma once

#include <complex>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace lpptt {

using Rational = mpq_class;
using RationalMatrix = std::vector<std::vector<Rational>>;
// Polynomial with rational coefficients, ascending powers; empty == 0.
using RationalPoly = std::vector<Rational>;

// Parses "3/4", "0.25", or "7" into an exact rational.  Throws
// parameter_error on malformed input or a zero denominator.
Rational parse_rational(const std::string& text);

// C(n, k) for integer n of either sign (generalized: product form), k >= 0.
Rational binomial_rational(long n, long k);

// q^e for integer e of either sign.  Throws parameter_error for 0^negative.
Rational rational_pow(const Rational& q, long e);

// Negative binomial weight w_m(x) = (1-q)^m C(x+m-1, x) q^x for x >= 0,
// zero for x < 0.  Requires m >= 1 and 0 < q < 1.
Rational negbinom_weight(long m, const Rational& q, long x);

// Delta^j w_m(x) for any integer j: forward finite differences for j > 0,
// iterated tail sums for j < 0 (Delta^{-1} f(x) = sum_{y < x} f(y)).
Rational finite_difference_weight(long j, long m, const Rational& q, long x);

// beta_k^eps(m, a): Taylor coefficient of order -k of
// (1 - zeta/(1-q))^m (1-zeta)^{-(a+m-eps)};  zero for k >= 1, one for k = 0.
Rational beta_coeff(long k, int eps, long m, long a, const Rational& q);

// Problem instance.  Thresholds are strict: the event is
// {G(m,n) < a} and {G(M,N) < A}.
struct FiniteCase {
    Rational q;                 // geometric parameter, 0 < q < 1
    long m = 0, n = 0;          // first corner (row, column), 1-based
    long M = 0, N = 0;          // second corner, requires m < M and n < N
    long a = 0, A = 0;          // thresholds, nonnegative

    long dm() const { return M - m; }
    long dn() const { return N - n; }
    long da() const { return A - a; }

    // Throws parameter_error if any constraint fails.
    void validate() const;
};

// The f-functions entering the Cauchy-Binet sums.  Row conjugation
// c(i) = rho^i cancels in every determinant; it is kept as a knob so tests
// can assert the invariance exactly.
struct FiniteFunctions {
    FiniteCase cs;
    std::vector<Rational> conj;   // c(i), index i-1, size N

    // f01(i, x) = c(i) sum_k beta^1_{k-i}(m,a) (-1)^{n-k} Delta^{n-k} w_m(x+a)
    Rational f01(long i, long x) const;
    // f12(x, j) = c(j)^{-1} sum_k (-1)^{k-n} Delta^{k-1-n} w_dm(da-x)
    //             beta^0_{j-k}(dm, da)
    Rational f12(long x, long j) const;
};

// Builds the f-functions.  conj_delta = 0 keeps c(i) = 1; otherwise
// c(i) = rho^i with rho the (exactly rationalized) double value of
// (1 - sqrt(q)) e^{-conj_delta}, mirroring the conjugation used in the
// asymptotic analysis.  Any nonzero rho leaves all determinants unchanged.
FiniteFunctions f_functions(const FiniteCase& cs, double conj_delta = 0.0);

struct LMatrices {
    RationalMatrix L1;   // sum over x < 0
    RationalMatrix L2;   // sum over x >= 0
    long n = 0;          // assembly index: rows i <= n get the u^{-1} weight
};

// Assembles L1 and L2 by scanning x over the hard window
// [-a-2N, da+2N] and accumulating f01(i,x) f12(x,j).  The scan asserts the
// analytic support bounds (f01 = 0 below -a-N, f12 = 0 above da+N) and
// throws accuracy_error if a nonzero value appears outside them.
LMatrices l_matrix(const FiniteCase& cs, double conj_delta = 0.0);

struct FiniteResult {
    Rational probability;          // P(a, A), exact
    Rational u_one_determinant;    // det L(1) = P[G(M,N) < A], exact
    RationalPoly poly;             // p(u) = det(u L1 + L2), degree <= N
    long min_degree = 0;           // det L(u) = u^{min_degree} p(u) = u^{-n} p(u)
    double probability_double() const { return probability.get_d(); }
};

// Exact evaluation: det L(u) = u^{-n} det(u L1 + L2); the probability is the
// sum of the nonnegative-degree Laurent coefficients, i.e. the coefficients
// of p of degree >= n.
FiniteResult finite_two_point(const FiniteCase& cs, double conj_delta = 0.0);

// One-step-family transition weight
// det(Delta^{j-i} w_steps(y_j - x_i))_{1<=i,j<=N} for x, y weakly increasing.
// Requires steps >= 1 and x.size() == y.size() >= 1.
Rational transition_probability(long steps, const Rational& q,
                                const std::vector<long>& x,
                                const std::vector<long>& y);

struct TransitionCheck {
    double max_abs_dev = 0.0;    // max |determinant - MC frequency|
    double max_sigmas = 0.0;     // same, in binomial standard errors
    long cells = 0;              // number of y-vectors compared
    double total_det_mass = 0.0; // sum of determinant values over the box
};

// Monte Carlo check of the determinant transition: runs `samples` replicas
// of the vector update y_1 = x_1 + w_1, y_j = max(y_{j-1}, x_j) + w_j for
// `steps` rows, histograms the outcomes over the box
// {y weakly increasing, x_j <= y_j <= x_j + y_span}, and compares against
// transition_probability.  N = x.size() is meant to be 1 or 2.
TransitionCheck transition_check(long steps, double q,
                                 const std::vector<long>& x, long y_span,
                                 long samples, unsigned long long seed,
                                 int threads = 0);

struct HStarCheck {
    std::complex<double> h_star;      // H*_{k,l,b}(w_c + c4 w'/K^{1/3})
    std::complex<double> predicted;   // exp(w'^3/3 + eta w'^2 - (xi - v) w')
    double residual = 0.0;            // |h_star - predicted|
};

// Critical-point asymptotics check: the ratio H(w)/H(w_c) evaluated via log
// differences at w = w_c + c4 K^{-1/3} w' against its cubic-exponential
// limit.  The residual should shrink like K^{-1/3}.  Throws parameter_error
// if k, l, b fall below 1 or w lands on a pole/branch point.
HStarCheck hstar_limit_check(double q, double K, double xi, double eta,
                             double v, std::complex<double> w_prime);

// Exact determinant of a rational matrix (Gaussian elimination).
Rational det_rational(RationalMatrix a);

// Exact determinant of a matrix of rational polynomials (cofactor expansion
// with subset memoization; fine for the verification sizes N <= 8).
RationalPoly det_poly(const std::vector<std::vector<RationalPoly>>& a);

}  // namespace lpptt
