// Independent quadrature oracles for the scaling-limit kernel components.
//
// Every component of the whole-line pair (S1, T1, S2, S3, S4) and of the
// positive-axis family (M1..M3, k1..k7) has a first-line representation as a
// 1- to 4-fold integral over vertical contours of the cubic-exponential
// weight G_{xi,eta}(z) = exp(z^3/3 + eta z^2 - xi z).  These evaluators
// integrate those representations directly with trapezoid rules on truncated
// vertical lines -- no Airy functions, no lambda couplings -- so they share
// no code path with the production kernels they check.
//
// The multi-fold integrals all have denominators that factor over a tree of
// pairwise couplings, so each evaluation is O(nodes^2).
#pragma once

#include <complex>

#include "lpptt/kernels.hpp"

namespace lpptt::oracle {

using Complex = std::complex<double>;

// Positive-axis components (arguments v1, v2 >= 0).
Complex m1(const KernelContext& ctx, double v1, double v2, int nodes);
Complex m2(const KernelContext& ctx, double v1, double v2, int nodes);
Complex m3(const KernelContext& ctx, double v1, double v2, int nodes);
Complex k1(const KernelContext& ctx, double v1, double v2, int nodes);
Complex k2(const KernelContext& ctx, double v1, double v2, int nodes);
Complex k3(const KernelContext& ctx, double v1, double v2, int nodes);
Complex k4(const KernelContext& ctx, double v1, double v2, int nodes);
Complex k5(const KernelContext& ctx, double v1, double v2, int nodes);
Complex k6(const KernelContext& ctx, double v1, double v2, int nodes);
Complex k7(const KernelContext& ctx, double v1, double v2, int nodes);

// Whole-line components (x, y real).
Complex s1(const KernelContext& ctx, double x, double y, int nodes);
Complex t1(const KernelContext& ctx, double x, double y, int nodes);
Complex s2(const KernelContext& ctx, double x, double y, int nodes);
Complex s3(const KernelContext& ctx, double x, double y, int nodes);
// S4 = S1 - T1, but evaluated from its own 3-fold representation.
Complex s4(const KernelContext& ctx, double x, double y, int nodes);

}  // namespace lpptt::oracle
