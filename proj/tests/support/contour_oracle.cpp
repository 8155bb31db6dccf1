#include "contour_oracle.hpp"

#include <cmath>
#include <vector>

#include "lpptt/airy.hpp"
#include "lpptt/errors.hpp"

namespace lpptt::oracle {

namespace {

// Vertical line Re = anchor sampled for a trapezoid rule; weights carry the
// 1/(2 pi i) normalization (dz = i dt cancels the i, so they are real).
struct Line {
    std::vector<Complex> z;
    std::vector<double> w;
};

Line make_line(double anchor, double rate, int nodes) {
    if (!(rate > 0.05))
        throw parameter_error("contour oracle: vertical line decays too slowly");
    if (nodes < 32) throw parameter_error("contour oracle: too few nodes");
    const double half = std::sqrt(46.0 / rate);
    const double h = 2.0 * half / (nodes - 1);
    Line line;
    line.z.resize(static_cast<std::size_t>(nodes));
    line.w.resize(static_cast<std::size_t>(nodes));
    for (int k = 0; k < nodes; ++k) {
        const double t = -half + h * k;
        line.z[static_cast<std::size_t>(k)] = Complex(anchor, t);
        const double trap = (k == 0 || k == nodes - 1) ? 0.5 * h : h;
        line.w[static_cast<std::size_t>(k)] = trap / (2.0 * M_PI);
    }
    return line;
}

// Anchors are chosen per component, not taken from the KernelContext: any
// positions keeping every Gaussian decay rate positive and every coupling
// pole on its prescribed side give the same value, so the oracle picks its
// own.  A G_{.,eta} line at Re = c decays like e^{-(c+eta)t^2}; a reciprocal
// line at Re = -d like e^{-(d-eta)t^2}.
constexpr double kRate = 0.9;
constexpr double kGap = 0.6;  // clearance between coupled contours

Line num_line(double eta, int nodes, double anchor_floor = 0.0) {
    const double a = std::max({kRate, kRate - eta, anchor_floor});
    return make_line(a, a + eta, nodes);
}

Line rec_line(double eta, int nodes, double anchor_floor = 0.0) {
    const double d = std::max({kRate, kRate + eta, anchor_floor});
    return make_line(-d, d - eta, nodes);
}

// Samples of G_{xi,eta} (or its reciprocal) along a line, premultiplied by
// the quadrature weights.
std::vector<Complex> weight_g(const Line& line, double xi, double eta,
                              bool reciprocal, double scale = 1.0) {
    std::vector<Complex> out(line.z.size());
    for (std::size_t k = 0; k < line.z.size(); ++k) {
        const Complex g = g_exponential(scale * line.z[k], xi, eta);
        out[k] = line.w[k] * (reciprocal ? 1.0 / g : g);
    }
    return out;
}

struct Params {
    double alpha, alpha_prime, xi1, dxi, eta1, deta, xi2, eta2, delta;
};

Params unpack(const KernelContext& ctx) {
    Params p;
    p.alpha = ctx.params.alpha;
    p.alpha_prime = ctx.params.alpha_prime;
    p.xi1 = ctx.params.xi1;
    p.dxi = ctx.params.delta_xi;
    p.eta1 = ctx.params.eta1;
    p.deta = ctx.params.delta_eta;
    p.xi2 = ctx.params.xi2;
    p.eta2 = ctx.params.eta2;
    p.delta = ctx.params.delta;
    return p;
}

// Plain double contour sum: sum_{i,j} a_i b_j / (za_i - zb_j).
Complex cauchy_pair(const Line& la, const std::vector<Complex>& ga,
                    const Line& lb, const std::vector<Complex>& gb) {
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < ga.size(); ++i)
        for (std::size_t j = 0; j < gb.size(); ++j)
            acc += ga[i] * gb[j] / (la.z[i] - lb.z[j]);
    return acc;
}

}  // namespace

Complex m1(const KernelContext& ctx, double v1, double v2, int nodes) {
    const Params p = unpack(ctx);
    const Line lz = num_line(p.eta1, nodes);
    const Line lc = rec_line(p.eta1, nodes);
    const auto gz = weight_g(lz, p.xi1 + v1, p.eta1, false);
    const auto gc = weight_g(lc, p.xi1 + v2, p.eta1, true);
    return std::exp(p.delta * (v1 - v2)) * cauchy_pair(lz, gz, lc, gc);
}

Complex m2(const KernelContext& ctx, double v1, double v2, int nodes) {
    const Params p = unpack(ctx);
    const Line lz = num_line(p.eta2, nodes);
    const Line lc = rec_line(p.eta2, nodes);
    const auto gz = weight_g(lz, p.xi2 + v2 / p.alpha_prime, p.eta2, false);
    const auto gc = weight_g(lc, p.xi2 + v1 / p.alpha_prime, p.eta2, true);
    return cauchy_pair(lz, gz, lc, gc) / p.alpha_prime;
}

Complex m3(const KernelContext& ctx, double v1, double v2, int nodes) {
    const Params p = unpack(ctx);
    const Line lz = num_line(p.deta, nodes);
    const Line lc = rec_line(p.deta, nodes);
    const auto gz = weight_g(lz, p.dxi + v2, p.deta, false);
    const auto gc = weight_g(lc, p.dxi + v1, p.deta, true);
    return cauchy_pair(lz, gz, lc, gc);
}

Complex k1(const KernelContext& ctx, double v1, double v2, int nodes) {
    const Params p = unpack(ctx);
    // z right of alpha w, alpha omega right of zeta;
    // denominators (z - zeta)(z - alpha w)(alpha omega - zeta).
    const Line lw = num_line(p.deta, nodes);
    const Line lz = num_line(p.eta1, nodes, p.alpha * lw.z[0].real() + kGap);
    const Line lo = rec_line(p.deta, nodes);
    const Line lc = rec_line(p.eta1, nodes, p.alpha * (-lo.z[0].real()) + kGap);
    const auto gz = weight_g(lz, p.xi1, p.eta1, false);
    const auto gw = weight_g(lw, p.dxi + v2, p.deta, false);
    const auto gc = weight_g(lc, p.xi1, p.eta1, true);
    const auto go = weight_g(lo, p.dxi + v1, p.deta, true);

    std::vector<Complex> aw(gz.size()), bo(gc.size());
    for (std::size_t i = 0; i < gz.size(); ++i) {
        Complex s{0.0, 0.0};
        for (std::size_t k = 0; k < gw.size(); ++k)
            s += gw[k] / (lz.z[i] - p.alpha * lw.z[k]);
        aw[i] = s;
    }
    for (std::size_t j = 0; j < gc.size(); ++j) {
        Complex s{0.0, 0.0};
        for (std::size_t k = 0; k < go.size(); ++k)
            s += go[k] / (p.alpha * lo.z[k] - lc.z[j]);
        bo[j] = s;
    }
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < gz.size(); ++i)
        for (std::size_t j = 0; j < gc.size(); ++j)
            acc += gz[i] * aw[i] * gc[j] * bo[j] / (lz.z[i] - lc.z[j]);
    return p.alpha * acc;
}

Complex k2(const KernelContext& ctx, double v1, double v2, int nodes) {
    const Params p = unpack(ctx);
    // denominators (alpha' z - alpha omega)(z - alpha w): z right of alpha w.
    const Line lw = num_line(p.deta, nodes);
    const Line lz = num_line(p.eta1, nodes, p.alpha * lw.z[0].real() + kGap);
    const Line lo = rec_line(p.eta2, nodes);
    const auto gz = weight_g(lz, p.xi1, p.eta1, false);
    const auto gw = weight_g(lw, p.dxi + v2, p.deta, false);
    const auto go = weight_g(lo, p.xi2 + v1 / p.alpha_prime, p.eta2, true);
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < gz.size(); ++i) {
        Complex sw{0.0, 0.0}, so{0.0, 0.0};
        for (std::size_t k = 0; k < gw.size(); ++k)
            sw += gw[k] / (lz.z[i] - p.alpha * lw.z[k]);
        for (std::size_t k = 0; k < go.size(); ++k)
            so += go[k] / (p.alpha_prime * lz.z[i] - p.alpha * lo.z[k]);
        acc += gz[i] * sw * so;
    }
    return p.alpha * acc;
}

Complex k3(const KernelContext& ctx, double v1, double v2, int nodes) {
    const Params p = unpack(ctx);
    // denominator (alpha omega - zeta): alpha omega right of zeta.
    const Line lo = rec_line(p.deta, nodes);
    const Line lc = rec_line(p.eta1, nodes, p.alpha * (-lo.z[0].real()) + kGap);
    const auto gc = weight_g(lc, p.xi1 + v2, p.eta1, true);
    const auto go = weight_g(lo, p.dxi + v1, p.deta, true);
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < gc.size(); ++j)
        for (std::size_t k = 0; k < go.size(); ++k)
            acc += gc[j] * go[k] / (p.alpha * lo.z[k] - lc.z[j]);
    return p.alpha * std::exp(-p.delta * v2) * acc;
}

Complex k4(const KernelContext& ctx, double v1, double v2, int nodes) {
    const Params p = unpack(ctx);
    const Line lo = rec_line(p.eta2, nodes);
    const auto go =
        weight_g(lo, p.xi2 + (v1 + p.alpha * v2) / p.alpha_prime, p.eta2, true);
    Complex acc{0.0, 0.0};
    for (const Complex& g : go) acc += g;
    return p.alpha / p.alpha_prime * std::exp(-p.delta * v2) * acc;
}

Complex k5(const KernelContext& ctx, double v1, double v2, int nodes) {
    const Params p = unpack(ctx);
    // denominators (alpha w - alpha' zeta)(alpha omega - zeta): star at zeta.
    const Line lw = num_line(p.eta2, nodes);
    const Line lo = rec_line(p.deta, nodes);
    const Line lc = rec_line(p.eta1, nodes, p.alpha * (-lo.z[0].real()) + kGap);
    const auto gw = weight_g(lw, p.xi2 + v2 / p.alpha_prime, p.eta2, false);
    const auto gc = weight_g(lc, p.xi1, p.eta1, true);
    const auto go = weight_g(lo, p.dxi + v1, p.deta, true);
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < gc.size(); ++j) {
        Complex sw{0.0, 0.0}, so{0.0, 0.0};
        for (std::size_t k = 0; k < gw.size(); ++k)
            sw += gw[k] / (p.alpha * lw.z[k] - p.alpha_prime * lc.z[j]);
        for (std::size_t k = 0; k < go.size(); ++k)
            so += go[k] / (p.alpha * lo.z[k] - lc.z[j]);
        acc += gc[j] * sw * so;
    }
    return p.alpha * acc;
}

Complex k6(const KernelContext& ctx, double v1, double v2, int nodes) {
    const Params p = unpack(ctx);
    // denominators (z1 - zeta)(z2 - zeta)(z1 - alpha w): z1 right of alpha w.
    const Line lw = num_line(p.deta, nodes);
    const Line lz1 = num_line(p.eta1, nodes, p.alpha * lw.z[0].real() + kGap);
    const Line lz2 = num_line(p.eta1, nodes);
    const Line lc = rec_line(p.eta1, nodes);
    const auto gz1 = weight_g(lz1, p.xi1, p.eta1, false);
    const auto gz2 = weight_g(lz2, p.xi1 + v1, p.eta1, false);
    const auto gw = weight_g(lw, p.dxi + v2, p.deta, false);
    const auto gc = weight_g(lc, p.xi1, p.eta1, true);

    std::vector<Complex> aw(gz1.size()), bz(gc.size());
    for (std::size_t i = 0; i < gz1.size(); ++i) {
        Complex s{0.0, 0.0};
        for (std::size_t k = 0; k < gw.size(); ++k)
            s += gw[k] / (lz1.z[i] - p.alpha * lw.z[k]);
        aw[i] = s;
    }
    for (std::size_t j = 0; j < gc.size(); ++j) {
        Complex s{0.0, 0.0};
        for (std::size_t k = 0; k < gz2.size(); ++k)
            s += gz2[k] / (lz2.z[k] - lc.z[j]);
        bz[j] = s;
    }
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < gz1.size(); ++i)
        for (std::size_t j = 0; j < gc.size(); ++j)
            acc += gz1[i] * aw[i] * gc[j] * bz[j] / (lz1.z[i] - lc.z[j]);
    return std::exp(p.delta * v1) * acc;
}

Complex k7(const KernelContext& ctx, double v1, double v2, int nodes) {
    const Params p = unpack(ctx);
    // denominators (alpha w - alpha' zeta)(z - zeta): star at zeta.
    const Line lz = num_line(p.eta1, nodes);
    const Line lw = num_line(p.eta2, nodes);
    const Line lc = rec_line(p.eta1, nodes);
    const auto gz = weight_g(lz, p.xi1 + v1, p.eta1, false);
    const auto gw = weight_g(lw, p.xi2 + v2 / p.alpha_prime, p.eta2, false);
    const auto gc = weight_g(lc, p.xi1, p.eta1, true);
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < gc.size(); ++j) {
        Complex sw{0.0, 0.0}, sz{0.0, 0.0};
        for (std::size_t k = 0; k < gw.size(); ++k)
            sw += gw[k] / (p.alpha * lw.z[k] - p.alpha_prime * lc.z[j]);
        for (std::size_t k = 0; k < gz.size(); ++k)
            sz += gz[k] / (lz.z[k] - lc.z[j]);
        acc += gc[j] * sw * sz;
    }
    return std::exp(p.delta * v1) * acc;
}

namespace {

// Shared core of s1/t1: the z line sits left (S1) or right (T1) of the
// rescaled w line; the residue between the two positions is S4.
Complex s1_t1(const KernelContext& ctx, double x, double y, int nodes,
              bool z_inside) {
    const Params p = unpack(ctx);
    Line lw = num_line(p.deta, nodes);
    Line lz = num_line(p.eta1, nodes);
    if (z_inside) {
        if (p.alpha * lw.z[0].real() - lz.z[0].real() < kGap)
            lw = num_line(p.deta, nodes, (lz.z[0].real() + kGap) / p.alpha);
    } else {
        lz = num_line(p.eta1, nodes, p.alpha * lw.z[0].real() + kGap);
    }
    const Line lc = rec_line(p.eta1, nodes);
    const Line lo = rec_line(p.deta, nodes);
    const auto gz = weight_g(lz, p.xi1, p.eta1, false);
    const auto gw = weight_g(lw, p.dxi, p.deta, false);
    const auto gc = weight_g(lc, p.xi1 - x, p.eta1, true);
    const auto go = weight_g(lo, p.dxi + p.alpha * y, p.deta, true);

    // denominators (z - zeta)(w - omega)(z - alpha w): chain zeta-z-w-omega.
    std::vector<Complex> cw(gw.size());
    for (std::size_t k = 0; k < gw.size(); ++k) {
        Complex s{0.0, 0.0};
        for (std::size_t l = 0; l < go.size(); ++l)
            s += go[l] / (lw.z[k] - lo.z[l]);
        cw[k] = gw[k] * s;
    }
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < gz.size(); ++i) {
        Complex sw{0.0, 0.0}, sc{0.0, 0.0};
        for (std::size_t k = 0; k < cw.size(); ++k)
            sw += cw[k] / (lz.z[i] - p.alpha * lw.z[k]);
        for (std::size_t j = 0; j < gc.size(); ++j)
            sc += gc[j] / (lz.z[i] - lc.z[j]);
        acc += gz[i] * sw * sc;
    }
    return p.alpha * std::exp(p.delta * (y - x)) * acc;
}

}  // namespace

Complex s1(const KernelContext& ctx, double x, double y, int nodes) {
    return s1_t1(ctx, x, y, nodes, true);
}

Complex t1(const KernelContext& ctx, double x, double y, int nodes) {
    return s1_t1(ctx, x, y, nodes, false);
}

Complex s2(const KernelContext& ctx, double x, double y, int nodes) {
    const Params p = unpack(ctx);
    const Line lw = num_line(p.deta, nodes);
    const Line lo = rec_line(p.deta, nodes);
    const auto gw = weight_g(lw, p.dxi + p.alpha * x, p.deta, false);
    const auto go = weight_g(lo, p.dxi + p.alpha * y, p.deta, true);
    return p.alpha * std::exp(p.delta * (y - x)) * cauchy_pair(lw, gw, lo, go);
}

Complex s3(const KernelContext& ctx, double x, double y, int nodes) {
    const Params p = unpack(ctx);
    const Line lz = num_line(p.eta1, nodes);
    const Line lc = rec_line(p.eta1, nodes);
    const auto gz = weight_g(lz, p.xi1 - y, p.eta1, false);
    const auto gc = weight_g(lc, p.xi1 - x, p.eta1, true);
    return std::exp(p.delta * (y - x)) * cauchy_pair(lz, gz, lc, gc);
}

Complex s4(const KernelContext& ctx, double x, double y, int nodes) {
    const Params p = unpack(ctx);
    // w carries G_{xi2,eta2}(alpha' w): the scaled argument sharpens the
    // Gaussian decay to alpha'^2 (alpha' Re w + eta2).
    const double anchor = std::max(kRate, (kRate - p.eta2) / p.alpha_prime);
    const double w_rate =
        p.alpha_prime * p.alpha_prime * (p.alpha_prime * anchor + p.eta2);
    const Line lw = make_line(anchor, w_rate, nodes);
    const Line lc = rec_line(p.eta1, nodes);
    const Line lo = rec_line(p.deta, nodes);
    const auto gw = weight_g(lw, p.xi2, p.eta2, false, p.alpha_prime);
    const auto gc = weight_g(lc, p.xi1 - x, p.eta1, true);
    const auto go = weight_g(lo, p.dxi + p.alpha * y, p.deta, true);

    // denominators (alpha w - zeta)(w - omega): chain zeta-w-omega.
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < gw.size(); ++k) {
        Complex so{0.0, 0.0}, sc{0.0, 0.0};
        for (std::size_t l = 0; l < go.size(); ++l)
            so += go[l] / (lw.z[k] - lo.z[l]);
        for (std::size_t j = 0; j < gc.size(); ++j)
            sc += gc[j] / (p.alpha * lw.z[k] - lc.z[j]);
        acc += gw[k] * so * sc;
    }
    return -p.alpha * std::exp(p.delta * (y - x)) * acc;
}

}  // namespace lpptt::oracle
