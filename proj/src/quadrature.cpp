#include "lpptt/quadrature.hpp"

#include <cmath>
#include <numeric>

#include "lpptt/errors.hpp"

namespace lpptt {

double QuadRule::total_weight() const {
  return std::accumulate(w.begin(), w.end(), 0.0);
}

QuadRule gauss_legendre(int n) {
  if (n < 1) throw parameter_error("gauss_legendre: need at least one node");
  QuadRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess for the i-th root of P_n, then Newton.
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    rule.x[i] = -z;
    rule.x[n - 1 - i] = z;
    rule.w[i] = rule.w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  return rule;
}

QuadRule gauss_legendre(int n, double a, double b) {
  QuadRule base = gauss_legendre(n);
  const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    base.x[i] = mid + hw * base.x[i];
    base.w[i] *= hw;
  }
  return base;
}

QuadRule panel_rule(double a, double b, double panel_len, int nodes_per_panel) {
  if (!(b > a)) throw parameter_error("panel_rule: empty interval");
  if (panel_len <= 0.0) throw parameter_error("panel_rule: panel length must be positive");
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / panel_len)));
  const double len = (b - a) / panels;
  QuadRule base = gauss_legendre(nodes_per_panel);
  QuadRule rule;
  rule.x.reserve(static_cast<std::size_t>(panels) * nodes_per_panel);
  rule.w.reserve(static_cast<std::size_t>(panels) * nodes_per_panel);
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * len;
    const double mid = lo + 0.5 * len, hw = 0.5 * len;
    for (int i = 0; i < nodes_per_panel; ++i) {
      rule.x.push_back(mid + hw * base.x[i]);
      rule.w.push_back(hw * base.w[i]);
    }
  }
  return rule;
}

}  // namespace lpptt
