#pragma once

#include <cstddef>
#include <vector>

namespace lpptt {

/// A one-dimensional quadrature rule: paired nodes and weights.
struct QuadRule {
  std::vector<double> x;
  std::vector<double> w;

  std::size_t size() const { return x.size(); }

  /// Sum of all weights (the measure of the covered interval).
  double total_weight() const;
};

/// Gauss-Legendre rule with n nodes on [-1, 1].  Nodes are computed by
/// Newton iteration on the Legendre recurrence and are accurate to machine
/// precision for n up to several thousand.
QuadRule gauss_legendre(int n);

/// Gauss-Legendre rule mapped onto [a, b].
QuadRule gauss_legendre(int n, double a, double b);

/// Composite rule covering [a, b] with consecutive Gauss-Legendre panels of
/// length at most `panel_len`, each carrying `nodes_per_panel` nodes.  Used
/// for integrands with a bounded oscillation wavelength: the fixed node
/// spacing keeps every wavelength resolved, which a single global rule (or a
/// rational map pushing nodes toward one end) does not guarantee.
QuadRule panel_rule(double a, double b, double panel_len, int nodes_per_panel);

}  // namespace lpptt
