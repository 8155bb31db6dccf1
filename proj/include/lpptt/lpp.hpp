#pragma once

#include <cstdint>
#include <vector>

#include "lpptt/scaling.hpp"

namespace lpptt {

/// A sampled rectangle of i.i.d. geometric waiting times, row-major with
/// 1-based cell coordinates.  Cell (i, j) holds word (i-1)*cols + (j-1) of
/// the generator stream, so a field is fully determined by
/// (q, rows, cols, seed, stream).
struct PassageField {
  std::int64_t rows = 0, cols = 0;
  double q = 0.0;
  std::uint64_t seed = 0, stream = 0;
  std::vector<std::int32_t> w;

  std::int32_t weight(std::int64_t i, std::int64_t j) const {
    return w[static_cast<std::size_t>((i - 1) * cols + (j - 1))];
  }
};

PassageField sample_field(double q, std::int64_t rows, std::int64_t cols,
                          std::uint64_t seed, std::uint64_t stream = 0);

/// Table of last-passage times G(i, j) over the same rectangle, with the
/// boundary convention G(i, 0) = G(0, j) = 0.
struct PassageTable {
  std::int64_t rows = 0, cols = 0;
  std::vector<std::int64_t> g;

  std::int64_t at(std::int64_t i, std::int64_t j) const {
    if (i == 0 || j == 0) return 0;
    return g[static_cast<std::size_t>((i - 1) * cols + (j - 1))];
  }
};

/// Dynamic program G(i,j) = max(G(i-1,j), G(i,j-1)) + w(i,j).
PassageTable last_passage(const PassageField& field);

/// Height function h(x, t) = G((t+x+1)/2, (t-x+1)/2), defined on the odd
/// sublattice x + t odd; at even parity the two neighbouring odd sites are
/// averaged.  Requires the referenced corners to lie inside the table.
double height_function(const PassageTable& table, std::int64_t x, std::int64_t t);

/// Centered and scaled height at angle eta and time fraction t for system
/// size T:  (h(x, 2 t T) - c2 t T) / (c3 (t T)^{1/3})  with
/// x = 2 c1 eta (t T)^{2/3} rounded to the parity of the height lattice.
double rescaled_height(const PassageTable& table, const ScalingConstants& consts,
                       double eta, double t, double T);

/// A Bernoulli Monte-Carlo estimate with a Wilson-interval standard error.
struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};

McEstimate wilson_estimate(std::int64_t hits, std::int64_t samples, std::uint64_t seed);

/// P[G(m,n) < a and G(M,N) < A] by Monte Carlo with `samples` independent
/// fields (stream = sample index).  Deterministic in (seed, samples,
/// parameters) regardless of the thread count.
McEstimate mc_point_probability(double q, const DiscreteTarget& target,
                                std::int64_t samples, std::uint64_t seed,
                                int threads = 0);

/// Empirical joint CDF of the two-time pair on a grid of scaled coordinates:
/// one field sample serves every (xi1, xi2) cell, since only the thresholds
/// a(xi1), A(xi2) move across the grid.
struct JointCdf {
  std::int64_t m = 0, n = 0, M = 0, N = 0;
  std::vector<double> xi1, xi2;
  std::vector<std::int64_t> a, A;       ///< thresholds per grid coordinate
  std::vector<McEstimate> cells;        ///< row-major, xi1 index major
  const McEstimate& cell(std::size_t i1, std::size_t i2) const {
    return cells[i1 * xi2.size() + i2];
  }
};

JointCdf mc_joint_cdf(const ScalingConstants& consts, double T, double t1, double t2,
                      double eta1, double eta2, const std::vector<double>& xi1_grid,
                      const std::vector<double>& xi2_grid, std::int64_t samples,
                      std::uint64_t seed, int threads = 0);

}  // namespace lpptt
