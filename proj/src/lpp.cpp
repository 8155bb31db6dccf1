#include "lpptt/lpp.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "lpptt/errors.hpp"
#include "lpptt/parallel.hpp"
#include "lpptt/rng.hpp"

namespace lpptt {

PassageField sample_field(double q, std::int64_t rows, std::int64_t cols,
                          std::uint64_t seed, std::uint64_t stream) {
  if (rows < 1 || cols < 1) throw parameter_error("sample_field: empty rectangle");
  PassageField f;
  f.rows = rows;
  f.cols = cols;
  f.q = q;
  f.seed = seed;
  f.stream = stream;
  f.w.resize(static_cast<std::size_t>(rows * cols));
  const CounterRng rng(seed);
  const GeometricSampler geo(q);
  const std::size_t total = f.w.size();
  for (std::size_t idx = 0; idx < total; idx += 2) {
    const auto b = rng.block(idx >> 1, stream);
    f.w[idx] = geo.sample(CounterRng::uniform01(b.first));
    if (idx + 1 < total) f.w[idx + 1] = geo.sample(CounterRng::uniform01(b.second));
  }
  return f;
}

PassageTable last_passage(const PassageField& field) {
  PassageTable t;
  t.rows = field.rows;
  t.cols = field.cols;
  t.g.resize(field.w.size());
  for (std::int64_t i = 1; i <= field.rows; ++i) {
    std::int64_t left = 0;  // G(i, j-1), starting from the j = 0 boundary
    for (std::int64_t j = 1; j <= field.cols; ++j) {
      const std::size_t idx = static_cast<std::size_t>((i - 1) * field.cols + (j - 1));
      const std::int64_t up = i > 1 ? t.g[idx - field.cols] : 0;
      left = std::max(up, left) + field.w[idx];
      t.g[idx] = left;
    }
  }
  return t;
}

namespace {

std::int64_t height_odd(const PassageTable& table, std::int64_t x, std::int64_t t) {
  const std::int64_t i = (t + x + 1) / 2, j = (t - x + 1) / 2;
  if (i < 1 || j < 1 || i > table.rows || j > table.cols)
    throw parameter_error("height_function: (x, t) outside the sampled rectangle");
  return table.at(i, j);
}

}  // namespace

double height_function(const PassageTable& table, std::int64_t x, std::int64_t t) {
  if ((x + t) % 2 != 0)  // x + t odd: x+t+1 even, both indices integral
    return static_cast<double>(height_odd(table, x, t));
  return 0.5 * (height_odd(table, x - 1, t) + height_odd(table, x + 1, t));
}

double rescaled_height(const PassageTable& table, const ScalingConstants& consts,
                       double eta, double t, double T) {
  const double s = t * T;
  if (!(s > 0.0)) throw parameter_error("rescaled_height: need t*T > 0");
  const std::int64_t time = static_cast<std::int64_t>(std::nearbyint(2.0 * s));
  const std::int64_t x =
      static_cast<std::int64_t>(std::nearbyint(2.0 * consts.c1 * eta * std::pow(s, 2.0 / 3.0)));
  const double h = height_function(table, x, time);
  return (h - consts.c2 * s) / (consts.c3 * std::cbrt(s));
}

McEstimate wilson_estimate(std::int64_t hits, std::int64_t samples, std::uint64_t seed) {
  if (samples < 1) throw parameter_error("wilson_estimate: need at least one sample");
  McEstimate e;
  e.samples = samples;
  e.seed = seed;
  e.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  // Wilson score half-width at one standard normal unit.
  const double n = static_cast<double>(samples);
  const double p = e.estimate;
  e.std_error = std::sqrt(p * (1.0 - p) / n + 0.25 / (n * n)) / (1.0 + 1.0 / n);
  return e;
}

namespace {

/// Shared Monte-Carlo sweep: for each replica, run the row-rolling dynamic
/// program over the (M x N) rectangle and hand (G(m,n), G(M,N)) to `visit`.
/// Weights are drawn on the fly (two per generator block), so no field is
/// materialized.
template <typename Visit>
void sweep_samples(double q, std::int64_t m, std::int64_t n, std::int64_t M,
                   std::int64_t N, std::int64_t samples, std::uint64_t seed,
                   int threads, const Visit& visit) {
  if (m < 1 || n < 1 || m > M || n > N)
    throw parameter_error("monte carlo: corners must satisfy 1 <= (m,n) <= (M,N)");
  if (samples < 1) throw parameter_error("monte carlo: need at least one sample");
  const CounterRng rng(seed);
  const GeometricSampler geo(q);
  parallel_for(0, samples, threads, [&](std::int64_t rep) {
    const std::uint64_t stream = static_cast<std::uint64_t>(rep);
    std::vector<std::int64_t> row(static_cast<std::size_t>(N) + 1, 0);
    std::int64_t g_first = -1;
    std::size_t idx = 0;
    std::uint64_t pending = 0;
    bool have_pending = false;
    for (std::int64_t i = 1; i <= M; ++i) {
      for (std::int64_t j = 1; j <= N; ++j, ++idx) {
        std::uint64_t wbits;
        if (have_pending) {
          wbits = pending;
          have_pending = false;
        } else {
          const auto b = rng.block(idx >> 1, stream);
          wbits = b.first;
          pending = b.second;
          have_pending = true;
        }
        const int w = geo.sample(CounterRng::uniform01(wbits));
        row[j] = std::max(row[j], row[j - 1]) + w;
      }
      if (i == m) g_first = row[static_cast<std::size_t>(n)];
    }
    visit(rep, g_first, row[static_cast<std::size_t>(N)]);
  });
}

}  // namespace

McEstimate mc_point_probability(double q, const DiscreteTarget& target,
                                std::int64_t samples, std::uint64_t seed, int threads) {
  std::atomic<std::int64_t> hits{0};
  sweep_samples(q, target.m, target.n, target.M, target.N, samples, seed, threads,
                [&](std::int64_t, std::int64_t g1, std::int64_t g2) {
                  if (g1 < target.a && g2 < target.A) hits.fetch_add(1, std::memory_order_relaxed);
                });
  return wilson_estimate(hits.load(), samples, seed);
}

JointCdf mc_joint_cdf(const ScalingConstants& consts, double T, double t1, double t2,
                      double eta1, double eta2, const std::vector<double>& xi1_grid,
                      const std::vector<double>& xi2_grid, std::int64_t samples,
                      std::uint64_t seed, int threads) {
  if (xi1_grid.empty() || xi2_grid.empty())
    throw parameter_error("mc_joint_cdf: empty coordinate grid");
  TwoTimeParams base = derived_params(t1, t2, eta1, eta2, xi1_grid.front(), xi2_grid.front());
  const DiscreteTarget corners = map_parameters(consts, T, base);

  JointCdf out;
  out.m = corners.m;
  out.n = corners.n;
  out.M = corners.M;
  out.N = corners.N;
  out.xi1 = xi1_grid;
  out.xi2 = xi2_grid;
  for (double xi : xi1_grid) out.a.push_back(scaled_threshold(consts, T, t1, xi));
  for (double xi : xi2_grid) out.A.push_back(scaled_threshold(consts, T, t2, xi));

  const std::size_t cells = xi1_grid.size() * xi2_grid.size();
  std::vector<std::atomic<std::int64_t>> hits(cells);
  for (auto& h : hits) h.store(0);
  sweep_samples(consts.q, corners.m, corners.n, corners.M, corners.N, samples, seed,
                threads, [&](std::int64_t, std::int64_t g1, std::int64_t g2) {
                  for (std::size_t i1 = 0; i1 < out.a.size(); ++i1) {
                    if (g1 >= out.a[i1]) continue;
                    for (std::size_t i2 = 0; i2 < out.A.size(); ++i2) {
                      if (g2 < out.A[i2])
                        hits[i1 * out.A.size() + i2].fetch_add(1, std::memory_order_relaxed);
                    }
                  }
                });
  out.cells.reserve(cells);
  for (std::size_t c = 0; c < cells; ++c)
    out.cells.push_back(wilson_estimate(hits[c].load(), samples, seed));
  return out;
}

}  // namespace lpptt
