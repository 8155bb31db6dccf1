#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace lpptt {

/// Counter-based generator (Philox-2x64, 10 rounds).  Stateless: word k of
/// stream s under seed σ is philox(σ; counter = k >> 1, stream = s)[k & 1],
/// so any sample of any stream is addressable without sequential draws, and
/// independent streams can be handed to replicas or threads.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  /// The two 64-bit words of one Philox block.
  std::pair<std::uint64_t, std::uint64_t> block(std::uint64_t counter,
                                                std::uint64_t stream) const {
    constexpr std::uint64_t kMul = 0xD2B74407B1CE6E93ULL;
    constexpr std::uint64_t kBump = 0x9E3779B97F4A7C15ULL;
    std::uint64_t c0 = counter, c1 = stream, key = seed_;
    for (int r = 0; r < 10; ++r) {
      const unsigned __int128 prod = static_cast<unsigned __int128>(kMul) * c0;
      const std::uint64_t hi = static_cast<std::uint64_t>(prod >> 64);
      const std::uint64_t lo = static_cast<std::uint64_t>(prod);
      c0 = hi ^ key ^ c1;
      c1 = lo;
      key += kBump;
    }
    return {c0, c1};
  }

  std::uint64_t word(std::uint64_t index, std::uint64_t stream) const {
    const auto b = block(index >> 1, stream);
    return (index & 1) ? b.second : b.first;
  }

  /// Map a 64-bit word to (0, 1): 53 mantissa bits, offset off zero.
  static double uniform01(std::uint64_t w) {
    return static_cast<double>(w >> 11) * 0x1.0p-53 + 0x1.0p-54;
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

/// Inverse-CDF geometric sampler on {0, 1, ...} with P[X = k] = (1-q) q^k.
/// Small values are found by scanning powers of q (expected (1-q)^{-1}
/// steps); the rare deep tail falls back to floor(log u / log q).
class GeometricSampler {
 public:
  explicit GeometricSampler(double q);

  int sample(double u) const {
    if (u >= qpow_[kScan]) {
      int k = 0;
      while (u < qpow_[k + 1]) ++k;
      return k;
    }
    return static_cast<int>(inv_log_q_ * std::log(u));
  }

  double q() const { return q_; }

 private:
  static constexpr int kScan = 8;
  double q_;
  double inv_log_q_;
  double qpow_[kScan + 1];  // qpow_[k] = q^k
};

}  // namespace lpptt
