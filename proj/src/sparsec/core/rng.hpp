#pragma once

#include <cstdint>

namespace sparsec {

// xoshiro256++ seeded through SplitMix64 (constants from Blackman & Vigna,
// prng.di.unimi.it). The stream depends only on the seed words, so equal
// seeds reproduce equal draws on any platform. Monte Carlo code derives one
// generator per trial with substream(), which mixes up to three stream ids
// into the seed; trials therefore stay reproducible no matter how a work
// pool schedules them.
class RngState {
 public:
  explicit RngState(std::uint64_t seed);

  static RngState substream(std::uint64_t seed, std::uint64_t a,
                            std::uint64_t b = 0, std::uint64_t c = 0);

  std::uint64_t next_u64();

  // Uniform on [0, 1), 53-bit resolution.
  double uniform();
  double uniform(double lo, double hi);

  // Standard normal via Box-Muller; the second draw of each pair is cached.
  double gaussian();

  // Uniform on {0, ..., n-1}, n > 0.
  int uniform_int(int n);

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace sparsec
