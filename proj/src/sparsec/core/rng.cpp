#include "sparsec/core/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace sparsec {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

// SplitMix64 finalizer, also used to expand the seed into state words.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

RngState::RngState(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& word : s_) word = splitmix64(sm);
}

RngState RngState::substream(std::uint64_t seed, std::uint64_t a,
                             std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = seed;
  h = mix(h ^ mix(a + 0x9e3779b97f4a7c15ULL));
  h = mix(h ^ mix(b + 0xbf58476d1ce4e5b9ULL));
  h = mix(h ^ mix(c + 0x94d049bb133111ebULL));
  return RngState(h);
}

std::uint64_t RngState::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RngState::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngState::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

double RngState::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 must stay away from 0 for the log; shift [0,1) to (0,1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

int RngState::uniform_int(int n) {
  if (n <= 0) throw std::invalid_argument("uniform_int requires n > 0");
  return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
}

}  // namespace sparsec
