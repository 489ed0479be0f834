#pragma once

#include <cstdint>

namespace vqb {

// splitmix64 finalizer; the basis of all randomness in the library.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based generator: the value at a given (seed, counter...) key does
// not depend on how many values were drawn before it, so sharded and
// sequential runs see identical streams.
inline double counter_u01(std::uint64_t seed, std::uint64_t counter,
                          std::uint64_t substream) {
  const std::uint64_t h = mix64(mix64(mix64(seed) ^ counter) ^ (substream << 1 | 1));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Small sequential generator for start-point sampling and test fixtures.
class SequentialRng {
 public:
  explicit SequentialRng(std::uint64_t seed) : state_(mix64(seed)) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

}  // namespace vqb
