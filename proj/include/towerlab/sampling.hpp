#pragma once

#include <cstdint>

#include "towerlab/rat.hpp"

namespace towerlab {

// SplitMix64: the fixed PRNG behind every seeded sampler in this project.
// Same seed => same stream on every platform, which keeps sampled
// submodules and JSON reports reproducible byte for byte.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform-ish integer in [lo, hi]; the tiny modulo bias is irrelevant for
  // test sampling and keeps the stream layout trivial to reproduce.
  int64_t next_in(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(next() % static_cast<uint64_t>(hi - lo + 1));
  }

  Rat next_small_rat(int64_t lo = -2, int64_t hi = 2) { return Rat(next_in(lo, hi)); }

 private:
  uint64_t state_;
};

}  // namespace towerlab
