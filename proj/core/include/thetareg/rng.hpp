#pragma once

#include "thetareg/numeric.hpp"

namespace thetareg {

/// SplitMix64: the named, seedable, splittable generator used by every
/// randomized experiment. Per-sample streams are derived by a fixed mix of
/// (seed, index), so a run partitions identically across any worker count.
struct SplitMix64 {
  u64 state;

  explicit SplitMix64(u64 seed) : state(seed) {}

  u64 next() {
    u64 z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Unbiased value in [0, bound) by rejection.
  u64 bounded(u64 bound) {
    u64 threshold = (0 - bound) % bound;
    for (;;) {
      u64 r = next();
      if (r >= threshold) return r % bound;
    }
  }

  /// Independent stream for sample `index` of a seeded run (fixed jump).
  static SplitMix64 stream(u64 seed, u64 index) {
    SplitMix64 g(seed ^ (0x6a09e667f3bcc909ULL + index * 0x9e3779b97f4a7c15ULL));
    g.next();
    return g;
  }
};

}  // namespace thetareg
