#pragma once

#include <cstdint>

#include "hypermatch/numeric.h"

namespace hypermatch {

// SplitMix64. Streams derived with Split() are independent of how many
// values the parent has produced, so per-trial seeds do not depend on
// scheduling.
class SeededStream {
 public:
  explicit SeededStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t Next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  SeededStream Split(std::uint64_t stream) const {
    SeededStream mixer(state_ ^ (stream * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
    return SeededStream(mixer.Next());
  }

  // Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t Below(std::uint64_t bound);

  // True with probability exactly floor(p * 2^64) / 2^64 (p clamped to [0,1]).
  bool Bernoulli(const Rational& p);

 private:
  std::uint64_t state_;
};

// Precomputed Bernoulli threshold for repeated draws at the same p.
class BernoulliGate {
 public:
  explicit BernoulliGate(const Rational& p);
  bool operator()(SeededStream& rng) const { return always_ || rng.Next() < threshold_; }

 private:
  bool always_ = false;
  std::uint64_t threshold_ = 0;
};

}  // namespace hypermatch
