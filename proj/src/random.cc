#include "hypermatch/random.h"

#include <limits>

namespace hypermatch {

std::uint64_t SeededStream::Below(std::uint64_t bound) {
  if (bound == 0) throw InputError("empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  while (true) {
    std::uint64_t x = Next();
    if (x < limit) return x % bound;
  }
}

bool SeededStream::Bernoulli(const Rational& p) { return BernoulliGate(p)(*this); }

BernoulliGate::BernoulliGate(const Rational& p) {
  if (p >= 1) {
    always_ = true;
    return;
  }
  if (p <= 0) return;
  BigInt scaled = Floor(p * Rational(BigInt(1) << 64));
  threshold_ = scaled.convert_to<std::uint64_t>();
}

}  // namespace hypermatch
