#pragma once

#include <cstdint>
#include <random>

namespace burnstab {

// Seeded uniform generator with a fixed mapping to doubles. mt19937_64 output
// is specified bit-for-bit by the standard; mapping through the top 53 bits
// (instead of std::uniform_real_distribution, whose algorithm is
// implementation-defined) keeps sequences reproducible across toolchains.
class UniformRng {
public:
  explicit UniformRng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

private:
  std::mt19937_64 gen_;
};

}  // namespace burnstab
