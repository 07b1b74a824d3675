#pragma once

#include "exm/rat.hpp"

#include <cstdint>
#include <random>

namespace exm {

// Deterministic stream of pseudo-random values. mt19937_64's output sequence
// is fixed by the standard, and the helpers below avoid
// std::uniform_int_distribution (whose mapping is implementation-defined),
// so the same seed yields the same samples on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform in [0, n). Modulo bias is irrelevant here: samples only need to
  // be deterministic and well spread, not statistically perfect.
  std::uint64_t below(std::uint64_t n) { return n <= 1 ? 0 : gen_() % n; }

  // Uniform over [lo, hi] inclusive.
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    return lo + below(hi - lo + 1);
  }

  bool coin() { return (gen_() & 1u) != 0; }

  // Random point of the dyadic grid {k/2^j : 0 <= k <= 2^j, j <= log2_den}
  // inside [0, 1]. Grid denominators default to 2^16.
  Rat unit_rational(unsigned log2_den = 16) {
    const unsigned j = static_cast<unsigned>(below(log2_den + 1));
    const std::uint64_t den = std::uint64_t{1} << j;
    const std::uint64_t num = below(den + 1);
    return Rat(num, den);
  }

  // Random rational in [0, hi], on a grid scaled from unit_rational.
  Rat rational_in(const Rat& hi, unsigned log2_den = 8) {
    return unit_rational(log2_den) * hi;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace exm
