#pragma once

// Deterministic splittable seeding: every random stream is derived from
// (seed, stream id, item index), so results do not depend on scheduling.

#include <cstdint>
#include <random>
#include <vector>

#include "flatchain/rational.hpp"

namespace flatchain {

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0) : engine_(derive_seed(seed, stream, index)) {}

  std::mt19937_64& engine() { return engine_; }
  long uniform_int(long lo, long hi);  // inclusive
  double uniform01();
  double normal();
  // Uniform dyadic rational in [lo, hi) with the given denominator bits.
  Rational dyadic_uniform(const Rational& lo, const Rational& hi, unsigned bits = 16);
  // Rational p/q with |p| <= max_num and q in [1, max_den].
  Rational small_rational(long max_num, long max_den);
  bool coin() { return uniform_int(0, 1) == 1; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace flatchain
