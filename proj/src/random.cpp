#include "flatchain/random.hpp"

namespace flatchain {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
}

long Rng::uniform_int(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }

double Rng::uniform01() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

double Rng::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

Rational Rng::dyadic_uniform(const Rational& lo, const Rational& hi, unsigned bits) {
  const long steps = 1L << bits;
  const long i = uniform_int(0, steps - 1);
  Rational r = lo + (hi - lo) * Rational(i, steps);
  r.canonicalize();
  return r;
}

Rational Rng::small_rational(long max_num, long max_den) {
  Rational r(uniform_int(-max_num, max_num), uniform_int(1, max_den));
  r.canonicalize();
  return r;
}

}  // namespace flatchain
