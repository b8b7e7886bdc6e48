#pragma once

#include <vector>

#include "flatchain/cubchain.hpp"
#include "flatchain/random.hpp"
#include "flatchain/rational.hpp"
#include "flatchain/simplexchain.hpp"

namespace testing {

using namespace flatchain;

inline Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

inline AxisFactor iv(const Rational& a, const Rational& b) { return AxisFactor::interval(a, b); }
inline AxisFactor pt(const Rational& a) { return AxisFactor::point(a); }

inline CoordChain chain_of(int n, int k, const std::vector<std::pair<std::vector<AxisFactor>, long>>& terms) {
  CoordChain c(n, k, GroupDescriptor::integers());
  for (const auto& [f, g] : terms) c.accumulate(CoordCell(f), Coefficient::integer(g));
  return canonicalize(c);
}

inline CoordChain unit_square(long g = 1) { return chain_of(2, 2, {{{iv(0, 1), iv(0, 1)}, g}}); }

inline SimplexChain simplex_chain(const std::vector<RationalVector>& verts, const Coefficient& g = Coefficient::integer(1)) {
  const int n = static_cast<int>(verts.front().size());
  SimplexChain c(n, static_cast<int>(verts.size()) - 1, g.descriptor());
  c.add_term(Simplex(verts), g);
  return c;
}

inline SimplexChain segment_34() { return simplex_chain({{q(0), q(0)}, {q(3), q(4)}}); }

// Sum of |g| times cell volume over the stored terms, without canonicalizing.
inline Rational term_mass(const CoordChain& c) {
  Rational m = 0;
  for (const auto& [cell, g] : c.terms()) {
    Rational v = 1;
    for (const auto& f : cell.factors()) {
      if (f.is_interval()) v *= f.hi() - f.lo();
    }
    m += g.norm() * v;
  }
  return m;
}

}  // namespace testing
