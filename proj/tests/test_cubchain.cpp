#include <doctest.h>

#include "flatchain/errors.hpp"
#include "flatchain/generators.hpp"
#include "flatchain/tensor.hpp"
#include "flatchain/deform.hpp"
#include "support.hpp"

using namespace testing;

TEST_CASE("canonical form overlays overlapping cells") {
  const CoordChain c = chain_of(1, 1, {{{iv(0, 2)}, 1}, {{iv(1, 3)}, -1}});
  const CoordChain expected = CoordChain::raw(1, 1, GroupDescriptor::integers(),
                                              {{CoordCell({iv(0, 1)}), Coefficient::integer(1)},
                                               {CoordCell({iv(2, 3)}), Coefficient::integer(-1)}});
  CHECK(c.size() == 2);
  CHECK(c.terms() == expected.terms());
}

TEST_CASE("adjacent cells stay separate") {
  const CoordChain c = chain_of(1, 1, {{{iv(0, 1)}, 1}, {{iv(1, 2)}, 1}});
  CHECK(c.size() == 2);
  CHECK(mass(c) == 2);
}

TEST_CASE("additive identities") {
  Rng rng(3);
  const CoordChain a = random_coord_chain(rng, 2, 1, GroupDescriptor::integers());
  CHECK(subtract(a, a).empty());
  CHECK(add(a, negate(a)).empty());
  CHECK(chains_equal(add(a, CoordChain(2, 1, GroupDescriptor::integers())), a));
  CHECK(chains_equal(scale(a, 3), add(a, add(a, a))));
}

TEST_CASE("mass is subadditive against direct term summation") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    Rng rng(5, 1, i);
    const CoordChain a = random_coord_chain(rng, 3, 1, rotating_group(i));
    const CoordChain b = random_coord_chain(rng, 3, 1, rotating_group(i));
    CHECK(mass(add(a, b)) <= term_mass(a) + term_mass(b));
    CHECK(mass(a) <= term_mass(a));
  }
}

TEST_CASE("boundary of the unit square") {
  const CoordChain b = boundary(unit_square());
  const CoordChain expected = chain_of(2, 1,
                                       {{{pt(1), iv(0, 1)}, 1},
                                        {{pt(0), iv(0, 1)}, -1},
                                        {{iv(0, 1), pt(1)}, -1},
                                        {{iv(0, 1), pt(0)}, 1}});
  CHECK(chains_equal(b, expected));
  CHECK(mass(b) == 4);
}

TEST_CASE("boundary of a segment follows the fundamental theorem") {
  const CoordChain seg = chain_of(2, 1, {{{iv(0, 1), pt(0)}, 1}});
  CHECK(chains_equal(boundary(seg), chain_of(2, 0, {{{pt(1), pt(0)}, 1}, {{pt(0), pt(0)}, -1}})));
}

TEST_CASE("boundary of a boundary vanishes") {
  const CoordChain cube = chain_of(3, 3, {{{iv(0, 1), iv(0, 1), iv(0, 1)}, 1}});
  CHECK(boundary(boundary(cube)).empty());
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng rng(9, 2, i);
    const int n = 2 + static_cast<int>(i % 3);
    const CoordChain c = random_coord_chain(rng, n, static_cast<int>(rng.uniform_int(2, n)), rotating_group(i));
    CHECK(boundary(boundary(c)).empty());
  }
}

TEST_CASE("mass examples") {
  CHECK(mass(unit_square(2)) == 2);
  CHECK(mass(chain_of(2, 2, {{{iv(0, 1), iv(0, 3)}, 2}})) == 6);
  CHECK(mass(CoordChain(3, 1, GroupDescriptor::integers())) == 0);
  for (int j = 1; j <= 4; ++j) {
    // Left edge of length 1 plus right edges of total length 1.
    CHECK(mass(staircase_chain(Coefficient::integer(-5), j).body()) == 10);
  }
}

TEST_CASE("translation") {
  CHECK(chains_equal(translate(unit_square(), RationalVector{0, 0}), unit_square()));
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng rng(13, 3, i);
    const int n = 1 + static_cast<int>(i % 4);
    const CoordChain c = random_coord_chain(rng, n, static_cast<int>(rng.uniform_int(0, n)), rotating_group(i));
    RationalVector y;
    for (int a = 0; a < n; ++a) y.push_back(rng.small_rational(8, 4));
    CHECK(mass(translate(c, y)) == term_mass(c));
    if (c.degree() > 0) CHECK(chains_equal(boundary(translate(c, y)), translate(boundary(c), y)));
  }
}

TEST_CASE("support boxes") {
  const BoundingBox b = support_box(unit_square());
  CHECK(b.bounds == std::vector<std::pair<Rational, Rational>>{{0, 1}, {0, 1}});
  const BoundingBox t = support_box(translate(unit_square(), RationalVector{5, 5}));
  CHECK(t.bounds == std::vector<std::pair<Rational, Rational>>{{5, 6}, {5, 6}});
  CHECK(support_box(CoordChain(2, 1, GroupDescriptor::integers())).empty);
  CHECK(b.inflated(q(1, 2)).contains(b));
  CHECK_FALSE(b.contains(b.inflated(q(1, 2))));
}

TEST_CASE("malformed cells are rejected") {
  CHECK_THROWS_AS(AxisFactor::interval(1, 1), DomainError);
  CHECK_THROWS_AS(AxisFactor::interval(2, 1), DomainError);
  CoordChain c(2, 1, GroupDescriptor::integers());
  CHECK_THROWS(c.accumulate(CoordCell({iv(0, 1), iv(0, 1)}), Coefficient::integer(1)));
  CHECK_THROWS(add(unit_square(), boundary(unit_square())));
}
