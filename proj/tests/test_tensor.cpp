#include <doctest.h>

#include "flatchain/deform.hpp"
#include "flatchain/errors.hpp"
#include "flatchain/generators.hpp"
#include "flatchain/tensor.hpp"
#include "support.hpp"

using namespace testing;

namespace {

const Split k11{1, 1};

TensorChain square_tensor(long g = 1) { return TensorChain(k11, {1, 1}, unit_square(g)); }

}  // namespace

TEST_CASE("cell classification") {
  CHECK(classify(CoordCell({iv(0, 1), pt(0)}), k11) == Bidegree{1, 0});
  CHECK(classify(CoordCell({pt(0), iv(0, 1)}), k11) == Bidegree{0, 1});
  CHECK(classify(CoordCell({iv(0, 1), iv(0, 1)}), k11) == Bidegree{1, 1});
  CHECK(classify(CoordCell({iv(0, 1), pt(2), iv(0, 1)}), Split{2, 1}) == Bidegree{1, 1});
  CHECK(admissible_bidegrees(2, Split{1, 2}) == std::vector<Bidegree>{{0, 2}, {1, 1}});
}

TEST_CASE("decomposition of the square boundary") {
  const auto parts = jdecomp(boundary(unit_square()), k11);
  const CoordChain horizontal = chain_of(2, 1, {{{iv(0, 1), pt(0)}, 1}, {{iv(0, 1), pt(1)}, -1}});
  const CoordChain vertical = chain_of(2, 1, {{{pt(1), iv(0, 1)}, 1}, {{pt(0), iv(0, 1)}, -1}});
  CHECK(chains_equal(parts.at({1, 0}).body(), horizontal));
  CHECK(chains_equal(parts.at({0, 1}).body(), vertical));
}

TEST_CASE("a pure chain decomposes into itself") {
  const auto parts = jdecomp(unit_square(), k11);
  REQUIRE(parts.size() == 1);
  CHECK(chains_equal(parts.at({1, 1}).body(), unit_square()));
}

TEST_CASE("partial boundaries of the square") {
  const TensorChain sq = square_tensor(3);
  CHECK(chains_equal(d1(sq).body(), chain_of(2, 1, {{{pt(1), iv(0, 1)}, 3}, {{pt(0), iv(0, 1)}, -3}})));
  CHECK(chains_equal(d2(sq).body(), chain_of(2, 1, {{{iv(0, 1), pt(1)}, -3}, {{iv(0, 1), pt(0)}, 3}})));
  CHECK(tensor_add(d1(d2(sq)), d2(d1(sq))).empty());
  CHECK(d1(sq).bidegree() == Bidegree{0, 1});
  CHECK(chains_equal(partial_boundary(sq.body(), k11, true), d1(sq).body()));
  CHECK(chains_equal(partial_boundary(sq.body(), k11, false), d2(sq).body()));
}

TEST_CASE("partial boundary identities on random chains") {
  for (std::uint64_t i = 0; i < 150; ++i) {
    Rng rng(41, 1, i);
    const int n = 2 + static_cast<int>(i % 3);
    const int n1 = static_cast<int>(rng.uniform_int(1, n - 1));
    const Split s{n1, n - n1};
    const Bidegree b{static_cast<int>(rng.uniform_int(0, s.n1)), static_cast<int>(rng.uniform_int(0, s.n2))};
    const TensorChain t = random_tensor_chain(rng, s, b, rotating_group(i));
    if (b.k1 >= 2) CHECK(d1(d1(t)).empty());
    if (b.k2 >= 2) CHECK(d2(d2(t)).empty());
    if (b.k1 >= 1 && b.k2 >= 1) CHECK(tensor_add(d1(d2(t)), d2(d1(t))).empty());
  }
}

TEST_CASE("the triangle approximants anticommute") {
  for (int j = 1; j <= 4; ++j) {
    const TensorChain t = triangle_approximant(Coefficient::integer(1), j);
    CHECK(tensor_equal(d1(d2(t)), tensor_subtract(TensorChain(k11, {0, 0}, GroupDescriptor::integers()), d2(d1(t)))));
  }
}

TEST_CASE("iota moves the second factor into the coefficient") {
  const TensorChain t(k11, {1, 1}, chain_of(2, 2, {{{iv(0, 1), iv(0, 2)}, 3}}));
  const CoordChain y = iota(t);
  const GroupDescriptor g = GroupDescriptor::nested(1, 1, GroupDescriptor::integers());
  CoordChain expected(1, 1, g);
  expected.accumulate(CoordCell({iv(0, 1)}), Coefficient::chain(chain_of(1, 1, {{{iv(0, 2)}, 3}})));
  CHECK(chains_equal(y, canonicalize(expected)));
  CHECK(mass(y) == 6);
  CHECK(tensor_mass(t) == 6);
  CHECK(iota(TensorChain(k11, {1, 0}, GroupDescriptor::integers())).empty());
}

TEST_CASE("iota is an isometry with inverse") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng rng(43, 1, i);
    const int n = 2 + static_cast<int>(i % 3);
    const int n1 = static_cast<int>(rng.uniform_int(1, n - 1));
    const Split s{n1, n - n1};
    const Bidegree b{static_cast<int>(rng.uniform_int(0, s.n1)), static_cast<int>(rng.uniform_int(0, s.n2))};
    const TensorChain t = random_tensor_chain(rng, s, b, rotating_group(i));
    CHECK(mass(iota(t)) == term_mass(t.body()));
    CHECK(tensor_equal(iota_inv(iota(t), s), t));
  }
}

TEST_CASE("chi sums the coefficients") {
  const CoordChain c = chain_of(2, 0, {{{pt(0), pt(1)}, 3}, {{pt(2), pt(5)}, -1}});
  CHECK(chi(c) == Coefficient::integer(2));
  CHECK(chi(CoordChain(2, 0, GroupDescriptor::residues(3))) == Coefficient::zero(GroupDescriptor::residues(3)));
  CHECK_THROWS(chi(unit_square()));
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng rng(47, 1, i);
    const TensorChain t = random_tensor_chain(rng, k11, {0, 0}, rotating_group(i));
    CHECK(chi_tensor(t) == chi(t.body()));
  }
}

TEST_CASE("tensor chains validate their cells") {
  CHECK_THROWS(TensorChain(k11, {1, 0}, chain_of(2, 1, {{{pt(0), iv(0, 1)}, 1}})));
  CHECK_THROWS(TensorChain(k11, {2, 0}, GroupDescriptor::integers()));
}
