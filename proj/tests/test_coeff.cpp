#include <doctest.h>

#include "flatchain/coeff.hpp"
#include "flatchain/errors.hpp"
#include "flatchain/generators.hpp"
#include "support.hpp"

using namespace testing;

TEST_CASE("group operations on small examples") {
  CHECK((Coefficient::integer(3) + Coefficient::integer(-3)).is_zero());
  CHECK((Coefficient::residue(1, 2) + Coefficient::residue(1, 2)).is_zero());
  CHECK(Coefficient::residue(7, 5) == Coefficient::residue(2, 5));
  CHECK(Coefficient::residue(-1, 5) == Coefficient::residue(4, 5));
  CHECK(Coefficient::rational(q(1, 2)) + Coefficient::rational(q(1, 3)) == Coefficient::rational(q(5, 6)));
  CHECK(Coefficient::integer(4).times(-2) == Coefficient::integer(-8));
  CHECK(Coefficient::from_rational(q(7), GroupDescriptor::residues(3)) == Coefficient::residue(1, 3));
  CHECK_THROWS(Coefficient::from_rational(q(1, 2), GroupDescriptor::integers()));
}

TEST_CASE("mixing groups is rejected") {
  CHECK_THROWS_AS(Coefficient::integer(1) + Coefficient::residue(1, 5), StructuralError);
  CHECK_THROWS_AS(Coefficient::residue(1, 3) + Coefficient::residue(1, 5), StructuralError);
}

TEST_CASE("norms of integers and residues") {
  CHECK(Coefficient::integer(-3).norm() == 3);
  CHECK(Coefficient::residue(4, 5).norm() == 1);
  CHECK(Coefficient::rational(q(-2, 7)).norm() == q(2, 7));
  // Oracle: distance from r to the nearest multiple of m, by enumeration.
  for (long m = 2; m <= 12; ++m) {
    for (long r = 0; r < m; ++r) {
      long best = m;
      for (long k = -2; k <= 2; ++k) best = std::min(best, std::labs(r - k * m));
      CHECK(Coefficient::residue(r, m).norm() == best);
    }
  }
}

TEST_CASE("chain coefficients") {
  const GroupDescriptor g = GroupDescriptor::nested(2, 1, GroupDescriptor::integers());
  for (std::uint64_t i = 0; i < 20; ++i) {
    Rng rng(7, 1, i);
    const CoordChain a = random_coord_chain(rng, 2, 1, GroupDescriptor::integers());
    const CoordChain b = random_coord_chain(rng, 2, 1, GroupDescriptor::integers());
    const Coefficient ca = Coefficient::chain(a);
    const Coefficient cb = Coefficient::chain(b);
    CHECK(ca.descriptor() == g);
    CHECK(ca.norm() == term_mass(a));
    CHECK(chains_equal((ca + cb).inner_chain(), add(a, b)));
    CHECK((ca + cb).norm() <= ca.norm() + cb.norm());
    CHECK((ca - ca).is_zero());
  }
}

TEST_CASE("nested descriptors may not nest twice") {
  const GroupDescriptor inner = GroupDescriptor::nested(1, 1, GroupDescriptor::integers());
  CHECK_THROWS(GroupDescriptor::nested(1, 1, inner));
}

TEST_CASE("norm axioms on random coefficients") {
  const std::vector<GroupDescriptor> groups{GroupDescriptor::integers(), GroupDescriptor::residues(6),
                                            GroupDescriptor::rationals(),
                                            GroupDescriptor::nested(1, 0, GroupDescriptor::residues(3))};
  for (std::uint64_t i = 0; i < 400; ++i) {
    Rng rng(11, 2, i);
    const auto& g = groups[i % groups.size()];
    const Coefficient a = random_coefficient(rng, g);
    const Coefficient b = random_coefficient(rng, g);
    CAPTURE(a.to_string());
    CHECK(a.norm() > 0);
    CHECK((-a).norm() == a.norm());
    CHECK((a + b).norm() <= a.norm() + b.norm());
    CHECK(a + b == b + a);
    CHECK(Coefficient::zero(g).norm() == 0);
  }
}
