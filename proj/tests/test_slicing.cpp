#include <doctest.h>

#include "flatchain/deform.hpp"
#include "flatchain/flatnorm.hpp"
#include "flatchain/generators.hpp"
#include "flatchain/serialize.hpp"
#include "flatchain/slicing.hpp"
#include "support.hpp"

using namespace testing;

namespace {

RationalVector origin(int n) { return RationalVector(static_cast<std::size_t>(n), Rational(0)); }

}  // namespace

TEST_CASE("0-slices of coordinate chains") {
  const CoordChain sq = unit_square(4);
  CHECK(chains_equal(slice0_coord(sq, {0, 1}, {q(1, 2), q(1, 2)}), chain_of(2, 0, {{{pt(q(1, 2)), pt(q(1, 2))}, 4}})));
  const CoordChain horizontal = chain_of(2, 1, {{{iv(0, 1), pt(0)}, 1}});
  CHECK(slice0_coord(horizontal, {1}, {q(0)}).empty());
  for (int j = 1; j <= 3; ++j) {
    const CoordChain r = staircase_chain(Coefficient::integer(1), j).body();
    // Generic height: off every dyadic breakpoint.
    const CoordChain s = slice0_coord(r, {1}, {q(1, 3)});
    REQUIRE(s.size() == 2);
    std::vector<Rational> coeffs;
    for (const auto& [cell, g] : s.terms()) coeffs.push_back(*g.as_rational());
    std::sort(coeffs.begin(), coeffs.end());
    CHECK(coeffs == std::vector<Rational>{-1, 1});
  }
}

TEST_CASE("slicing mass equals mass on coordinate chains") {
  CHECK(slicing_mass(CoordChain(2, 1, GroupDescriptor::integers())).total == 0);
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng rng(51, 1, i);
    const int n = 1 + static_cast<int>(i % 4);
    const CoordChain c = random_coord_chain(rng, n, static_cast<int>(rng.uniform_int(0, n)), rotating_group(i));
    CHECK(slicing_mass(c).total == mass(c));
  }
}

TEST_CASE("Riemann sums of slice masses") {
  Rng rng(53);
  const CoordChain c = random_coord_chain(rng, 2, 1, GroupDescriptor::integers(), ChainShape{4, 2, 3});
  double total = 0;
  const int m = 10000;
  for (int axis = 0; axis < 2; ++axis) {
    const Rational lo(-2), hi(2);
    const Rational h = (hi - lo) / m;
    for (int a = 0; a < m; ++a) {
      const Rational x = lo + (Rational(a) + Rational(1, 2)) * h + Rational(1, 1000003);
      total += to_double(mass(slice0_coord(c, {axis}, {x})) * h);
    }
  }
  const double exact = to_double(slicing_mass(c).total);
  CHECK(std::abs(total - exact) <= 0.01 * exact);
}

TEST_CASE("tensor slicing mass") {
  for (const Coefficient& g : {Coefficient::integer(1), Coefficient::integer(-4), Coefficient::residue(3, 7)}) {
    for (int j = 1; j <= 3; ++j) CHECK(slicing_mass_tensor(staircase_chain(g, j)).total == 2 * g.norm());
  }
  const TensorChain horizontal(Split{1, 1}, {1, 0}, chain_of(2, 1, {{{iv(0, 3), pt(1)}, 2}}));
  CHECK(slicing_mass_tensor(horizontal).total == 6);
}

TEST_CASE("typed slicing masses add up") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng rng(57, 1, i);
    const int n = 2 + static_cast<int>(i % 3);
    const int n1 = static_cast<int>(rng.uniform_int(1, n - 1));
    const Split split{n1, n - n1};
    const CoordChain c = random_coord_chain(rng, n, static_cast<int>(rng.uniform_int(0, n)), rotating_group(i));
    Rational sum = 0;
    for (const auto& [b, part] : jdecomp(c, split)) sum += slicing_mass_tensor(part).total;
    CHECK(sum == slicing_mass(c).total);
  }
}

TEST_CASE("pure-type identities") {
  for (std::uint64_t i = 0; i < 60; ++i) {
    Rng rng(59, 1, i);
    const Split s{1, 2};
    const Bidegree b{static_cast<int>(rng.uniform_int(0, 1)), static_cast<int>(rng.uniform_int(1, 2))};
    const TensorChain t = random_tensor_chain(rng, s, b, rotating_group(i));
    CHECK(slicing_mass_tensor(t).total == slicing_mass(t.body()).total);
    Rational parts = slicing_mass_tensor(d2(t)).total;
    if (b.k1 > 0) parts += slicing_mass_tensor(d1(t)).total;
    CHECK(parts == slicing_mass(boundary(t.body())).total);
    CHECK(n_norm_tensor(t).n_sl == n_norm(t.body()).n_sl);
  }
}

TEST_CASE("figure algebra examples") {
  Figure strip02 = Figure::box({Interval1D::closed(0, 2), Interval1D::all()});
  Figure strip13 = Figure::box({Interval1D::closed(1, 3), Interval1D::all()});
  CHECK(figures_equal(figure_algebra(strip02, strip13, FigureOp::intersect), Figure::box({Interval1D::closed(1, 2), Interval1D::all()})));
  const Figure comp = figure_algebra(strip02, strip02, FigureOp::complement);
  CHECK(figures_equal(figure_algebra(strip02, comp, FigureOp::unite), Figure::whole(2)));
  CHECK(figures_equal(figure_algebra(comp, comp, FigureOp::complement), strip02));
  CHECK(comp.contains({q(3), q(0)}));
  CHECK_FALSE(comp.contains({q(2), q(0)}));
  CHECK(figures_equal(figure_from_json(figure_to_json(comp)), comp));
}

TEST_CASE("restriction examples") {
  const Figure left = Figure::box({Interval1D::at_most(q(1, 2)), Interval1D::all()});
  CHECK(chains_equal(restrict(unit_square(), left, origin(2)), chain_of(2, 2, {{{iv(0, q(1, 2)), iv(0, 1)}, 1}})));
  CHECK(chains_equal(restrict(unit_square(), Figure::whole(2), origin(2)), unit_square()));
  CHECK(restrict(unit_square(), Figure(2), origin(2)).empty());
  // Lower-dimensional fragments are dropped.
  const Figure line = Figure::box({Interval1D::closed(q(1, 2), q(1, 2)), Interval1D::all()});
  CHECK(restrict(unit_square(), line, origin(2)).empty());
  // Translating the figure by x.
  CHECK(chains_equal(restrict(unit_square(), left, {q(1, 4), q(0)}), chain_of(2, 2, {{{iv(0, q(3, 4)), iv(0, 1)}, 1}})));
}

TEST_CASE("restriction is additive over disjoint figures") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng rng(61, 1, i);
    const int n = 1 + static_cast<int>(i % 3);
    const CoordChain c = random_coord_chain(rng, n, static_cast<int>(rng.uniform_int(0, n)), rotating_group(i));
    const Figure a = random_figure(rng, n, 2);
    const Figure b0 = random_figure(rng, n, 2);
    const Figure b = figure_algebra(b0, figure_algebra(a, a, FigureOp::complement), FigureOp::intersect);
    RationalVector x;
    for (int k = 0; k < n; ++k) x.push_back(rng.small_rational(4, 2));
    CHECK(chains_equal(restrict(c, figure_algebra(a, b, FigureOp::unite), x), add(restrict(c, a, x), restrict(c, b, x))));
    CHECK(mass(restrict(c, a, x)) <= mass(c));
  }
}
