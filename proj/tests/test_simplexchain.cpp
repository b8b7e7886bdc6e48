#include <doctest.h>

#include <cmath>

#include "flatchain/deform.hpp"
#include "flatchain/errors.hpp"
#include "flatchain/generators.hpp"
#include "flatchain/linalg.hpp"
#include "support.hpp"

using namespace testing;

namespace {

const std::vector<RationalVector> kTriangle{{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}};

// Area of a 2-simplex by orthonormalizing its edges in floating point.
double area_by_orthonormalization(const Simplex& s) {
  const auto e = s.edges();
  const std::size_t n = e[0].size();
  std::vector<double> u(n), v(n);
  double nu = 0;
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = to_double(e[0][i]);
    v[i] = to_double(e[1][i]);
    nu += u[i] * u[i];
  }
  nu = std::sqrt(nu);
  double dot = 0;
  for (std::size_t i = 0; i < n; ++i) dot += (u[i] / nu) * v[i];
  double h = 0;
  for (std::size_t i = 0; i < n; ++i) h += std::pow(v[i] - dot * u[i] / nu, 2);
  return nu * std::sqrt(h) / 2;
}

}  // namespace

TEST_CASE("simplex masses") {
  const SimplexMass m = s_mass(simplex_chain(kTriangle));
  REQUIRE(m.exact);
  CHECK(*m.exact == q(1, 2));
  const Counterexample ce = counterexample_build(Coefficient::integer(-3), 1, false);
  REQUIRE(ce.q_mass.exact);
  CHECK(*ce.q_mass.exact == q(3, 2));
  const SimplexMass irr = s_mass(simplex_chain({{q(0), q(0)}, {q(1), q(1)}}));
  CHECK_FALSE(irr.exact);
  CHECK(irr.value == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("squared area agrees with orthonormalization") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng rng(21, 1, i);
    const Simplex s = random_simplex(rng, 4, 2);
    const double a = area_by_orthonormalization(s);
    CHECK(std::abs(to_double(s.squared_volume()) - a * a) <= 1e-12 * std::max(1.0, a * a));
  }
}

TEST_CASE("simplicial boundary") {
  const SimplexChain b = s_boundary(simplex_chain(kTriangle));
  CHECK(b.terms().size() == 3);
  const SimplexChain tet = simplex_chain({{q(0), q(0), q(0)}, {q(1), q(0), q(0)}, {q(0), q(1), q(0)}, {q(0), q(0), q(1)}});
  CHECK(s_boundary(s_boundary(tet)).empty());
  // Hypotenuse of the triangle: the edge from (1,0) to (0,1), squared length 2.
  int found = 0;
  const SimplexChain b2 = s_boundary(simplex_chain(kTriangle, Coefficient::integer(2)));
  for (const auto& [s, g] : b2.terms()) {
    const auto& v = s.vertices();
    if (v[0][0] + v[0][1] == 1 && v[1][0] + v[1][1] == 1) {
      ++found;
      CHECK(s.squared_volume() == 2);
      CHECK(g.norm() == 2);
    }
  }
  CHECK(found == 1);
}

TEST_CASE("projected masses") {
  const Simplex seg({{q(0), q(0)}, {q(3), q(4)}});
  CHECK(proj_mass(seg, {0}) == 3);
  CHECK(proj_mass(seg, {1}) == 4);
  CHECK(proj_mass(Simplex(kTriangle), {0, 1}) == q(1, 2));
}

TEST_CASE("Cauchy-Binet through the coordinate minors") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    Rng rng(23, 1, i);
    const int n = 2 + static_cast<int>(i % 3);
    const int k = 1 + static_cast<int>(rng.uniform_int(0, n - 1));
    const Simplex s = random_simplex(rng, n, k);
    const Rational kf(factorial(k));
    Rational sum = 0;
    for (const auto& gamma : combinations(n, k)) {
      const Rational d = s.minor_det(gamma) / kf;
      sum += d * d;
    }
    CHECK(sum == s.squared_volume());
    CHECK(sum_squared_projections(s) == s.squared_volume());
  }
}

TEST_CASE("slicing mass of simplicial chains") {
  CHECK(s_slicing_mass(segment_34()) == 7);
  const CoordChain sq = unit_square();
  CHECK(s_slicing_mass(triangulate(sq)) == 1);
  const SimplexMass tm = s_mass(triangulate(sq));
  REQUIRE(tm.exact);
  CHECK(*tm.exact == 1);
}

TEST_CASE("slicing mass bounds on random cells") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng rng(29, 1, i);
    const Simplex s = random_simplex(rng, 4, 2);
    Rational sl = 0;
    for (const auto& gamma : combinations(4, 2)) sl += proj_mass(s, gamma);
    CHECK(s.squared_volume() <= sl * sl);
    CHECK(sl * sl <= 6 * s.squared_volume());
  }
}

TEST_CASE("0-slices of simplices") {
  const CoordChain p = s_slice0(segment_34(), {0}, {q(3, 2)});
  CHECK(chains_equal(p, chain_of(2, 0, {{{pt(q(3, 2)), pt(2)}, 1}})));
  CHECK(s_slice0(segment_34(), {0}, {q(4)}).empty());
  CHECK(s_slice0(segment_34(), {1}, {q(-1)}).empty());
}

TEST_CASE("Riemann sums of slice masses approach the slicing mass") {
  Rng rng(31);
  const Simplex s = random_simplex(rng, 3, 2);
  SimplexChain c(3, 2, GroupDescriptor::integers());
  c.add_term(s, Coefficient::integer(1));
  double total = 0;
  for (const auto& gamma : combinations(3, 2)) {
    Rational lo[2], hi[2];
    for (int a = 0; a < 2; ++a) {
      lo[a] = hi[a] = s.vertices()[0][static_cast<std::size_t>(gamma[static_cast<std::size_t>(a)])];
      for (const auto& v : s.vertices()) {
        lo[a] = std::min(lo[a], v[static_cast<std::size_t>(gamma[static_cast<std::size_t>(a)])]);
        hi[a] = std::max(hi[a], v[static_cast<std::size_t>(gamma[static_cast<std::size_t>(a)])]);
      }
    }
    const int m = 100;
    const Rational h0 = (hi[0] - lo[0]) / m, h1 = (hi[1] - lo[1]) / m;
    // Midpoints nudged off the lattice so no sample hits a vertex projection.
    const Rational nudge(1, 1000003);
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        const RationalVector x{lo[0] + (Rational(a) + Rational(1, 2)) * h0 + nudge, lo[1] + (Rational(b) + Rational(1, 2)) * h1 + nudge};
        total += to_double(mass(s_slice0(c, gamma, x)) * h0 * h1);
      }
    }
  }
  const double exact = to_double(s_slicing_mass(c));
  CHECK(std::abs(total - exact) <= 0.01 * exact);
}

TEST_CASE("Grassmann averages") {
  const Simplex full({{q(0), q(0)}, {q(2), q(0)}, {q(0), q(3)}});
  const GrassmannEstimate e = grassmann_avg(full, 500, 1);
  CHECK(e.estimate == doctest::Approx(3.0));
  CHECK(e.stderr_ == 0);

  const Simplex a({{q(0), q(0), q(0)}, {q(1), q(2), q(0)}});
  // Rational rotation of a: (x, y) -> (3x - 4y, 4x + 3y) / 5.
  const Simplex ra({{q(0), q(0), q(0)}, {q(3 - 8, 5), q(4 + 6, 5), q(0)}});
  const Simplex b({{q(1), q(0), q(0)}, {q(1), q(0), q(5)}});
  const auto ea = grassmann_avg(a, 10000, 11);
  const auto era = grassmann_avg(ra, 10000, 12);
  const auto eb = grassmann_avg(b, 10000, 13);
  auto close = [](const GrassmannEstimate& x, const GrassmannEstimate& y) {
    return std::abs(x.ratio - y.ratio) <= 3 * std::hypot(x.ratio_stderr, y.ratio_stderr);
  };
  CHECK(close(ea, era));
  CHECK(close(ea, eb));
}

TEST_CASE("overlapping simplices are detected") {
  SimplexChain c(2, 2, GroupDescriptor::integers());
  c.add_term(Simplex(kTriangle), Coefficient::integer(1));
  c.add_term(Simplex({{q(1, 4), q(1, 4)}, {q(1), q(0)}, {q(0), q(1)}}), Coefficient::integer(1));
  CHECK_THROWS_AS(require_null_intersections(c), PreconditionError);
  CHECK(null_intersection(Simplex(kTriangle), Simplex({{q(1), q(0)}, {q(0), q(1)}, {q(1), q(1)}})));
}
