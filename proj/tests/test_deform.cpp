#include <doctest.h>

#include <cmath>

#include "flatchain/deform.hpp"
#include "flatchain/errors.hpp"
#include "flatchain/generators.hpp"
#include "flatchain/linalg.hpp"
#include "flatchain/slicing.hpp"
#include "support.hpp"

using namespace testing;

namespace {

int inversion_parity(const std::vector<int>& seq) {
  int inv = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) inv += seq[i] > seq[j];
  }
  return inv % 2 ? -1 : 1;
}

RationalVector generic_shift(int n, const Rational& eps, std::uint64_t index) { return sample_shift(n, eps, 99, 1, index); }

bool is_grid_chain(const CoordChain& c, const Rational& eps) {
  for (const auto& [cell, g] : c.terms()) {
    for (const auto& f : cell.factors()) {
      const Rational a = f.lo() / eps, b = (f.is_interval() ? f.hi() : f.value()) / eps;
      if (a.get_den() != 1 || b.get_den() != 1) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("pairing sign is the parity of (face axes, complement)") {
  CHECK(pairing_sign({0}, 2) == 1);
  CHECK(pairing_sign({1}, 2) == -1);
  for (int n = 1; n <= 4; ++n) {
    for (int k = 0; k <= n; ++k) {
      for (const auto& gamma : combinations(n, k)) {
        std::vector<int> seq = gamma;
        for (int a = 0; a < n; ++a) {
          if (std::find(gamma.begin(), gamma.end(), a) == gamma.end()) seq.push_back(a);
        }
        CHECK(pairing_sign(gamma, n) == inversion_parity(seq));
      }
    }
  }
}

TEST_CASE("shift sampling") {
  for (std::uint64_t i = 0; i < 50; ++i) {
    const Rational eps(1, 3);
    const RationalVector y = sample_shift(3, eps, 5, 2, i);
    CHECK(y == sample_shift(3, eps, 5, 2, i));
    for (const auto& v : y) {
      CHECK(v >= 0);
      CHECK(v < eps);
      const Rational unit = v / eps * (1 << 20);
      CHECK(unit.get_den() == 1);
      CHECK(mpz_odd_p(unit.get_num().get_mpz_t()));
    }
  }
}

TEST_CASE("the (3,4)-segment deforms to 7 unit faces") {
  for (std::uint64_t i = 0; i < 20; ++i) {
    const CoordChain p = deform_P(segment_34(), GridSpec{1, generic_shift(2, 1, i)});
    CHECK(mass(p) == 7);
    CHECK(p.size() == 7);
    CHECK(is_grid_chain(p, 1));
  }
}

TEST_CASE("degenerate shifts are reported") {
  const CoordChain p = chain_of(1, 0, {{{pt(q(1, 2))}, 1}});
  CHECK_THROWS_AS(deform_P(p, GridSpec{1, {q(0)}}), DegenerateError);
  CHECK_NOTHROW(deform_P(p, GridSpec{1, {q(1, 8)}}));
}

TEST_CASE("P fixes grid chains") {
  for (std::uint64_t i = 0; i < 50; ++i) {
    Rng rng(81, 1, i);
    const int n = 1 + static_cast<int>(i % 3);
    const CoordChain base = random_coord_chain(rng, n, static_cast<int>(rng.uniform_int(0, n)), rotating_group(i), ChainShape{3, 3, 1});
    const Rational eps(1, 4);
    CoordChain c(n, base.degree(), base.descriptor());
    for (const auto& [cell, g] : base.terms()) {
      std::vector<AxisFactor> f;
      for (const auto& a : cell.factors()) f.push_back(a.is_interval() ? iv(a.lo() * eps, a.hi() * eps) : pt(a.value() * eps));
      c.accumulate(CoordCell(f), g);
    }
    c = canonicalize(c);
    CHECK(chains_equal(deform_P(c, GridSpec{eps, generic_shift(n, eps / 2, i)}), c));
    CHECK(chains_equal(deform_P(c, GridSpec{eps, RationalVector(static_cast<std::size_t>(n), Rational(0))}), c));
  }
}

TEST_CASE("P commutes with the boundary and stays near the support") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng rng(83, 1, i);
    const int n = 1 + static_cast<int>(i % 3);
    const CoordChain c = random_coord_chain(rng, n, static_cast<int>(rng.uniform_int(1, n)), rotating_group(i));
    const Rational eps(1, rng.uniform_int(1, 4));
    const GridSpec grid{eps, generic_shift(n, eps, i)};
    const CoordChain p = deform_P(c, grid);
    CHECK(chains_equal(boundary(p), deform_P(boundary(c), grid)));
    if (i < 50) CHECK(support_box(c).translated(grid.shift).inflated(eps / 2).contains(support_box(p)));
  }
  for (std::uint64_t i = 0; i < 40; ++i) {
    Rng rng(85, 1, i);
    const int n = 2 + static_cast<int>(i % 2);
    const SimplexChain s = simplex_chain(random_simplex(rng, n, 2).vertices());
    const GridSpec grid{q(1, 2), generic_shift(n, q(1, 2), i)};
    CHECK(chains_equal(boundary(deform_P(s, grid)), deform_P(s_boundary(s), grid)));
  }
}

TEST_CASE("Pi0 on tensor chains") {
  const Split sp{1, 1};
  for (std::uint64_t i = 0; i < 50; ++i) {
    Rng rng(87, 1, i);
    const CoordChain c = random_coord_chain(rng, 2, static_cast<int>(rng.uniform_int(0, 2)), rotating_group(i));
    const GridSpec grid{q(1, 2), generic_shift(2, q(1, 2), i)};
    const auto parts = jdecomp(c, sp);
    const auto deformed = jdecomp(deform_P(c, grid), sp);
    for (const auto& [b, part] : parts) CHECK(tensor_equal(deform_Pi0(part, grid), deformed.at(b)));
  }
  const TensorChain face(sp, {1, 1}, unit_square());
  CHECK(tensor_equal(deform_Pi0(face, GridSpec{1, generic_shift(2, q(1, 2), 0)}), face));
  CHECK(deform_Pi0(TensorChain(sp, {1, 0}, GroupDescriptor::integers()), GridSpec{1, {q(1, 3), q(1, 3)}}).empty());
}

TEST_CASE("exact shift averages") {
  CHECK(shift_average_mass_exact(segment_34(), 1).value == 7);
  CHECK(shift_average_mass_exact(segment_34(), q(1, 3)).value == 7);
  CHECK(shift_average_mass_exact(unit_square(3), 1).value == 3);
  CHECK_THROWS_AS(shift_average_mass_exact(simplex_chain({{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}}), 1), CapabilityError);
  // A single cell keeps its mass on average: each rounded side has the original expected length.
  for (std::uint64_t i = 0; i < 30; ++i) {
    Rng rng(89, 1, i);
    const int n = 1 + static_cast<int>(i % 3);
    const CoordChain c = random_coord_chain(rng, n, static_cast<int>(rng.uniform_int(0, n)), GroupDescriptor::integers(), ChainShape{1, 2, 3});
    for (const Rational& eps : {Rational(1), Rational(1, 2)}) CHECK(shift_average_mass_exact(c, eps).value == mass(c));
  }
  double worst = 0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    Rng rng(91, 1, i);
    const CoordChain c = random_coord_chain(rng, 2, 1, GroupDescriptor::integers());
    const AverageMass ex = shift_average_mass_exact(c, 1);
    CHECK(ex.value <= mass(c));
    worst = std::max(worst, to_double(ex.value / mass(c)));
    const AverageMass mc = shift_average_mass_mc(c, 1, 2000, 17 + i);
    CHECK(std::abs(mc.mean - to_double(ex.value)) <= 4 * mc.stderr_ + 1e-12);
  }
  MESSAGE("largest average/mass ratio on random 1-chains: " << worst);
}

TEST_CASE("staircase surrogate") {
  for (int steps : {1, 4, 16}) {
    const Staircase st = staircase_surrogate(Simplex({{q(0), q(0)}, {q(3), q(4)}}), Coefficient::integer(1), steps);
    CHECK(st.filling_mass == q(6, steps));
    CHECK(mass(st.stair) == 7);
    CHECK(chains_equal(boundary(st.stair), chain_of(2, 0, {{{pt(3), pt(4)}, 1}, {{pt(0), pt(0)}, -1}})));
    CHECK(s_mass(st.filling).value == doctest::Approx(6.0 / steps));
  }
}

TEST_CASE("convergence of grid faces") {
  const CoordChain face = unit_square();
  const auto rows = convergence_experiment(face, {Rational(1), Rational(1, 2)}, 4, 3, 1);
  const Rational bound = n_norm(face).n;  // n * eps / 2 * N with n = 2, eps <= 1
  for (const auto& r : rows) {
    for (const auto& v : r.values) CHECK(v <= r.eps * bound);
  }
  CHECK(chains_equal(deform_P(face, GridSpec{1, {q(0), q(0)}}), face));
}

TEST_CASE("Cauchy distances vanish for grid faces under small shifts") {
  const TensorChain face(Split{1, 1}, {1, 0}, chain_of(2, 1, {{{iv(0, 1), pt(0)}, 1}}));
  std::vector<RationalVector> shifts;
  for (std::uint64_t s = 0; s < 4; ++s) shifts.push_back(generic_shift(2, q(1, 64), s));
  const CauchyResult cr = cauchy_experiment(face, 4, shifts, 1);
  for (const auto& level : cr.tensor_values) {
    for (const auto& v : level) CHECK(v == 0);
  }
}

TEST_CASE("geometric fit") {
  const auto [ratio, c] = fit_geometric({8, 4, 2, 1});
  CHECK(ratio == doctest::Approx(0.5));
  CHECK(c == doctest::Approx(8));
}

TEST_CASE("counterexample staircases") {
  for (const Coefficient& g : {Coefficient::integer(1), Coefficient::integer(-2), Coefficient::rational(q(3, 2))}) {
    const Counterexample ce = counterexample_build(g, 4);
    REQUIRE(ce.q_mass.exact);
    CHECK(*ce.q_mass.exact == g.norm() / 2);
    for (const auto& lv : ce.levels) {
      const Rational scale = Rational(1) / Rational(Integer(1) << lv.j);
      const CoordChain diff = subtract(triangle_approximant(g, lv.j).body(), triangle_approximant(g, lv.j + 1).body());
      CHECK(lv.prism_mass == mass(diff));
      CHECK(lv.prism_mass == scale * g.norm() / 4);
      CHECK(lv.prism_identity);
      CHECK(tensor_equal(lv.r, staircase_chain(g, lv.j)));
      CHECK(lv.slicing_mass == 2 * g.norm());
      CHECK(lv.b_mass_right == 2 * g.norm() / scale);
      CHECK(lv.b_chi_antidiagonal == (-g).times(static_cast<long>(1) << lv.j));
      REQUIRE(lv.grid_distance);
      CHECK(*lv.grid_distance <= lv.prism_mass);
    }
  }
}
