#include <doctest.h>

#include <cstdlib>

#include "flatchain/errors.hpp"
#include "flatchain/flatnorm.hpp"
#include "flatchain/generators.hpp"
#include "flatchain/tensor.hpp"
#include "support.hpp"

using namespace testing;

namespace {

CoordChain square_boundary() { return boundary(unit_square()); }

CoordChain small_chain(std::uint64_t stream, std::uint64_t i, int n, int k) {
  Rng rng(71, stream, i);
  return random_coord_chain(rng, n, k, GroupDescriptor::integers(), ChainShape{2, 2, 1});
}

}  // namespace

TEST_CASE("induced complex of the unit square") {
  const InducedComplex cx = induced_complex({unit_square()}, 0, 1);
  CHECK(cx.breakpoints() == std::vector<std::vector<Rational>>{{0, 1}, {0, 1}});
  CHECK(cx.cell_count() == 9);
  CHECK(cx.cell_count(0) == 4);
  CHECK(cx.cell_count(1) == 4);
  CHECK(cx.cell_count(2) == 1);
  const InducedComplex fine = induced_complex({unit_square()}, 0, 2);
  CHECK(fine.breakpoints()[0] == std::vector<Rational>{0, q(1, 2), 1});
  const InducedComplex wide = induced_complex({unit_square()}, 1, 1);
  CHECK(wide.breakpoints()[1] == std::vector<Rational>{-1, 0, 1, 2});
}

TEST_CASE("cell counts against enumeration") {
  for (std::uint64_t i = 0; i < 20; ++i) {
    Rng rng(73, 1, i);
    const int n = 1 + static_cast<int>(i % 3);
    const CoordChain c = random_coord_chain(rng, n, static_cast<int>(rng.uniform_int(0, n)), GroupDescriptor::integers());
    const InducedComplex cx = induced_complex({c}, Rational(rng.uniform_int(0, 1)), static_cast<int>(rng.uniform_int(1, 2)));
    std::size_t product = 1;
    for (const auto& b : cx.breakpoints()) product *= 2 * (b.size() - 1) + 1;
    std::size_t enumerated = 0;
    std::vector<std::size_t> slots(static_cast<std::size_t>(n), 0);
    // Odometer over all slot tuples.
    while (true) {
      ++enumerated;
      CHECK(cx.flat_index(slots) == enumerated - 1);
      int a = 0;
      while (a < n && ++slots[static_cast<std::size_t>(a)] == cx.slots(a)) slots[static_cast<std::size_t>(a++)] = 0;
      if (a == n) break;
    }
    CHECK(cx.cell_count() == product);
    CHECK(enumerated == product);
    CHECK(cx.subordinate(c));
  }
}

TEST_CASE("flat norm of the square boundary") {
  const CoordChain c = square_boundary();
  const InducedComplex cx = induced_complex({c}, 0, 1);
  for (auto backend : {L1Backend::automatic, L1Backend::network, L1Backend::simplex, L1Backend::exhaustive}) {
    const FlatWitness w = flat_norm_grid(c, cx, {backend, {}});
    CHECK(w.value == 1);
    CHECK(w.r.empty());
    CHECK(chains_equal(w.s, unit_square()));
    CHECK(verify_witness(c, w));
  }
  CHECK(flat_norm_grid(CoordChain(2, 1, GroupDescriptor::integers()), cx).value == 0);
}

TEST_CASE("flat norm bounds the total coefficient of 0-chains") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng rng(75, 1, i);
    const int n = 1 + static_cast<int>(i % 2);
    const GroupDescriptor g = i % 3 == 2 ? GroupDescriptor::rationals() : GroupDescriptor::integers();
    const CoordChain c = random_coord_chain(rng, n, 0, g, ChainShape{3, 2, 2});
    const FlatWitness w = flat_norm_grid(c, induced_complex({c}, 1, 1));
    CHECK(chi(c).norm() <= w.value);
    CHECK(w.value <= mass(c));
  }
}

TEST_CASE("tensor flat norm") {
  const TensorChain sq(Split{1, 1}, {1, 1}, unit_square());
  const TensorChain t = d1(d2(sq));
  const InducedComplex cx = induced_complex({t.body()}, 0, 1);
  const TensorFlatWitness w = tensor_flat_norm_grid(t, cx);
  CHECK(w.value <= 1);
  CHECK(verify_tensor_witness(t, w));
  CHECK(tensor_flat_norm_grid(TensorChain(Split{1, 1}, {0, 0}, GroupDescriptor::integers()), cx).value == 0);
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng rng(77, 1, i);
    const TensorChain x = random_tensor_chain(rng, Split{1, 1}, {0, 0}, GroupDescriptor::integers(), ChainShape{3, 2, 2});
    const TensorFlatWitness tw = tensor_flat_norm_grid(x, induced_complex({x.body()}, 1, 1));
    CHECK(chi_tensor(x).norm() <= tw.value);
    CHECK(tw.value <= tensor_mass(x));
  }
}

TEST_CASE("flat distances") {
  const CoordChain a = square_boundary();
  CHECK(flat_dist(a, a, induced_complex({a}, 1, 1)) == 0);
  for (long inv : {4L, 8L, 16L}) {
    const Rational delta(1, inv);
    const CoordChain b = translate(a, RationalVector{delta, 0});
    // The two strips swept by the square have total area 2 delta.
    CHECK(flat_dist(a, b, induced_complex({a, b}, 0, 1)) <= 2 * delta);
  }
}

TEST_CASE("triangle inequality on a fixed complex") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    const CoordChain a = small_chain(2, i, 2, 1);
    const CoordChain b = small_chain(3, i, 2, 1);
    const CoordChain c = small_chain(4, i, 2, 1);
    const InducedComplex cx = induced_complex({a, b, c}, 1, 1);
    CHECK(flat_dist(a, c, cx) <= flat_dist(a, b, cx) + flat_dist(b, c, cx));
  }
}

TEST_CASE("backends agree and refinement never increases the value") {
  for (std::uint64_t i = 0; i < 40; ++i) {
    const int n = 1 + static_cast<int>(i % 2);
    const CoordChain c = small_chain(5, i, n, static_cast<int>(i % 2) * (n - 1));
    Rational prev = -1;
    for (int r : {1, 2, 4}) {
      const InducedComplex cx = induced_complex({c}, q(1, 2), r);
      const FlatWitness lp = flat_norm_grid(c, cx, {L1Backend::simplex, {}});
      const FlatWitness nw = flat_norm_grid(c, cx, {L1Backend::network, {}});
      CHECK(lp.value == nw.value);
      CHECK(verify_witness(c, lp));
      CHECK(verify_witness(c, nw));
      if (prev >= 0) CHECK(lp.value <= prev);
      prev = lp.value;
    }
  }
}

TEST_CASE("tensor flat norm does not exceed the flat norm") {
  for (std::uint64_t i = 0; i < 60; ++i) {
    Rng rng(79, 1, i);
    const Bidegree b = i % 2 ? Bidegree{1, 0} : Bidegree{0, 0};
    const TensorChain x = random_tensor_chain(rng, Split{1, 1}, b, GroupDescriptor::integers(), ChainShape{2, 2, 1});
    const InducedComplex cx = induced_complex({x.body()}, 1, 1);
    CHECK(tensor_flat_norm_grid(x, cx).value <= flat_norm_grid(x.body(), cx).value);
  }
}

TEST_CASE("N-norms") {
  const NNorm nn = n_norm(unit_square());
  CHECK(nn.n == 5);
  CHECK(nn.n_sl == 5);
  const TensorChain sq(Split{1, 1}, {1, 1}, unit_square(2));
  CHECK(n_norm_tensor(sq).n_sl == n_norm(unit_square(2)).n_sl);
}

TEST_CASE("backend selection and capability errors") {
  CHECK(parse_backend("network") == L1Backend::network);
  CHECK_THROWS(parse_backend("bogus"));
  setenv("FLATCHAIN_LP_BACKEND", "exhaustive", 1);
  CHECK(backend_from_env() == L1Backend::exhaustive);
  unsetenv("FLATCHAIN_LP_BACKEND");
  CHECK(backend_from_env() == L1Backend::automatic);

  const CoordChain big = chain_of(2, 1, {{{iv(0, 5), pt(0)}, 1}, {{pt(0), iv(0, 5)}, 1}});
  const InducedComplex cx = induced_complex({big}, 1, 2);
  CHECK_THROWS_AS(flat_norm_grid(big, cx, {L1Backend::exhaustive, {}}), CapabilityError);
  CoordChain chained(1, 0, GroupDescriptor::nested(1, 0, GroupDescriptor::integers()));
  chained.accumulate(CoordCell({pt(0)}), Coefficient::chain(chain_of(1, 0, {{{pt(2)}, 1}})));
  CHECK_THROWS_AS(flat_norm_grid(chained, induced_complex({chained}, 1, 1)), CapabilityError);
}
