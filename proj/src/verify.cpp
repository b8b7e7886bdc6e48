#include "flatchain/verify.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include "flatchain/deform.hpp"
#include "flatchain/errors.hpp"
#include "flatchain/flatnorm.hpp"
#include "flatchain/generators.hpp"
#include "flatchain/linalg.hpp"
#include "flatchain/serialize.hpp"
#include "flatchain/simplexchain.hpp"
#include "flatchain/slicing.hpp"
#include "flatchain/tensor.hpp"

namespace flatchain {

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

// Counts cases and keeps the first failure.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++cases_;
    if (ok) return;
    if (failures_ == 0) first_ = what;
    ++failures_;
  }

  Outcome done(const std::string& label, const std::string& extra = "") const {
    std::string d = std::to_string(cases_) + " " + label;
    if (!extra.empty()) d += "; " + extra;
    if (failures_ > 0) d += "; " + std::to_string(failures_) + " failed, first: " + first_;
    return {failures_ == 0 && cases_ > 0, d};
  }

 private:
  std::size_t cases_ = 0;
  std::size_t failures_ = 0;
  std::string first_;
};

std::uint64_t stream_of(const std::string& id) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : id) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

RationalVector add_vectors(RationalVector a, const RationalVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

RationalVector random_vector(Rng& rng, int n, long span = 2, long den = 4) {
  RationalVector v;
  for (int i = 0; i < n; ++i) v.push_back(rng.small_rational(span * den, den));
  return v;
}

class Runner {
 public:
  Runner(VerifyReport& report, const VerifyOptions& options) : report_(report), options_(options) {}

  CoordChain bd(const CoordChain& c) const { return options_.boundary ? options_.boundary(c) : boundary(c); }

  Rng rng(const std::string& id, std::uint64_t index) const { return Rng(options_.seed, stream_of(id), index); }
  std::uint64_t seed(const std::string& id) const { return derive_seed(options_.seed, stream_of(id)); }

  void check(const std::string& id, const std::string& module, const std::string& citation,
             const std::function<Outcome()>& fn, bool gated = true, double time_limit = 0) {
    CheckResult r;
    r.id = id;
    r.module = module;
    r.citation = citation;
    r.gated = gated;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Outcome o = fn();
      r.passed = o.ok;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (time_limit > 0 && r.seconds >= time_limit) {
      r.passed = false;
      r.detail += "; runtime gate of " + fmt(time_limit) + " s exceeded";
    }
    report_.checks.push_back(std::move(r));
  }

 private:
  VerifyReport& report_;
  const VerifyOptions& options_;
};

// ---------------------------------------------------------------- coeff

void coeff_checks(Runner& run) {
  run.check("coeff.norm_axioms", "coeff", "|0| = 0, |g| > 0 for g != 0, |-g| = |g|, |g + h| <= |g| + |h|", [&] {
    Tally t;
    const std::vector<GroupDescriptor> groups{GroupDescriptor::integers(), GroupDescriptor::residues(5),
                                              GroupDescriptor::residues(2), GroupDescriptor::rationals(),
                                              GroupDescriptor::nested(2, 1, GroupDescriptor::integers())};
    for (std::size_t i = 0; i < 250; ++i) {
      const auto& g = groups[i % groups.size()];
      Rng rng = run.rng("coeff.norm_axioms", i);
      const Coefficient a = random_coefficient(rng, g);
      const Coefficient b = rng.coin() ? random_coefficient(rng, g) : -a;
      const std::string c = g.to_string() + " case " + std::to_string(i);
      t.expect(Coefficient::zero(g).norm() == 0, c + ": zero norm");
      t.expect(a.norm() > 0, c + ": positivity");
      t.expect((-a).norm() == a.norm(), c + ": symmetry");
      t.expect((a + b).norm() <= a.norm() + b.norm(), c + ": triangle inequality");
      t.expect((a + b).is_zero() == ((a + b).norm() == 0), c + ": definiteness");
    }
    return t.done("cases over Z, Z/5, Z/2, Q and chain coefficients");
  });
  run.check("coeff.group_laws", "coeff", "coefficients form an abelian group", [&] {
    Tally t;
    for (std::size_t i = 0; i < 200; ++i) {
      const GroupDescriptor g = rotating_group(i);
      Rng rng = run.rng("coeff.group_laws", i);
      const auto a = random_coefficient(rng, g);
      const auto b = random_coefficient(rng, g);
      const auto c = random_coefficient(rng, g);
      t.expect((a + b) + c == a + (b + c), "associativity");
      t.expect(a + b == b + a, "commutativity");
      t.expect((a + (-a)).is_zero(), "inverse");
      t.expect(a.times(3) == a + a + a, "integer multiples");
    }
    return t.done("cases");
  });
  run.check("coeff.residue_norm", "coeff", "|r| on Z/m is the distance from r to mZ", [&] {
    Tally t;
    for (std::int64_t m = 2; m <= 9; ++m) {
      for (std::int64_t r = 0; r < m; ++r) {
        std::int64_t best = m;
        for (std::int64_t q = -1; q <= 1; ++q) best = std::min<std::int64_t>(best, std::llabs(r - q * m));
        t.expect(Coefficient::residue(r, m).norm() == Rational(best), std::to_string(r) + " mod " + std::to_string(m));
      }
    }
    return t.done("residues");
  });
}

// ---------------------------------------------------------------- cubchain

void cubchain_checks(Runner& run) {
  run.check("cubchain.boundary_squared", "cubchain", "boundary of a boundary vanishes", [&] {
    Tally t;
    for (std::size_t i = 0; i < 200; ++i) {
      Rng rng = run.rng("cubchain.boundary_squared", i);
      const int n = 2 + static_cast<int>(i % 3);
      const int k = static_cast<int>(rng.uniform_int(2, n));
      const CoordChain c = random_coord_chain(rng, n, k, rotating_group(i));
      t.expect(run.bd(run.bd(c)).empty(), "case " + std::to_string(i) + ": " + to_string(c));
    }
    return t.done("chains");
  });
  run.check("cubchain.canonical_form", "cubchain", "canonical form is idempotent and chain equality is exact", [&] {
    Tally t;
    for (std::size_t i = 0; i < 200; ++i) {
      Rng rng = run.rng("cubchain.canonical_form", i);
      const int n = 1 + static_cast<int>(i % 4);
      const int k = static_cast<int>(rng.uniform_int(0, n));
      const auto g = rotating_group(i);
      const CoordChain a = random_coord_chain(rng, n, k, g);
      const CoordChain b = random_coord_chain(rng, n, k, g);
      const CoordChain ab = add(a, b);
      t.expect(chains_equal(canonicalize(ab), ab), "idempotent");
      t.expect(subtract(a, a).empty(), "a - a");
      t.expect(chains_equal(add(a, b), add(b, a)), "commutative");
      t.expect(chains_equal(subtract(ab, b), a), "cancellation");
      t.expect(mass(ab) <= mass(a) + mass(b), "mass subadditive");
      t.expect(mass(negate(a)) == mass(a), "mass symmetric");
    }
    return t.done("chain pairs");
  });
  run.check("cubchain.translate_boundary", "cubchain", "translation commutes with the boundary", [&] {
    Tally t;
    for (std::size_t i = 0; i < 200; ++i) {
      Rng rng = run.rng("cubchain.translate_boundary", i);
      const int n = 1 + static_cast<int>(i % 4);
      const int k = static_cast<int>(rng.uniform_int(1, n));
      const CoordChain c = random_coord_chain(rng, n, k, rotating_group(i));
      const RationalVector y = random_vector(rng, n);
      t.expect(chains_equal(translate(run.bd(c), y), run.bd(translate(c, y))), "case " + std::to_string(i));
      t.expect(mass(translate(c, y)) == mass(c), "mass invariant");
    }
    return t.done("chains");
  });
  run.check("cubchain.unit_square", "cubchain", "unit square has mass 1 and boundary mass 4", [&] {
    CoordChain sq(2, 2, GroupDescriptor::integers());
    sq.accumulate(CoordCell({AxisFactor::interval(0, 1), AxisFactor::interval(0, 1)}), Coefficient::integer(1));
    const Rational m = mass(sq);
    const Rational b = mass(boundary(sq));
    return Outcome{m == 1 && b == 4, "mass " + to_string(m) + ", boundary mass " + to_string(b)};
  });
}

// ---------------------------------------------------------------- simplexchain

Outcome mass_vs_slicing(Runner& run, const std::string& id, int n, int k, std::size_t cases) {
  Tally t;
  const Rational bound(binomial(n, k));
  for (std::size_t i = 0; i < cases; ++i) {
    Rng rng = run.rng(id, i);
    const Simplex s = random_simplex(rng, n, k);
    const Rational m2 = s.squared_volume();
    Rational sl = 0;
    for (const auto& gamma : combinations(n, k)) sl += proj_mass(s, gamma);
    const Rational sl2 = sl * sl;
    t.expect(m2 <= sl2, "M <= M_Sl, case " + std::to_string(i));
    t.expect(sl2 <= bound * m2, "M_Sl <= sqrt(C(n,k)) M, case " + std::to_string(i));
    t.expect(sum_squared_projections(s) == m2, "Cauchy-Binet, case " + std::to_string(i));
  }
  // Simplices in a coordinate plane have M_Sl = M.
  for (std::size_t i = 0; i < 20; ++i) {
    Rng rng = run.rng(id + ".plane", i);
    const Simplex base = random_simplex(rng, k, k);
    std::vector<int> axes(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) axes[static_cast<std::size_t>(a)] = a;
    std::shuffle(axes.begin(), axes.end(), rng.engine());
    const RationalVector offset = random_vector(rng, n);
    std::vector<RationalVector> verts;
    for (const auto& v : base.vertices()) {
      RationalVector p = offset;
      for (int a = 0; a < k; ++a) p[static_cast<std::size_t>(axes[static_cast<std::size_t>(a)])] = v[static_cast<std::size_t>(a)];
      verts.push_back(p);
    }
    const Simplex s(verts);
    Rational sl = 0;
    for (const auto& gamma : combinations(n, k)) sl += proj_mass(s, gamma);
    t.expect(sl * sl == s.squared_volume(), "coordinate-plane equality, case " + std::to_string(i));
  }
  return t.done("simplices", "n=" + std::to_string(n) + ", k=" + std::to_string(k));
}

void simplexchain_checks(Runner& run) {
  run.check("simplexchain.boundary_squared", "simplexchain", "boundary of a boundary vanishes on simplicial chains", [&] {
    Tally t;
    for (std::size_t i = 0; i < 100; ++i) {
      Rng rng = run.rng("simplexchain.boundary_squared", i);
      const int n = 2 + static_cast<int>(i % 3);
      const int k = static_cast<int>(rng.uniform_int(2, n));
      SimplexChain c(n, k, GroupDescriptor::integers());
      c.add_term(random_simplex(rng, n, k), random_coefficient(rng, GroupDescriptor::integers()));
      c.add_term(random_simplex(rng, n, k), random_coefficient(rng, GroupDescriptor::integers()));
      t.expect(s_boundary(s_boundary(c)).empty(), "case " + std::to_string(i));
    }
    return t.done("chains");
  });
  run.check("simplexchain.mass_vs_slicing", "simplexchain", "M <= M_Sl <= sqrt(C(n,k)) M with equality on coordinate planes",
            [&] { return mass_vs_slicing(run, "simplexchain.mass_vs_slicing", 3, 2, 150); });
  run.check("simplexchain.triangulation_mass", "simplexchain", "Kuhn triangulation preserves mass exactly", [&] {
    Tally t;
    for (std::size_t i = 0; i < 60; ++i) {
      Rng rng = run.rng("simplexchain.triangulation_mass", i);
      const int n = 1 + static_cast<int>(i % 3);
      const int k = static_cast<int>(rng.uniform_int(1, n));
      CoordChain c(n, k, GroupDescriptor::integers());
      std::vector<int> axes(static_cast<std::size_t>(n));
      for (int a = 0; a < n; ++a) axes[static_cast<std::size_t>(a)] = a;
      std::shuffle(axes.begin(), axes.end(), rng.engine());
      axes.resize(static_cast<std::size_t>(k));
      std::sort(axes.begin(), axes.end());
      c.accumulate(random_cell(rng, n, axes), Coefficient::integer(rng.uniform_int(1, 3)));
      const SimplexMass sm = s_mass(triangulate(c));
      t.expect(sm.exact && *sm.exact == mass(c), "case " + std::to_string(i));
    }
    return t.done("cells");
  });
  run.check("simplexchain.slice_count", "simplexchain", "0-slices of a simplex carry the orientation sign of its projection", [&] {
    Tally t;
    for (std::size_t i = 0; i < 60; ++i) {
      Rng rng = run.rng("simplexchain.slice_count", i);
      const int n = 2 + static_cast<int>(i % 2);
      const int k = 1;
      SimplexChain c(n, k, GroupDescriptor::integers());
      const Simplex s = random_simplex(rng, n, k);
      c.add_term(s, Coefficient::integer(1));
      for (const auto& gamma : combinations(n, k)) {
        const Rational det = s.minor_det(gamma);
        const Rational mid = (s.vertices()[0][static_cast<std::size_t>(gamma[0])] + s.vertices()[1][static_cast<std::size_t>(gamma[0])]) / 2;
        const CoordChain sl = s_slice0(c, gamma, {mid});
        const Coefficient x = chi(sl);
        const Rational expect = det == 0 ? Rational(0) : Rational(sign(det));
        t.expect(det == 0 || *x.as_rational() == expect, "case " + std::to_string(i));
      }
    }
    return t.done("segments");
  });
}

// ---------------------------------------------------------------- tensor

Split random_split(Rng& rng, int n) {
  const int n1 = static_cast<int>(rng.uniform_int(1, n - 1));
  return Split{n1, n - n1};
}

Bidegree random_bidegree(Rng& rng, const Split& s, int min_k1 = 0, int min_k2 = 0) {
  const int k1 = static_cast<int>(rng.uniform_int(min_k1, s.n1));
  const int k2 = static_cast<int>(rng.uniform_int(min_k2, s.n2));
  return Bidegree{k1, k2};
}

void tensor_checks(Runner& run) {
  run.check("tensor.partial_boundaries", "tensor", "d1 d1 = 0, d2 d2 = 0, d1 d2 = -d2 d1", [&] {
    Tally t;
    for (std::size_t i = 0; i < 150; ++i) {
      Rng rng = run.rng("tensor.partial_boundaries", i);
      const int n = 2 + static_cast<int>(i % 3);
      const Split s = random_split(rng, n);
      const Bidegree b = random_bidegree(rng, s);
      const TensorChain x = random_tensor_chain(rng, s, b, rotating_group(i));
      const std::string c = "case " + std::to_string(i);
      if (b.k1 >= 2) t.expect(d1(d1(x)).empty(), c + ": d1 d1");
      if (b.k2 >= 2) t.expect(d2(d2(x)).empty(), c + ": d2 d2");
      if (b.k1 >= 1 && b.k2 >= 1) t.expect(tensor_add(d1(d2(x)), d2(d1(x))).empty(), c + ": anticommute");
    }
    return t.done("tensor chains");
  });
  run.check("tensor.boundary_split", "tensor", "the boundary of a pure-type chain is d1 + d2", [&] {
    Tally t;
    for (std::size_t i = 0; i < 150; ++i) {
      Rng rng = run.rng("tensor.boundary_split", i);
      const int n = 2 + static_cast<int>(i % 3);
      const Split s = random_split(rng, n);
      Bidegree b = random_bidegree(rng, s);
      if (b.total() == 0) b.k1 = 1;
      const TensorChain x = random_tensor_chain(rng, s, b, rotating_group(i));
      CoordChain sum(n, b.total() - 1, x.body().descriptor());
      if (b.k1 > 0) sum = add(sum, d1(x).body());
      if (b.k2 > 0) sum = add(sum, d2(x).body());
      t.expect(chains_equal(boundary(x.body()), sum), "case " + std::to_string(i));
    }
    return t.done("tensor chains");
  });
  run.check("tensor.iota", "tensor", "iota is a mass isometry and iota_inv inverts it", [&] {
    Tally t;
    for (std::size_t i = 0; i < 150; ++i) {
      Rng rng = run.rng("tensor.iota", i);
      const int n = 2 + static_cast<int>(i % 3);
      const Split s = random_split(rng, n);
      const Bidegree b = random_bidegree(rng, s);
      const TensorChain x = random_tensor_chain(rng, s, b, rotating_group(i));
      const CoordChain y = iota(x);
      t.expect(mass(y) == tensor_mass(x), "mass, case " + std::to_string(i));
      t.expect(tensor_equal(iota_inv(y, s), x), "round trip, case " + std::to_string(i));
    }
    return t.done("tensor chains");
  });
  run.check("tensor.chi", "tensor", "chi of a (0,0)-chain is its total coefficient", [&] {
    Tally t;
    for (std::size_t i = 0; i < 100; ++i) {
      Rng rng = run.rng("tensor.chi", i);
      const int n = 2 + static_cast<int>(i % 3);
      const Split s = random_split(rng, n);
      const TensorChain x = random_tensor_chain(rng, s, {0, 0}, rotating_group(i));
      Coefficient total = Coefficient::zero(x.body().descriptor());
      for (const auto& [cell, g] : x.body().terms()) total += g;
      t.expect(chi_tensor(x) == total, "case " + std::to_string(i));
    }
    return t.done("(0,0)-chains");
  });
}

// ---------------------------------------------------------------- slicing

void slicing_checks(Runner& run) {
  run.check("slicing.mass_equals_slicing_mass", "slicing", "M_Sl = M and N_Sl = N on coordinate chains", [&] {
    Tally t;
    for (std::size_t i = 0; i < 150; ++i) {
      Rng rng = run.rng("slicing.mass_equals_slicing_mass", i);
      const int n = 1 + static_cast<int>(i % 4);
      const int k = static_cast<int>(rng.uniform_int(0, n));
      const CoordChain c = random_coord_chain(rng, n, k, rotating_group(i));
      t.expect(slicing_mass(c).total == mass(c), "mass, case " + std::to_string(i));
      const NNorm nn = n_norm(c);
      t.expect(nn.n == nn.n_sl, "N-norm, case " + std::to_string(i));
    }
    return t.done("chains");
  });
  run.check("slicing.slice_count", "slicing", "integrating slice masses over each plane family recovers M_Sl", [&] {
    Tally t;
    for (std::size_t i = 0; i < 60; ++i) {
      Rng rng = run.rng("slicing.slice_count", i);
      const int n = 1 + static_cast<int>(i % 3);
      const int k = 1;
      const CoordChain c = random_coord_chain(rng, n, k, GroupDescriptor::integers());
      // Per axis, integrate the 0-slice mass over a fine partition by breakpoints.
      Rational total = 0;
      for (int ax = 0; ax < n; ++ax) {
        std::vector<Rational> b;
        for (const auto& [cell, g] : c.terms()) {
          if (cell.factor(ax).is_interval()) {
            b.push_back(cell.factor(ax).lo());
            b.push_back(cell.factor(ax).hi());
          }
        }
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        for (std::size_t j = 0; j + 1 < b.size(); ++j) {
          const Rational mid = (b[j] + b[j + 1]) / 2;
          total += (b[j + 1] - b[j]) * mass(slice0_coord(c, {ax}, {mid}));
        }
      }
      t.expect(total == slicing_mass(c).total, "case " + std::to_string(i));
    }
    return t.done("1-chains");
  });
  run.check("slicing.jdecomp_sum", "slicing", "slicing masses of the typed components add up to M_Sl", [&] {
    Tally t;
    for (std::size_t i = 0; i < 150; ++i) {
      Rng rng = run.rng("slicing.jdecomp_sum", i);
      const int n = 2 + static_cast<int>(i % 3);
      const Split s = random_split(rng, n);
      const int k = static_cast<int>(rng.uniform_int(0, n));
      const CoordChain c = random_coord_chain(rng, n, k, rotating_group(i));
      Rational sum = 0;
      CoordChain whole(n, k, c.descriptor());
      for (const auto& [b, part] : jdecomp(c, s)) {
        sum += slicing_mass_tensor(part).total;
        whole = add(whole, part.body());
      }
      t.expect(sum == slicing_mass(c).total, "sum rule, case " + std::to_string(i));
      t.expect(chains_equal(whole, c), "components reassemble, case " + std::to_string(i));
    }
    return t.done("chains");
  });
  run.check("slicing.restrict", "slicing",
            "restriction: identity on R^n, additive over disjoint figures, intersections compose, translation, mass",
            [&] {
              Tally t;
              for (std::size_t i = 0; i < 150; ++i) {
                Rng rng = run.rng("slicing.restrict", i);
                const int n = 1 + static_cast<int>(i % 3);
                const int k = static_cast<int>(rng.uniform_int(0, n));
                const CoordChain c = random_coord_chain(rng, n, k, rotating_group(i));
                const Figure j = random_figure(rng, n, 2);
                const Figure jt = random_figure(rng, n, 1);
                const RationalVector x = random_vector(rng, n);
                const RationalVector y = random_vector(rng, n);
                const std::string tag = "case " + std::to_string(i);
                const CoordChain r = restrict(c, j, x);
                t.expect(chains_equal(restrict(c, Figure::whole(n), x), c), tag + ": whole space");
                const Figure jc = figure_algebra(j, j, FigureOp::complement);
                t.expect(chains_equal(add(r, restrict(c, jc, x)), c), tag + ": additivity over J and its complement");
                const Figure both = figure_algebra(j, jt, FigureOp::intersect);
                t.expect(chains_equal(restrict(r, jt, x), restrict(c, both, x)), tag + ": intersection");
                t.expect(chains_equal(restrict(c, j.translated(y), x), restrict(c, j, add_vectors(x, y))), tag + ": shifted figure");
                t.expect(chains_equal(translate(r, y), restrict(translate(c, y), j, add_vectors(x, y))), tag + ": translation");
                t.expect(mass(r) <= mass(c), tag + ": mass");
                if (n >= 2) {
                  const Split s{1, n - 1};
                  for (const auto& [b, part] : jdecomp(c, s)) {
                    const auto rj = jdecomp(r, s).at(b);
                    t.expect(chains_equal(restrict(part.body(), j, x), rj.body()), tag + ": commutes with jdecomp");
                  }
                }
              }
              return t.done("chain/figure cases");
            });
  run.check("slicing.figure_algebra", "slicing", "figures form a Boolean algebra", [&] {
    Tally t;
    for (std::size_t i = 0; i < 100; ++i) {
      Rng rng = run.rng("slicing.figure_algebra", i);
      const int n = 1 + static_cast<int>(i % 3);
      const Figure a = random_figure(rng, n, 2);
      const Figure b = random_figure(rng, n, 2);
      const Figure ca = figure_algebra(a, a, FigureOp::complement);
      const Figure cb = figure_algebra(b, b, FigureOp::complement);
      t.expect(figures_equal(figure_algebra(ca, ca, FigureOp::complement), a), "double complement");
      const Figure lhs = figure_algebra(figure_algebra(a, b, FigureOp::unite), a, FigureOp::complement);
      t.expect(figures_equal(figure_algebra(lhs, lhs, FigureOp::complement), figure_algebra(a, b, FigureOp::unite)), "complement of union");
      const Figure u = figure_algebra(a, b, FigureOp::unite);
      const Figure cu = figure_algebra(u, u, FigureOp::complement);
      t.expect(figures_equal(cu, figure_algebra(ca, cb, FigureOp::intersect)), "De Morgan");
      t.expect(figures_equal(canonical_figure(a), a), "canonical form");
    }
    return t.done("figure pairs");
  });
}

// ---------------------------------------------------------------- flatnorm

CoordChain unit_square_boundary() {
  CoordChain sq(2, 2, GroupDescriptor::integers());
  sq.accumulate(CoordCell({AxisFactor::interval(0, 1), AxisFactor::interval(0, 1)}), Coefficient::integer(1));
  return boundary(sq);
}

// Small integer chains whose induced complex has at most `max_cols` (k+1)-cells.
struct TinyCase {
  CoordChain c;
  InducedComplex cx;
};

std::vector<TinyCase> tiny_cases(Runner& run, const std::string& id, std::size_t count, std::size_t max_cols) {
  std::vector<TinyCase> out;
  for (std::size_t i = 0; out.size() < count && i < 50 * count; ++i) {
    Rng rng = run.rng(id, i);
    const int n = 1 + static_cast<int>(rng.uniform_int(0, 1));
    const int k = static_cast<int>(rng.uniform_int(0, n - 1));
    CoordChain c(n, k, GroupDescriptor::integers());
    const long terms = rng.uniform_int(1, 3);
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) pool[static_cast<std::size_t>(a)] = a;
    for (long t = 0; t < terms; ++t) {
      std::shuffle(pool.begin(), pool.end(), rng.engine());
      std::vector<int> axes(pool.begin(), pool.begin() + k);
      c.accumulate(random_cell(rng, n, axes, ChainShape{1, 2, 1}), Coefficient::integer(rng.coin() ? 1 : -1));
    }
    c = canonicalize(c);
    if (c.empty()) continue;
    const InducedComplex cx = induced_complex({c}, Rational(rng.uniform_int(0, 1)), static_cast<int>(rng.uniform_int(1, 2)));
    const std::size_t cols = cx.cell_count(k + 1);
    if (cols == 0 || cols > max_cols) continue;
    out.push_back({c, cx});
  }
  return out;
}

Outcome solver_soundness(Runner& run, const std::string& id, std::size_t cases) {
  Tally t;
  std::size_t witnesses = 0;
  for (const auto& tc : tiny_cases(run, id, cases, 12)) {
    const std::string tag = to_string(tc.c);
    const FlatWitness lp = flat_norm_grid(tc.c, tc.cx, {L1Backend::simplex, {}});
    const FlatWitness ex = flat_norm_grid(tc.c, tc.cx, {L1Backend::exhaustive, {}});
    const FlatWitness au = flat_norm_grid(tc.c, tc.cx, {L1Backend::automatic, {}});
    t.expect(ex.value == lp.value, tag + ": exhaustive " + to_string(ex.value) + " vs LP " + to_string(lp.value));
    t.expect(au.value == lp.value, tag + ": automatic " + to_string(au.value) + " vs LP " + to_string(lp.value));
    for (const auto* w : {&lp, &ex, &au}) {
      t.expect(verify_witness(tc.c, *w), tag + ": witness identity (" + w->method + ")");
      ++witnesses;
    }
  }
  // Larger chains: witnesses and refinement monotonicity.
  for (std::size_t i = 0; i < 40; ++i) {
    Rng rng = run.rng(id + ".refine", i);
    const int n = 1 + static_cast<int>(i % 2);
    const int k = static_cast<int>(rng.uniform_int(0, n - 1));
    const CoordChain c = random_coord_chain(rng, n, k, i % 2 ? GroupDescriptor::integers() : GroupDescriptor::rationals(),
                                            ChainShape{3, 2, 2});
    Rational prev = -1;
    for (int r : {1, 2, 4}) {
      const FlatWitness w = flat_norm_grid(c, induced_complex({c}, Rational(1, 2), r));
      t.expect(verify_witness(c, w), "refinement witness");
      ++witnesses;
      t.expect(prev < 0 || w.value <= prev, "refinement monotone: " + to_string(c));
      prev = w.value;
    }
  }
  return t.done("checks", std::to_string(witnesses) + " witnesses re-verified");
}

Outcome chi_bounds(Runner& run, const std::string& id, std::size_t cases) {
  Tally t;
  for (std::size_t i = 0; i < cases; ++i) {
    Rng rng = run.rng(id, i);
    const int n = 1 + static_cast<int>(i % 2);
    const GroupDescriptor g = n == 1 ? rotating_group(i) : (i % 4 < 2 ? GroupDescriptor::integers() : GroupDescriptor::rationals());
    const CoordChain c = random_coord_chain(rng, n, 0, g, ChainShape{3, 2, 2});
    const FlatWitness w = flat_norm_grid(c, induced_complex({c}, Rational(1), 1));
    t.expect(chi(c).norm() <= w.value, "0-chain " + to_string(c));
  }
  for (std::size_t i = 0; i < cases; ++i) {
    Rng rng = run.rng(id + ".tensor", i);
    const GroupDescriptor g = i % 2 ? GroupDescriptor::integers() : GroupDescriptor::rationals();
    const TensorChain x = random_tensor_chain(rng, {1, 1}, {0, 0}, g, ChainShape{3, 2, 2});
    const TensorFlatWitness w = tensor_flat_norm_grid(x, induced_complex({x.body()}, Rational(1), 1));
    t.expect(chi_tensor(x).norm() <= w.value, "(0,0)-chain " + to_string(x.body()));
    t.expect(verify_tensor_witness(x, w), "tensor witness");
  }
  return t.done("checks");
}

void flatnorm_checks(Runner& run) {
  run.check("flatnorm.unit_square_boundary", "flatnorm", "the boundary of the unit square has flat norm 1", [&] {
    const CoordChain c = unit_square_boundary();
    const auto cx = induced_complex({c}, Rational(0), 1);
    std::string d;
    bool ok = true;
    for (auto b : {L1Backend::network, L1Backend::simplex, L1Backend::exhaustive}) {
      const FlatWitness w = flat_norm_grid(c, cx, {b, {}});
      ok = ok && w.value == 1 && verify_witness(c, w);
      d += (d.empty() ? "" : ", ") + w.method + " " + to_string(w.value);
    }
    return Outcome{ok, d};
  });
  run.check("flatnorm.cell_count", "flatnorm", "induced complex cell counts match enumeration", [&] {
    Tally t;
    for (std::size_t i = 0; i < 40; ++i) {
      Rng rng = run.rng("flatnorm.cell_count", i);
      const int n = 1 + static_cast<int>(i % 3);
      const CoordChain c = random_coord_chain(rng, n, static_cast<int>(rng.uniform_int(0, n)), GroupDescriptor::integers(),
                                              ChainShape{2, 2, 1});
      const InducedComplex cx = induced_complex({c}, Rational(rng.uniform_int(0, 1)), static_cast<int>(rng.uniform_int(1, 2)));
      std::vector<std::size_t> by_dim(static_cast<std::size_t>(n) + 1, 0);
      for (std::size_t f = 0; f < cx.cell_count(); ++f) ++by_dim[static_cast<std::size_t>(cx.cell_at(cx.slot_tuple(f)).dimension())];
      std::size_t formula = 1;
      for (const auto& b : cx.breakpoints()) formula *= 2 * (b.size() - 1) + 1;
      t.expect(formula == cx.cell_count(), "total");
      for (int d = 0; d <= n; ++d) t.expect(by_dim[static_cast<std::size_t>(d)] == cx.cell_count(d), "degree " + std::to_string(d));
      t.expect(cx.subordinate(c), "subordinate");
    }
    return t.done("complexes");
  });
  run.check("flatnorm.solver_soundness", "flatnorm", "witnesses re-verify; exhaustive = LP on tiny complexes; refinement monotone",
            [&] { return solver_soundness(run, "flatnorm.solver_soundness", 60); });
  run.check("flatnorm.chi_bound", "flatnorm", "|chi(A)| <= F(A) and |chi^(t)| <= F^(t)",
            [&] { return chi_bounds(run, "flatnorm.chi_bound", 40); });
  run.check("flatnorm.tensor_le_flat", "flatnorm", "tensor flat norm <= flat norm of the body", [&] {
    Tally t;
    for (std::size_t i = 0; i < 60; ++i) {
      Rng rng = run.rng("flatnorm.tensor_le_flat", i);
      const Bidegree b = i % 3 == 0 ? Bidegree{0, 0} : (i % 3 == 1 ? Bidegree{1, 0} : Bidegree{0, 1});
      const TensorChain x = random_tensor_chain(rng, {1, 1}, b, GroupDescriptor::integers(), ChainShape{2, 2, 1});
      const auto cx = induced_complex({x.body()}, Rational(1), 1);
      const TensorFlatWitness tw = tensor_flat_norm_grid(x, cx);
      const FlatWitness fw = flat_norm_grid(x.body(), cx);
      t.expect(tw.value <= fw.value, "case " + std::to_string(i) + ": " + to_string(tw.value) + " > " + to_string(fw.value));
      t.expect(verify_tensor_witness(x, tw), "tensor witness");
      t.expect(tw.value <= tensor_mass(x), "bounded by mass");
    }
    return t.done("tensor chains");
  });
}

// ---------------------------------------------------------------- deform

// Independent oracle: on coordinate cells P rounds every coordinate to the nearest grid point.
CoordChain rounding_oracle(const CoordChain& c, const GridSpec& grid) {
  CoordChain out(c.ambient_dim(), c.degree(), c.descriptor());
  for (const auto& [cell, g] : c.terms()) {
    std::vector<AxisFactor> f;
    bool collapsed = false;
    for (int i = 0; i < c.ambient_dim(); ++i) {
      const auto& a = cell.factor(i);
      const Rational& y = grid.shift[static_cast<std::size_t>(i)];
      auto round = [&](const Rational& v) -> Rational { return Rational(floor((v + y) / grid.eps + Rational(1, 2))) * grid.eps; };
      if (a.is_interval()) {
        const Rational lo = round(a.lo());
        const Rational hi = round(a.hi());
        if (lo == hi) collapsed = true;
        else f.push_back(AxisFactor::interval(lo, hi));
      } else {
        f.push_back(AxisFactor::point(round(a.value())));
      }
    }
    if (!collapsed) out.accumulate(CoordCell(std::move(f)), g);
  }
  return canonicalize(out);
}

BoundingBox simplex_box(const SimplexChain& c) {
  BoundingBox b;
  b.empty = c.empty();
  if (b.empty) return b;
  const int n = c.ambient_dim();
  for (int i = 0; i < n; ++i) {
    const Rational& v0 = c.terms().front().first.vertices()[0][static_cast<std::size_t>(i)];
    b.bounds.emplace_back(v0, v0);
  }
  for (const auto& [s, g] : c.terms()) {
    for (const auto& v : s.vertices()) {
      for (int i = 0; i < n; ++i) {
        auto& [lo, hi] = b.bounds[static_cast<std::size_t>(i)];
        lo = std::min(lo, v[static_cast<std::size_t>(i)]);
        hi = std::max(hi, v[static_cast<std::size_t>(i)]);
      }
    }
  }
  return b;
}

Outcome deform_commutes(Runner& run, const std::string& id, std::size_t cases) {
  Tally t;
  for (std::size_t i = 0; i < cases; ++i) {
    Rng rng = run.rng(id, i);
    const int n = 1 + static_cast<int>(i % 3);
    const Rational eps(1, rng.uniform_int(1, 4));
    const std::string tag = "case " + std::to_string(i);
    if (i % 2 == 0) {
      const int k = static_cast<int>(rng.uniform_int(1, n));
      const CoordChain c = random_coord_chain(rng, n, k, rotating_group(i));
      const RationalVector y = sample_shift(n, eps, run.seed(id), 1, i);
      const GridSpec grid{eps, y};
      const CoordChain p = deform_P(c, grid);
      t.expect(chains_equal(run.bd(p), deform_P(run.bd(c), grid)), tag + ": coordinate");
      t.expect(chains_equal(p, rounding_oracle(c, grid)), tag + ": rounding oracle");
      t.expect(support_box(c).translated(y).inflated(eps / 2).contains(support_box(p)), tag + ": support");
    } else {
      const int nn = n + 1;
      const int k = static_cast<int>(rng.uniform_int(1, nn));
      SimplexChain c(nn, k, GroupDescriptor::integers());
      c.add_term(random_simplex(rng, nn, k), random_coefficient(rng, GroupDescriptor::integers()));
      const RationalVector y = sample_shift(nn, eps, run.seed(id), 1, i);
      const GridSpec grid{eps, y};
      const CoordChain p = deform_P(c, grid);
      t.expect(chains_equal(boundary(p), deform_P(s_boundary(c), grid)), tag + ": simplicial");
      t.expect(simplex_box(c).translated(y).inflated(eps / 2).contains(support_box(p)), tag + ": support");
    }
  }
  return t.done("checks");
}

Outcome deform_fixes_grid(Runner& run, const std::string& id, std::size_t cases) {
  Tally t;
  for (std::size_t i = 0; i < cases; ++i) {
    Rng rng = run.rng(id, i);
    const int n = 1 + static_cast<int>(i % 4);
    const int k = static_cast<int>(rng.uniform_int(0, n));
    const long inv = rng.uniform_int(1, 3);
    const Rational eps(1, inv);
    // Grid chain: integer chain scaled by eps.
    const CoordChain base = random_coord_chain(rng, n, k, rotating_group(i), ChainShape{3, 3, 1});
    CoordChain c(n, k, base.descriptor());
    for (const auto& [cell, g] : base.terms()) {
      std::vector<AxisFactor> f;
      for (const auto& a : cell.factors()) {
        f.push_back(a.is_interval() ? AxisFactor::interval(a.lo() * eps, a.hi() * eps) : AxisFactor::point(a.value() * eps));
      }
      c.accumulate(CoordCell(std::move(f)), g);
    }
    c = canonicalize(c);
    RationalVector y = sample_shift(n, eps / 2, run.seed(id), 2, i);
    if (rng.coin()) {
      for (auto& v : y) v = -v;
    }
    t.expect(chains_equal(deform_P(c, GridSpec{eps, y}), c), "case " + std::to_string(i));
  }
  return t.done("grid chains");
}

void deform_checks(Runner& run) {
  run.check("deform.commutes", "deform", "P commutes with the boundary; rounding oracle; support within eps/2",
            [&] { return deform_commutes(run, "deform.commutes", 120); });
  run.check("deform.fixes_grid", "deform", "P fixes chains of the eps-grid for small shifts",
            [&] { return deform_fixes_grid(run, "deform.fixes_grid", 100); });
  run.check("deform.pairing_sign", "deform", "face coefficients carry the sign of the oriented intersection with the dual face",
            [&] {
              Tally t;
              for (std::size_t i = 0; i < 60; ++i) {
                Rng rng = run.rng("deform.pairing_sign", i);
                const int n = 2 + static_cast<int>(i % 2);
                const int k = static_cast<int>(rng.uniform_int(1, n));
                const Simplex s = random_simplex(rng, n, k);
                SimplexChain c(n, k, GroupDescriptor::integers());
                c.add_term(s, Coefficient::integer(1));
                const Rational eps(1, 4);
                const CoordChain p = deform_P(c, GridSpec{eps, sample_shift(n, eps, run.seed("deform.pairing_sign"), 3, i)});
                for (const auto& gamma : combinations(n, k)) {
                  const Rational det = s.minor_det(gamma);
                  if (det == 0) continue;
                  // det[edges; xi_hat] with xi_hat = sign(gamma, gammabar) e_gammabar.
                  RationalMatrix m = s.edges();
                  for (int a = 0; a < n; ++a) {
                    if (std::find(gamma.begin(), gamma.end(), a) != gamma.end()) continue;
                    RationalVector e(static_cast<std::size_t>(n), Rational(0));
                    e[static_cast<std::size_t>(a)] = 1;
                    m.push_back(e);
                  }
                  const int expected = pairing_sign(gamma, n) * sign(determinant(m));
                  t.expect(expected == sign(det), "routes agree, case " + std::to_string(i));
                  for (const auto& [cell, g] : p.terms()) {
                    if (cell.axes() != gamma) continue;
                    t.expect(*g.as_rational() == Rational(expected), "face sign, case " + std::to_string(i));
                  }
                }
              }
              return t.done("checks");
            });
  run.check("deform.pi0", "deform", "Pi0 preserves the bidegree and commutes with d1 and d2", [&] {
    Tally t;
    for (std::size_t i = 0; i < 80; ++i) {
      Rng rng = run.rng("deform.pi0", i);
      const int n = 2 + static_cast<int>(i % 2);
      const Split s = random_split(rng, n);
      const Bidegree b = random_bidegree(rng, s);
      const TensorChain x = random_tensor_chain(rng, s, b, rotating_group(i));
      const Rational eps(1, rng.uniform_int(1, 3));
      const GridSpec grid{eps, sample_shift(n, eps, run.seed("deform.pi0"), 4, i)};
      const TensorChain p = deform_Pi0(x, grid);
      t.expect(p.bidegree() == b, "bidegree");
      if (b.k1 > 0) t.expect(tensor_equal(d1(p), deform_Pi0(d1(x), grid)), "d1, case " + std::to_string(i));
      if (b.k2 > 0) t.expect(tensor_equal(d2(p), deform_Pi0(d2(x), grid)), "d2, case " + std::to_string(i));
    }
    return t.done("tensor chains");
  });
  run.check("deform.average_mass", "deform", "shift-averaged mass of P: exact integrator vs Monte-Carlo, bounded by M_Sl", [&] {
    Tally t;
    for (std::size_t i = 0; i < 12; ++i) {
      Rng rng = run.rng("deform.average_mass", i);
      const int n = 1 + static_cast<int>(i % 2);
      const int k = static_cast<int>(rng.uniform_int(0, n));
      const CoordChain c = random_coord_chain(rng, n, k, GroupDescriptor::integers(), ChainShape{2, 2, 3});
      const Rational eps(1, 2);
      const AverageMass ex = shift_average_mass_exact(c, eps);
      const AverageMass mc = shift_average_mass_mc(c, eps, 2000, run.seed("deform.average_mass") + i);
      t.expect(ex.value <= slicing_mass(c).total, "bounded, case " + std::to_string(i));
      t.expect(std::abs(mc.mean - ex.mean) <= 4 * mc.stderr_ + 1e-12, "Monte-Carlo, case " + std::to_string(i));
    }
    return t.done("chains");
  });
}

// ---------------------------------------------------------------- cli

void cli_checks(Runner& run) {
  run.check("cli.roundtrip", "cli", "documents round-trip exactly through JSON", [&] {
    Tally t;
    for (std::size_t i = 0; i < 100; ++i) {
      Rng rng = run.rng("cli.roundtrip", i);
      const int n = 2 + static_cast<int>(i % 2);
      ChainDocument doc;
      if (i % 3 == 0) {
        const GroupDescriptor g = i % 9 == 0 ? GroupDescriptor::nested(1, 1, GroupDescriptor::integers()) : rotating_group(i);
        doc = ChainDocument::of(random_coord_chain(rng, n, static_cast<int>(rng.uniform_int(0, n)), g));
      } else if (i % 3 == 1) {
        const Split s = random_split(rng, n);
        doc = ChainDocument::of(random_tensor_chain(rng, s, random_bidegree(rng, s), rotating_group(i)));
      } else {
        SimplexChain c(n, 1, rotating_group(i));
        c.add_term(random_simplex(rng, n, 1), random_coefficient(rng, rotating_group(i)));
        doc = ChainDocument::of(c);
      }
      const std::string text = emit_document(doc);
      t.expect(emit_document(parse_document(text)) == text, "case " + std::to_string(i));
    }
    return t.done("documents");
  });
  run.check("cli.validation", "cli", "non-canonical and mixed-degree documents are rejected", [&] {
    Tally t;
    const std::string head = R"({"format":"flatchain/1","type":"coordinate","descriptor":{"kind":"integers"},"signature":{"n":1,"k":1},"terms":)";
    const std::vector<std::string> bad{
        head + R"([{"cell":[{"iv":["0","2"]}],"coeff":"1"},{"cell":[{"iv":["1","3"]}],"coeff":"1"}]})",
        head + R"([{"cell":[{"iv":["1","2"]}],"coeff":"1"},{"cell":[{"iv":["0","1"]}],"coeff":"1"}]})",
        head + R"([{"cell":[{"pt":"0"}],"coeff":"1"}]})",
        head + R"([{"cell":[{"iv":["0","2/4"]}],"coeff":"1"}]})",
        head + R"([{"cell":[{"iv":["0","1"]}],"coeff":"0"}]})",
    };
    for (const auto& text : bad) {
      bool rejected = false;
      try {
        parse_document(text);
      } catch (const ParseError&) {
        rejected = true;
      }
      t.expect(rejected, text);
    }
    const std::string good = head + R"([{"cell":[{"iv":["0","1"]}],"coeff":"1"},{"cell":[{"iv":["1","2"]}],"coeff":"2"}]})";
    t.expect(emit_document(parse_document(good)) == nlohmann::json::parse(good).dump(), "canonical document accepted");
    return t.done("documents");
  });
}

// ---------------------------------------------------------------- acceptance

void acceptance_checks(Runner& run) {
  run.check("acceptance.1", "acceptance",
            "exact canonical-form identities: boundary squared, d1^2, d2^2, d1 d2 = -d2 d1, translate/boundary/restrict "
            "commutations; >= 200 chains, n <= 4, < 10 s",
            [&] {
              Tally t;
              for (std::size_t i = 0; i < 240; ++i) {
                Rng rng = run.rng("acceptance.1", i);
                const int n = 1 + static_cast<int>(i % 4);
                const GroupDescriptor g = i % 10 == 9 ? GroupDescriptor::nested(1, 1, GroupDescriptor::integers()) : rotating_group(i);
                const int k = static_cast<int>(rng.uniform_int(1, n));
                const CoordChain c = random_coord_chain(rng, n, k, g);
                const std::string tag = "case " + std::to_string(i);
                if (k >= 2) t.expect(run.bd(run.bd(c)).empty(), tag + ": boundary squared");
                const RationalVector y = random_vector(rng, n);
                const RationalVector x = random_vector(rng, n);
                t.expect(chains_equal(translate(run.bd(c), y), run.bd(translate(c, y))), tag + ": translate/boundary");
                const Figure j = random_figure(rng, n, 2);
                t.expect(chains_equal(translate(restrict(c, j, x), y), restrict(translate(c, y), j, add_vectors(x, y))),
                         tag + ": translate/restrict");
                t.expect(chains_equal(restrict(c, j.translated(y), x), restrict(c, j, add_vectors(x, y))), tag + ": shifted figure");
                if (n >= 2) {
                  const Split s = random_split(rng, n);
                  const Bidegree b = random_bidegree(rng, s);
                  const TensorChain tc = random_tensor_chain(rng, s, b, g);
                  if (b.k1 >= 2) t.expect(d1(d1(tc)).empty(), tag + ": d1 squared");
                  if (b.k2 >= 2) t.expect(d2(d2(tc)).empty(), tag + ": d2 squared");
                  if (b.k1 >= 1 && b.k2 >= 1) t.expect(tensor_add(d1(d2(tc)), d2(d1(tc))).empty(), tag + ": anticommute");
                }
              }
              return t.done("identities over 240 chains");
            },
            true, 10.0);
  run.check("acceptance.2", "acceptance", "mass(iota t) = M^(t); M_Sl = M and N_Sl = N on coordinate chains", [&] {
    Tally t;
    for (std::size_t i = 0; i < 100; ++i) {
      Rng rng = run.rng("acceptance.2", i);
      const int n = 2 + static_cast<int>(i % 3);
      const Split s = random_split(rng, n);
      const TensorChain x = random_tensor_chain(rng, s, random_bidegree(rng, s), rotating_group(i));
      t.expect(mass(iota(x)) == tensor_mass(x), "iota, case " + std::to_string(i));
      const int m = 1 + static_cast<int>(i % 4);
      const CoordChain c = random_coord_chain(rng, m, static_cast<int>(rng.uniform_int(0, m)), rotating_group(i));
      t.expect(slicing_mass(c).total == mass(c), "slicing mass, case " + std::to_string(i));
      const NNorm nn = n_norm(c);
      t.expect(nn.n_sl == nn.n, "N-norm, case " + std::to_string(i));
    }
    return t.done("identities");
  });
  run.check("acceptance.3", "acceptance",
            "M <= M_Sl <= sqrt(6) M on 500 simplices (n=4, k=2) by exact squared comparison; coordinate planes give equality; < 30 s",
            [&] { return mass_vs_slicing(run, "acceptance.3", 4, 2, 500); }, true, 30.0);
  run.check("acceptance.4", "acceptance",
            "typed slicing masses sum to M_Sl for every split n1, n2 <= 2; pure-type identities and boundary splitting", [&] {
              Tally t;
              for (const Split s : {Split{1, 1}, Split{1, 2}, Split{2, 1}, Split{2, 2}}) {
                for (std::size_t i = 0; i < 100; ++i) {
                  Rng rng = run.rng("acceptance.4." + std::to_string(s.n1) + std::to_string(s.n2), i);
                  const int k = static_cast<int>(rng.uniform_int(0, s.n()));
                  const CoordChain c = random_coord_chain(rng, s.n(), k, rotating_group(i));
                  Rational sum = 0;
                  for (const auto& [b, part] : jdecomp(c, s)) sum += slicing_mass_tensor(part).total;
                  t.expect(sum == slicing_mass(c).total, "sum rule, split (" + std::to_string(s.n1) + "," + std::to_string(s.n2) + ")");
                }
              }
              for (std::size_t i = 0; i < 100; ++i) {
                Rng rng = run.rng("acceptance.4.pure", i);
                const int n = 2 + static_cast<int>(i % 3);
                const Split s = random_split(rng, n);
                Bidegree b = random_bidegree(rng, s);
                if (b.total() == 0) b.k2 = 1;
                const TensorChain x = random_tensor_chain(rng, s, b, rotating_group(i));
                const CoordChain& a = x.body();
                const std::string tag = "pure case " + std::to_string(i);
                t.expect(slicing_mass_tensor(x).total == slicing_mass(a).total, tag + ": first identity");
                Rational parts = 0;
                CoordChain split_sum(n, b.total() - 1, a.descriptor());
                if (b.k1 > 0) {
                  parts += slicing_mass_tensor(d1(x)).total;
                  split_sum = add(split_sum, d1(x).body());
                }
                if (b.k2 > 0) {
                  parts += slicing_mass_tensor(d2(x)).total;
                  split_sum = add(split_sum, d2(x).body());
                }
                t.expect(parts == slicing_mass(boundary(a)).total, tag + ": second identity");
                t.expect(chains_equal(split_sum, boundary(a)), tag + ": boundary splitting");
                t.expect(n_norm_tensor(x).n_sl == n_norm(a).n_sl, tag + ": N_Sl isometry");
              }
              return t.done("identities");
            });
  run.check("acceptance.5", "acceptance",
            "P commutes with the boundary, fixes grid chains, inflates supports by <= eps/2; (3,4)-segment averages to 7 at eps = 1",
            [&] {
              const Outcome a = deform_commutes(run, "acceptance.5.commute", 100);
              const Outcome b = deform_fixes_grid(run, "acceptance.5.grid", 100);
              SimplexChain seg(2, 1, GroupDescriptor::integers());
              seg.add_term(Simplex({{0, 0}, {3, 4}}), Coefficient::integer(1));
              const AverageMass ex = shift_average_mass_exact(seg, Rational(1));
              const AverageMass mc = shift_average_mass_mc(seg, Rational(1), 10000, run.seed("acceptance.5.mc"));
              const bool exact_ok = ex.value == 7 && ex.value == s_slicing_mass(seg);
              const bool mc_ok = std::abs(mc.mean - 7.0) <= 3 * mc.stderr_;
              return Outcome{a.ok && b.ok && exact_ok && mc_ok,
                             a.detail + "; " + b.detail + "; exact average " + to_string(ex.value) + " over " +
                                 std::to_string(ex.boxes) + " boxes; Monte-Carlo " + fmt(mc.mean) + " +- " + fmt(mc.stderr_) +
                                 " (10000 samples)"};
            });
  run.check("acceptance.6", "acceptance",
            "flat-distance bounds for the square boundary and the (3,4)-segment decrease over eps = 1, 1/2, 1/4, 1/8 and "
            "end <= 1/4 of the start; refinement 2, < 120 s",
            [&] {
              const std::vector<Rational> eps{Rational(1), Rational(1, 2), Rational(1, 4), Rational(1, 8)};
              SimplexChain seg(2, 1, GroupDescriptor::integers());
              seg.add_term(Simplex({{0, 0}, {3, 4}}), Coefficient::integer(1));
              const auto sq = convergence_experiment(unit_square_boundary(), eps, 8, run.seed("acceptance.6.square"), 2);
              const auto sg = convergence_experiment(seg, eps, 8, run.seed("acceptance.6.segment"), 2, 64);
              bool ok = true;
              std::string d;
              for (const auto* rows : {&sq, &sg}) {
                for (std::size_t j = 1; j < rows->size(); ++j) ok = ok && (*rows)[j].mean < (*rows)[j - 1].mean;
                ok = ok && rows->back().mean <= rows->front().mean / 4;
                d += d.empty() ? "square:" : "; segment:";
                for (const auto& r : *rows) d += " " + fmt(r.mean);
              }
              return Outcome{ok, d};
            },
            true, 120.0);
  run.check("acceptance.7", "acceptance",
            "successive-level tensor flat distances of the staircase R'_3 decrease with fitted ratio <= 0.7", [&] {
              std::vector<RationalVector> shifts;
              for (std::uint64_t s = 0; s < 32; ++s) shifts.push_back(sample_shift(2, Rational(1), run.seed("acceptance.7"), 0, s));
              const CauchyResult cr = cauchy_experiment(staircase_chain(Coefficient::integer(1), 3), 4, shifts, 1);
              std::string d = "d_j:";
              for (double v : cr.tensor_mean) d += " " + fmt(v);
              d += "; fitted ratio " + fmt(cr.ratio) + "; ordinary flat distances:";
              for (double v : cr.ordinary_mean) d += " " + fmt(v);
              return Outcome{cr.decreasing && cr.ratio <= 0.7 && cr.ratio > 0, d};
            });
  run.check("acceptance.8", "acceptance",
            "M(Q') = |g|/2; M^_Sl(R'_j) = 2|g| for j = 1, 2, 3; R'_j - R'_{j+1} = d1(prism) with prism mass <= 2^-j |g|", [&] {
              Tally t;
              for (const Coefficient& g : {Coefficient::integer(1), Coefficient::integer(-3), Coefficient::rational(Rational(1, 2))}) {
                const Counterexample ce = counterexample_build(g, 3);
                const Rational norm = g.norm();
                t.expect(ce.q_mass.exact && *ce.q_mass.exact == norm / 2, "M(Q') for " + g.to_string());
                for (const auto& lv : ce.levels) {
                  const std::string tag = g.to_string() + ", j=" + std::to_string(lv.j);
                  t.expect(lv.slicing_mass == 2 * norm, tag + ": slicing mass");
                  t.expect(lv.prism_identity, tag + ": prism identity");
                  t.expect(lv.prism_mass <= norm / Rational(Integer(1) << lv.j), tag + ": prism mass");
                  t.expect(lv.grid_distance && *lv.grid_distance <= lv.prism_mass, tag + ": grid distance");
                  t.expect(lv.b_anticommutes && !lv.b.empty() && !lv.b_chi_antidiagonal.is_zero(), tag + ": B' certificate");
                }
              }
              return t.done("checks", "g in {1, -3, 1/2}");
            });
  run.check("acceptance.9", "acceptance", "witnesses re-verify; exhaustive = LP on complexes with <= 12 columns; refinement monotone",
            [&] { return solver_soundness(run, "acceptance.9", 150); });
  run.check("acceptance.10", "acceptance", "|chi(A)| <= F(A) and |chi^(t)| <= F^(t) on 100 random 0- and (0,0)-chains",
            [&] { return chi_bounds(run, "acceptance.10", 100); });
  run.check("acceptance.11", "acceptance",
            "Grassmann average ratio agrees across two simplices of the same (n, k) within 3 stderr (reported, not gated)", [&] {
              const Simplex a({{0, 0, 0}, {1, 0, 0}});
              const Simplex b({{0, 0, 0}, {Rational(1, 2), 2, Rational(-1, 3)}});
              const auto ga = grassmann_avg(a, 10000, run.seed("acceptance.11.a"));
              const auto gb = grassmann_avg(b, 10000, run.seed("acceptance.11.b"));
              const double tol = 3 * std::sqrt(ga.ratio_stderr * ga.ratio_stderr + gb.ratio_stderr * gb.ratio_stderr);
              return Outcome{std::abs(ga.ratio - gb.ratio) <= tol,
                             "ratios " + fmt(ga.ratio) + " +- " + fmt(ga.ratio_stderr) + " and " + fmt(gb.ratio) + " +- " +
                                 fmt(gb.ratio_stderr)};
            },
            false);
}

using SuiteFn = void (*)(Runner&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> s{
      {"coeff", coeff_checks},       {"cubchain", cubchain_checks}, {"simplexchain", simplexchain_checks},
      {"tensor", tensor_checks},     {"slicing", slicing_checks},   {"flatnorm", flatnorm_checks},
      {"deform", deform_checks},     {"cli", cli_checks},           {"acceptance", acceptance_checks}};
  return s;
}

}  // namespace

bool VerifyReport::passed() const {
  for (const auto& c : checks) {
    if (c.gated && !c.passed) return false;
  }
  return true;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : suites()) n.push_back(name);
    n.push_back("all");
    return n;
  }();
  return names;
}

VerifyReport run_verify(const std::string& suite, const VerifyOptions& options) {
  VerifyReport report;
  report.suite = suite;
  report.seed = options.seed;
  Runner run(report, options);
  bool found = false;
  for (const auto& [name, fn] : suites()) {
    if (suite == "all" || suite == name) {
      fn(run);
      found = true;
    }
  }
  if (!found) throw DomainError("unknown suite '" + suite + "'");
  return report;
}

nlohmann::json report_to_json(const VerifyReport& report, bool with_timing) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    nlohmann::json row{{"id", c.id},         {"module", c.module}, {"citation", c.citation},
                       {"passed", c.passed}, {"gated", c.gated},   {"detail", c.detail}};
    if (with_timing) row["seconds"] = c.seconds;
    checks.push_back(row);
  }
  return {{"command", "verify"}, {"suite", report.suite}, {"seed", report.seed}, {"passed", report.passed()}, {"checks", checks}};
}

}  // namespace flatchain
