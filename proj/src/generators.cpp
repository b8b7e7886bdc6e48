#include "flatchain/generators.hpp"

#include <algorithm>

#include "flatchain/errors.hpp"
#include "flatchain/linalg.hpp"

namespace flatchain {

namespace {

Rational coordinate(Rng& rng, const ChainShape& shape) {
  const long den = rng.uniform_int(1, shape.max_den);
  Rational r(rng.uniform_int(-shape.span * den, shape.span * den), den);
  r.canonicalize();
  return r;
}

std::vector<int> random_axes(Rng& rng, const std::vector<int>& pool, int k) {
  std::vector<int> p = pool;
  std::shuffle(p.begin(), p.end(), rng.engine());
  p.resize(static_cast<std::size_t>(k));
  std::sort(p.begin(), p.end());
  return p;
}

}  // namespace

Coefficient random_coefficient(Rng& rng, const GroupDescriptor& g) {
  switch (g.kind()) {
    case GroupKind::integers: {
      long v = 0;
      while (v == 0) v = rng.uniform_int(-3, 3);
      return Coefficient::integer(v);
    }
    case GroupKind::residues:
      return Coefficient::residue(rng.uniform_int(1, g.modulus() - 1), g.modulus());
    case GroupKind::rationals: {
      Rational v = 0;
      while (v == 0) v = rng.small_rational(4, 3);
      return Coefficient::rational(v);
    }
    case GroupKind::nested: {
      ChainShape small{2, 1, 2};
      CoordChain c;
      do {
        c = random_coord_chain(rng, g.inner_dim(), g.inner_degree(), g.inner(), small);
      } while (c.empty());
      return Coefficient::chain(c);
    }
  }
  throw DomainError("unknown group kind");
}

GroupDescriptor rotating_group(std::size_t index) {
  switch (index % 4) {
    case 0:
      return GroupDescriptor::integers();
    case 1:
      return GroupDescriptor::residues(5);
    case 2:
      return GroupDescriptor::rationals();
    default:
      return GroupDescriptor::residues(2);
  }
}

CoordCell random_cell(Rng& rng, int n, const std::vector<int>& axes, const ChainShape& shape) {
  std::vector<AxisFactor> factors;
  for (int i = 0; i < n; ++i) {
    if (std::find(axes.begin(), axes.end(), i) == axes.end()) {
      factors.push_back(AxisFactor::point(coordinate(rng, shape)));
      continue;
    }
    Rational a = coordinate(rng, shape);
    Rational b = coordinate(rng, shape);
    while (a == b) b = coordinate(rng, shape);
    if (b < a) std::swap(a, b);
    factors.push_back(AxisFactor::interval(a, b));
  }
  return CoordCell(std::move(factors));
}

CoordChain random_coord_chain(Rng& rng, int n, int k, const GroupDescriptor& g, const ChainShape& shape) {
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  CoordChain c(n, k, g);
  const long terms = rng.uniform_int(1, shape.max_terms);
  for (long t = 0; t < terms; ++t) c.accumulate(random_cell(rng, n, random_axes(rng, pool, k), shape), random_coefficient(rng, g));
  return canonicalize(c);
}

TensorChain random_tensor_chain(Rng& rng, const Split& split, const Bidegree& b, const GroupDescriptor& g,
                                const ChainShape& shape) {
  std::vector<int> alpha, beta;
  for (int i = 0; i < split.n(); ++i) (split.in_alpha(i) ? alpha : beta).push_back(i);
  CoordChain c(split.n(), b.total(), g);
  const long terms = rng.uniform_int(1, shape.max_terms);
  for (long t = 0; t < terms; ++t) {
    std::vector<int> axes = random_axes(rng, alpha, b.k1);
    for (int ax : random_axes(rng, beta, b.k2)) axes.push_back(ax);
    std::sort(axes.begin(), axes.end());
    c.accumulate(random_cell(rng, split.n(), axes, shape), random_coefficient(rng, g));
  }
  return TensorChain(split, b, canonicalize(c));
}

Simplex random_simplex(Rng& rng, int n, int k, const ChainShape& shape) {
  while (true) {
    std::vector<RationalVector> verts;
    for (int v = 0; v <= k; ++v) {
      RationalVector p;
      for (int i = 0; i < n; ++i) p.push_back(coordinate(rng, shape));
      verts.push_back(std::move(p));
    }
    RationalMatrix e;
    for (int v = 1; v <= k; ++v) {
      RationalVector row(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        row[static_cast<std::size_t>(i)] = verts[static_cast<std::size_t>(v)][static_cast<std::size_t>(i)] - verts[0][static_cast<std::size_t>(i)];
      }
      e.push_back(std::move(row));
    }
    if (rank(e) == k) return Simplex(std::move(verts));
  }
}

Figure random_figure(Rng& rng, int n, int boxes, const ChainShape& shape) {
  Figure f(n);
  for (int b = 0; b < boxes; ++b) {
    std::vector<Interval1D> box;
    for (int i = 0; i < n; ++i) {
      Interval1D iv;
      const long kind = rng.uniform_int(0, 5);
      Rational a = coordinate(rng, shape);
      Rational c = coordinate(rng, shape);
      if (c < a) std::swap(a, c);
      if (kind == 0) {
        iv = Interval1D::all();
      } else if (kind == 1) {
        iv = Interval1D::at_most(c);
        iv.hi_closed = rng.coin();
      } else if (kind == 2) {
        iv = Interval1D::at_least(a);
        iv.lo_closed = rng.coin();
      } else {
        if (a == c) c = a + 1;
        iv = Interval1D::closed(a, c);
        iv.lo_closed = rng.coin();
        iv.hi_closed = rng.coin();
      }
      box.push_back(iv);
    }
    f.add_box(std::move(box));
  }
  return f;
}

}  // namespace flatchain
