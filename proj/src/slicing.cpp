#include "flatchain/slicing.hpp"

#include <algorithm>

#include "flatchain/errors.hpp"

namespace flatchain {

CoordChain slice0_coord(const CoordChain& c, const std::vector<int>& gamma, const RationalVector& x) {
  if (static_cast<int>(gamma.size()) != c.degree()) throw DomainError("axis subset size differs from chain degree");
  if (x.size() != gamma.size()) throw DomainError("slice parameter has the wrong dimension");
  AxisMask mask = 0;
  for (int ax : gamma) mask |= AxisMask{1} << ax;
  CoordChain out(c.ambient_dim(), 0, c.descriptor());
  for (const auto& [cell, g] : c.terms()) {
    if (cell.axis_mask() != mask) continue;
    bool inside = true;
    for (std::size_t i = 0; i < gamma.size(); ++i) {
      const auto& f = cell.factor(gamma[i]);
      if (x[i] == f.lo() || x[i] == f.hi()) throw DegenerateError("degenerate slice: parameter hits a cell endpoint");
      if (!(f.lo() < x[i] && x[i] < f.hi())) inside = false;
    }
    if (!inside) continue;
    std::vector<AxisFactor> pt = cell.factors();
    for (std::size_t i = 0; i < gamma.size(); ++i) pt[static_cast<std::size_t>(gamma[i])] = AxisFactor::point(x[i]);
    out.accumulate(CoordCell(std::move(pt)), g);
  }
  return canonicalize(out);
}

SlicingMass slicing_mass(const CoordChain& c) {
  const CoordChain cc = canonicalize(c);
  SlicingMass out;
  out.total = 0;
  for (const auto& [cell, g] : cc.terms()) {
    const Rational m = g.norm() * cell.volume();
    out.per_gamma[cell.axes()] += m;
    out.total += m;
  }
  return out;
}

SlicingMass slicing_mass_tensor(const TensorChain& t) {
  SlicingMass out;
  out.total = 0;
  for (const auto& [cell, g] : t.body().terms()) {
    if (!(classify(cell, t.split()) == t.bidegree())) continue;
    const Rational m = g.norm() * cell.volume();
    out.per_gamma[cell.axes()] += m;
    out.total += m;
  }
  return out;
}

bool Interval1D::contains(const Rational& v) const {
  if (lo && (v < *lo || (v == *lo && !lo_closed))) return false;
  if (hi && (v > *hi || (v == *hi && !hi_closed))) return false;
  return true;
}

bool Interval1D::operator==(const Interval1D& o) const {
  return lo == o.lo && hi == o.hi && (!lo || lo_closed == o.lo_closed) && (!hi || hi_closed == o.hi_closed);
}

Figure Figure::whole(int n) {
  Figure f(n);
  f.add_box(std::vector<Interval1D>(static_cast<std::size_t>(n), Interval1D::all()));
  return f;
}

Figure Figure::box(std::vector<Interval1D> factors) {
  Figure f(static_cast<int>(factors.size()));
  f.add_box(std::move(factors));
  return f;
}

void Figure::add_box(std::vector<Interval1D> factors) {
  if (static_cast<int>(factors.size()) != n_) throw StructuralError("figure box has the wrong dimension");
  for (const auto& iv : factors) {
    if (iv.lo && iv.hi && (*iv.hi < *iv.lo || (*iv.hi == *iv.lo && !(iv.lo_closed && iv.hi_closed)))) return;
  }
  boxes_.push_back(std::move(factors));
}

bool Figure::contains(const RationalVector& p) const {
  for (const auto& b : boxes_) {
    bool in = true;
    for (std::size_t i = 0; i < b.size() && in; ++i) in = b[i].contains(p[i]);
    if (in) return true;
  }
  return false;
}

Figure Figure::translated(const RationalVector& y) const {
  Figure out(n_);
  for (auto b : boxes_) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b[i].lo) *b[i].lo += y[i];
      if (b[i].hi) *b[i].hi += y[i];
    }
    out.boxes_.push_back(std::move(b));
  }
  return out;
}

namespace {

// Per axis, atoms are indexed 0..2m: even = open gap, odd = breakpoint.
struct AtomGrid {
  std::vector<std::vector<Rational>> breaks;

  std::size_t atoms(std::size_t axis) const { return 2 * breaks[axis].size() + 1; }

  std::size_t total() const {
    std::size_t t = 1;
    for (std::size_t i = 0; i < breaks.size(); ++i) t *= atoms(i);
    return t;
  }

  Interval1D atom(std::size_t axis, std::size_t idx) const {
    const auto& b = breaks[axis];
    if (idx % 2 == 1) return Interval1D::closed(b[idx / 2], b[idx / 2]);
    const std::size_t i = idx / 2;
    Interval1D iv;
    if (i > 0) iv.lo = b[i - 1];
    if (i < b.size()) iv.hi = b[i];
    return iv;
  }

  Rational representative(std::size_t axis, std::size_t idx) const {
    const auto& b = breaks[axis];
    if (b.empty()) return Rational(0);
    if (idx % 2 == 1) return b[idx / 2];
    const std::size_t i = idx / 2;
    if (i == 0) return b.front() - 1;
    if (i == b.size()) return b.back() + 1;
    return (b[i - 1] + b[i]) / 2;
  }

  // Atom index containing v.
  std::size_t locate(std::size_t axis, const Rational& v) const {
    const auto& b = breaks[axis];
    const auto it = std::lower_bound(b.begin(), b.end(), v);
    const std::size_t i = static_cast<std::size_t>(it - b.begin());
    if (it != b.end() && *it == v) return 2 * i + 1;
    return 2 * i;
  }
};

void collect(const Figure& f, AtomGrid& grid) {
  for (const auto& box : f.boxes()) {
    for (std::size_t i = 0; i < box.size(); ++i) {
      if (box[i].lo) grid.breaks[i].push_back(*box[i].lo);
      if (box[i].hi) grid.breaks[i].push_back(*box[i].hi);
    }
  }
}

AtomGrid make_grid(std::initializer_list<const Figure*> figs, int n) {
  AtomGrid grid;
  grid.breaks.resize(static_cast<std::size_t>(n));
  for (const auto* f : figs) collect(*f, grid);
  for (auto& b : grid.breaks) {
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
  }
  return grid;
}

std::vector<std::size_t> unflatten(const AtomGrid& grid, std::size_t flat) {
  std::vector<std::size_t> idx(grid.breaks.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    idx[i] = flat % grid.atoms(i);
    flat /= grid.atoms(i);
  }
  return idx;
}

std::vector<char> membership(const Figure& f, const AtomGrid& grid) {
  std::vector<char> in(grid.total(), 0);
  for (std::size_t flat = 0; flat < in.size(); ++flat) {
    const auto idx = unflatten(grid, flat);
    RationalVector p(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) p[i] = grid.representative(i, idx[i]);
    in[flat] = f.contains(p) ? 1 : 0;
  }
  return in;
}

Figure from_membership(const AtomGrid& grid, const std::vector<char>& in, int n) {
  Figure out(n);
  for (std::size_t flat = 0; flat < in.size(); ++flat) {
    if (!in[flat]) continue;
    const auto idx = unflatten(grid, flat);
    std::vector<Interval1D> box;
    for (std::size_t i = 0; i < idx.size(); ++i) box.push_back(grid.atom(i, idx[i]));
    out.add_box(std::move(box));
  }
  return out;
}

}  // namespace

Figure figure_algebra(const Figure& a, const Figure& b, FigureOp op) {
  const int n = a.ambient_dim();
  if (op != FigureOp::complement && b.ambient_dim() != n) throw StructuralError("figure dimension mismatch");
  const AtomGrid grid = op == FigureOp::complement ? make_grid({&a}, n) : make_grid({&a, &b}, n);
  std::vector<char> in = membership(a, grid);
  if (op == FigureOp::complement) {
    for (auto& v : in) v = !v;
  } else {
    const std::vector<char> other = membership(b, grid);
    for (std::size_t i = 0; i < in.size(); ++i) in[i] = op == FigureOp::intersect ? (in[i] && other[i]) : (in[i] || other[i]);
  }
  return from_membership(grid, in, n);
}

bool figures_equal(const Figure& a, const Figure& b) {
  if (a.ambient_dim() != b.ambient_dim()) return false;
  const AtomGrid grid = make_grid({&a, &b}, a.ambient_dim());
  return membership(a, grid) == membership(b, grid);
}

Figure canonical_figure(const Figure& f) {
  const AtomGrid grid = make_grid({&f}, f.ambient_dim());
  return from_membership(grid, membership(f, grid), f.ambient_dim());
}

CoordChain restrict(const CoordChain& c, const Figure& j, const RationalVector& x) {
  if (j.ambient_dim() != c.ambient_dim() || static_cast<int>(x.size()) != c.ambient_dim()) {
    throw StructuralError("restriction dimension mismatch");
  }
  const Figure shifted = j.translated(x);
  const AtomGrid grid = make_grid({&shifted}, c.ambient_dim());
  const std::vector<char> in = membership(shifted, grid);
  const std::size_t n = static_cast<std::size_t>(c.ambient_dim());
  CoordChain out(c.ambient_dim(), c.degree(), c.descriptor());
  for (const auto& [cell, g] : c.terms()) {
    // Atoms each factor can meet in a set of full dimension.
    std::vector<std::vector<std::size_t>> options(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& f = cell.factor(static_cast<int>(i));
      if (!f.is_interval()) {
        options[i].push_back(grid.locate(i, f.value()));
        continue;
      }
      const auto& b = grid.breaks[i];
      for (std::size_t gap = 0; gap <= b.size(); ++gap) {
        const bool below = gap < b.size() && !(f.lo() < b[gap]);
        const bool above = gap > 0 && !(b[gap - 1] < f.hi());
        if (!below && !above) options[i].push_back(2 * gap);
      }
    }
    std::vector<std::size_t> pick(n, 0);
    bool done = std::any_of(options.begin(), options.end(), [](const auto& o) { return o.empty(); });
    while (!done) {
      std::size_t flat = 0;
      std::size_t stride = 1;
      for (std::size_t i = 0; i < n; ++i) {
        flat += options[i][pick[i]] * stride;
        stride *= grid.atoms(i);
      }
      if (in[flat]) {
        std::vector<AxisFactor> factors = cell.factors();
        for (std::size_t i = 0; i < n; ++i) {
          const auto& f = factors[i];
          if (!f.is_interval()) continue;
          const Interval1D atom = grid.atom(i, options[i][pick[i]]);
          const Rational lo = atom.lo && *atom.lo > f.lo() ? *atom.lo : f.lo();
          const Rational hi = atom.hi && *atom.hi < f.hi() ? *atom.hi : f.hi();
          factors[i] = AxisFactor::interval(lo, hi);
        }
        out.accumulate(CoordCell(std::move(factors)), g);
      }
      std::size_t i = 0;
      for (; i < n; ++i) {
        if (++pick[i] < options[i].size()) break;
        pick[i] = 0;
      }
      done = i == n;
    }
  }
  return canonicalize(out);
}

}  // namespace flatchain
