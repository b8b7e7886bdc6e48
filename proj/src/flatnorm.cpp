#include "flatchain/flatnorm.hpp"

#include <algorithm>
#include <map>

#include "flatchain/errors.hpp"
#include "flatchain/slicing.hpp"

namespace flatchain {

InducedComplex::InducedComplex(std::vector<std::vector<Rational>> breakpoints) : breakpoints_(std::move(breakpoints)) {
  for (auto& b : breakpoints_) {
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
  }
}

bool InducedComplex::empty() const {
  return breakpoints_.empty() ||
         std::any_of(breakpoints_.begin(), breakpoints_.end(), [](const auto& b) { return b.empty(); });
}

std::size_t InducedComplex::slots(int axis) const {
  const std::size_t m = breakpoints_[static_cast<std::size_t>(axis)].size();
  return m == 0 ? 0 : 2 * m - 1;
}

std::size_t InducedComplex::cell_count() const {
  if (empty()) return 0;
  std::size_t total = 1;
  for (const auto& b : breakpoints_) total *= 2 * (b.size() - 1) + 1;
  return total;
}

std::size_t InducedComplex::cell_count(int degree) const {
  if (empty()) return 0;
  std::vector<std::size_t> ways(breakpoints_.size() + 1, 0);
  ways[0] = 1;
  for (const auto& b : breakpoints_) {
    const std::size_t points = b.size();
    const std::size_t gaps = b.size() - 1;
    for (std::size_t j = ways.size() - 1; j > 0; --j) ways[j] = ways[j] * points + ways[j - 1] * gaps;
    ways[0] *= points;
  }
  return degree < 0 || degree > ambient_dim() ? 0 : ways[static_cast<std::size_t>(degree)];
}

bool InducedComplex::subordinate(const CoordCell& cell) const {
  if (cell.ambient_dim() != ambient_dim()) return false;
  for (int ax = 0; ax < cell.ambient_dim(); ++ax) {
    const auto& b = breakpoints_[static_cast<std::size_t>(ax)];
    const auto& f = cell.factor(ax);
    if (!std::binary_search(b.begin(), b.end(), f.lo()) || !std::binary_search(b.begin(), b.end(), f.hi())) {
      return false;
    }
  }
  return true;
}

bool InducedComplex::subordinate(const CoordChain& c) const {
  return std::all_of(c.terms().begin(), c.terms().end(), [&](const auto& t) { return subordinate(t.first); });
}

std::vector<std::size_t> InducedComplex::slot_tuple(std::size_t flat) const {
  std::vector<std::size_t> out(breakpoints_.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t s = slots(static_cast<int>(i));
    out[i] = flat % s;
    flat /= s;
  }
  return out;
}

std::size_t InducedComplex::flat_index(const std::vector<std::size_t>& slot) const {
  std::size_t flat = 0;
  std::size_t stride = 1;
  for (std::size_t i = 0; i < slot.size(); ++i) {
    flat += slot[i] * stride;
    stride *= slots(static_cast<int>(i));
  }
  return flat;
}

CoordCell InducedComplex::cell_at(const std::vector<std::size_t>& slot) const {
  std::vector<AxisFactor> factors;
  for (std::size_t i = 0; i < slot.size(); ++i) {
    const auto& b = breakpoints_[i];
    if (slot[i] % 2 == 0) {
      factors.push_back(AxisFactor::point(b[slot[i] / 2]));
    } else {
      factors.push_back(AxisFactor::interval(b[slot[i] / 2], b[slot[i] / 2 + 1]));
    }
  }
  return CoordCell(std::move(factors));
}

InducedComplex induced_complex(const std::vector<CoordChain>& chains, const Rational& margin, int refinement) {
  if (chains.empty()) throw DomainError("induced complex needs at least one chain");
  if (refinement < 1) throw DomainError("refinement must be positive");
  if (margin < 0) throw DomainError("margin must be nonnegative");
  const int n = chains.front().ambient_dim();
  std::vector<std::vector<Rational>> b(static_cast<std::size_t>(n));
  for (const auto& c : chains) {
    if (c.ambient_dim() != n) throw StructuralError("chains of different ambient dimension");
    for (const auto& [cell, g] : c.terms()) {
      for (int ax = 0; ax < n; ++ax) {
        b[static_cast<std::size_t>(ax)].push_back(cell.factor(ax).lo());
        b[static_cast<std::size_t>(ax)].push_back(cell.factor(ax).hi());
      }
    }
  }
  for (auto& axis : b) {
    if (axis.empty()) continue;
    std::sort(axis.begin(), axis.end());
    axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
    if (margin > 0) {
      const Rational lo = axis.front() - margin;
      const Rational hi = axis.back() + margin;
      axis.insert(axis.begin(), lo);
      axis.push_back(hi);
    }
    if (refinement > 1) {
      std::vector<Rational> fine;
      for (std::size_t i = 0; i + 1 < axis.size(); ++i) {
        const Rational step = (axis[i + 1] - axis[i]) / refinement;
        for (int t = 0; t < refinement; ++t) fine.push_back(axis[i] + step * t);
      }
      fine.push_back(axis.back());
      axis = std::move(fine);
    }
  }
  return InducedComplex(std::move(b));
}

namespace {

using SlotCell = std::vector<std::size_t>;

int slot_degree(const SlotCell& s) {
  return static_cast<int>(std::count_if(s.begin(), s.end(), [](std::size_t v) { return v % 2 == 1; }));
}

Bidegree slot_bidegree(const SlotCell& s, int n1) {
  Bidegree b;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] % 2 == 0) continue;
    if (static_cast<int>(i) < n1) ++b.k1;
    else ++b.k2;
  }
  return b;
}

// Boundary faces restricted to axes with in_alpha == alpha_part (all axes when n1 < 0).
std::vector<std::pair<SlotCell, int>> slot_boundary(const SlotCell& s, int n1, bool alpha_part) {
  std::vector<std::pair<SlotCell, int>> out;
  int p = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] % 2 == 0) continue;
    if (n1 < 0 || (static_cast<int>(i) < n1) == alpha_part) {
      const int sign = p % 2 == 0 ? 1 : -1;
      SlotCell top = s;
      SlotCell bottom = s;
      ++top[i];
      --bottom[i];
      out.push_back({std::move(top), sign});
      out.push_back({std::move(bottom), -sign});
    }
    ++p;
  }
  return out;
}

Rational slot_volume(const SlotCell& s, const InducedComplex& cx) {
  Rational v(1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] % 2 == 1) {
      const auto& b = cx.breakpoints()[i];
      v *= b[s[i] / 2 + 1] - b[s[i] / 2];
    }
  }
  return v;
}

// Coefficients of `c` on the elementary cells of the complex.
std::map<std::size_t, Coefficient> decompose(const CoordChain& c, const InducedComplex& cx) {
  std::map<std::size_t, Coefficient> out;
  const std::size_t n = static_cast<std::size_t>(cx.ambient_dim());
  for (const auto& [cell, g] : c.terms()) {
    if (!cx.subordinate(cell)) throw StructuralError("cell " + cell.to_string() + " is not subordinate to the complex");
    std::vector<std::pair<std::size_t, std::size_t>> range(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& b = cx.breakpoints()[i];
      const auto& f = cell.factor(static_cast<int>(i));
      const auto lo = static_cast<std::size_t>(std::lower_bound(b.begin(), b.end(), f.lo()) - b.begin());
      if (!f.is_interval()) {
        range[i] = {2 * lo, 2 * lo + 1};
      } else {
        const auto hi = static_cast<std::size_t>(std::lower_bound(b.begin(), b.end(), f.hi()) - b.begin());
        range[i] = {2 * lo + 1, 2 * hi};
      }
    }
    SlotCell cur(n);
    for (std::size_t i = 0; i < n; ++i) cur[i] = range[i].first;
    while (true) {
      const std::size_t flat = cx.flat_index(cur);
      auto it = out.find(flat);
      if (it == out.end()) out.emplace(flat, g);
      else it->second += g;
      std::size_t i = 0;
      for (; i < n; ++i) {
        cur[i] += 2;
        if (cur[i] < range[i].second) break;
        cur[i] = range[i].first;
      }
      if (i == n) break;
    }
  }
  return out;
}

struct Assembled {
  L1Problem problem;
  std::vector<std::size_t> row_cells;
  std::vector<std::size_t> col_cells;
};

void fill_rhs(Assembled& a, const std::map<std::size_t, Coefficient>& coeffs, const std::vector<int>& row_of,
              const GroupDescriptor& g) {
  if (g.kind() == GroupKind::nested) throw CapabilityError("flat norm of chain-valued coefficients is not supported");
  if (g.kind() == GroupKind::residues) a.problem.modulus = g.modulus();
  a.problem.rhs.assign(a.row_cells.size(), Rational(0));
  for (const auto& [flat, coeff] : coeffs) {
    const int r = row_of[flat];
    if (r < 0) throw StructuralError("chain cell missing from the complex");
    if (coeff.is_zero()) continue;
    if (g.kind() == GroupKind::residues) {
      a.problem.rhs[static_cast<std::size_t>(r)] = Rational(static_cast<long>(coeff.residue_value()));
    } else {
      a.problem.rhs[static_cast<std::size_t>(r)] = *coeff.as_rational();
    }
  }
}

GroupDescriptor witness_group(const GroupDescriptor& g, const RationalVector& s) {
  if (g.kind() == GroupKind::integers &&
      !std::all_of(s.begin(), s.end(), [](const Rational& q) { return q.get_den() == 1; })) {
    return GroupDescriptor::rationals();
  }
  return g;
}

CoordChain convert(const CoordChain& c, const GroupDescriptor& g) {
  if (c.descriptor() == g) return c;
  CoordChain out(c.ambient_dim(), c.degree(), g);
  for (const auto& [cell, coeff] : c.terms()) out.accumulate(cell, Coefficient::from_rational(*coeff.as_rational(), g));
  return canonicalize(out);
}

CoordChain chain_from_columns(const InducedComplex& cx, int k, const GroupDescriptor& g,
                              const std::vector<std::size_t>& cols, const RationalVector& s, std::size_t begin,
                              std::size_t end) {
  CoordChain out(cx.ambient_dim(), k, g);
  for (std::size_t j = begin; j < end; ++j) {
    if (s[j] == 0) continue;
    out.accumulate(cx.cell_at(cx.slot_tuple(cols[j])), Coefficient::from_rational(s[j], g));
  }
  return canonicalize(out);
}

}  // namespace

FlatWitness flat_norm_grid(const CoordChain& c, const InducedComplex& cx, const FlatOptions& options) {
  const int n = c.ambient_dim();
  const int k = c.degree();
  FlatWitness w{Rational(0), CoordChain(n, k, c.descriptor()),
                CoordChain(n, std::min(k + 1, n), c.descriptor()), "trivial", true, 0, 0};
  const CoordChain cc = canonicalize(c);
  if (cc.empty()) return w;
  if (cx.ambient_dim() != n) throw StructuralError("complex dimension does not match chain");
  if (!cx.subordinate(cc)) throw StructuralError("chain is not subordinate to the induced complex");
  if (k == n) {
    w.value = mass(cc);
    w.r = cc;
    return w;
  }
  const std::size_t total = cx.cell_count();
  std::vector<int> row_of(total, -1);
  Assembled a;
  std::vector<SlotCell> slots(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    slots[flat] = cx.slot_tuple(flat);
    const int d = slot_degree(slots[flat]);
    if (d == k) {
      row_of[flat] = static_cast<int>(a.row_cells.size());
      a.row_cells.push_back(flat);
      a.problem.row_weight.push_back(slot_volume(slots[flat], cx));
    } else if (d == k + 1) {
      a.col_cells.push_back(flat);
    }
  }
  for (std::size_t flat : a.col_cells) {
    std::vector<std::pair<int, int>> col;
    for (const auto& [face, sign] : slot_boundary(slots[flat], -1, true)) col.push_back({row_of[cx.flat_index(face)], sign});
    a.problem.columns.push_back(std::move(col));
    a.problem.col_weight.push_back(slot_volume(slots[flat], cx));
  }
  fill_rhs(a, decompose(cc, cx), row_of, cc.descriptor());
  const L1Solution sol = solve_l1(a.problem, options.backend, options.exhaustive);
  const GroupDescriptor g = witness_group(cc.descriptor(), sol.s);
  w.s = chain_from_columns(cx, k + 1, g, a.col_cells, sol.s, 0, sol.s.size());
  w.r = subtract(convert(cc, g), boundary(w.s));
  w.value = mass(w.r) + mass(w.s);
  w.method = sol.method;
  w.integral = sol.integral;
  w.rows = a.row_cells.size();
  w.cols = a.col_cells.size();
  if (w.value != sol.value) throw Error("flat norm witness does not reproduce the solver value");
  return w;
}

bool verify_witness(const CoordChain& c, const FlatWitness& w) {
  if (w.value != mass(w.r) + mass(w.s)) return false;
  if (w.s.empty()) return chains_equal(convert(canonicalize(c), w.r.descriptor()), w.r);
  return chains_equal(convert(canonicalize(c), w.r.descriptor()), add(w.r, boundary(w.s)));
}

TensorFlatWitness tensor_flat_norm_grid(const TensorChain& t, const InducedComplex& cx, const FlatOptions& options) {
  const Split& sp = t.split();
  const Bidegree b = t.bidegree();
  const GroupDescriptor& g0 = t.body().descriptor();
  auto admissible = [&](Bidegree x) { return x.k1 <= sp.n1 && x.k2 <= sp.n2; };
  const Bidegree b10{b.k1 + 1, b.k2};
  const Bidegree b01{b.k1, b.k2 + 1};
  const Bidegree b11{b.k1 + 1, b.k2 + 1};
  TensorFlatWitness w{Rational(0), TensorChain(sp, b, g0), std::nullopt, std::nullopt, std::nullopt, "trivial", true};
  if (admissible(b10)) w.r10 = TensorChain(sp, b10, g0);
  if (admissible(b01)) w.r01 = TensorChain(sp, b01, g0);
  if (admissible(b11)) w.r11 = TensorChain(sp, b11, g0);
  if (t.empty()) return w;
  if (cx.ambient_dim() != sp.n()) throw StructuralError("complex dimension does not match chain");
  if (!cx.subordinate(t.body())) throw StructuralError("chain is not subordinate to the induced complex");

  const std::size_t total = cx.cell_count();
  std::vector<int> row_of(total, -1);
  Assembled a;
  std::vector<SlotCell> slots(total);
  std::vector<std::size_t> c10, c01, c11;
  for (std::size_t flat = 0; flat < total; ++flat) {
    slots[flat] = cx.slot_tuple(flat);
    const Bidegree d = slot_bidegree(slots[flat], sp.n1);
    if (d == b) {
      row_of[flat] = static_cast<int>(a.row_cells.size());
      a.row_cells.push_back(flat);
      a.problem.row_weight.push_back(slot_volume(slots[flat], cx));
    } else if (d == b10) {
      c10.push_back(flat);
    } else if (d == b01) {
      c01.push_back(flat);
    } else if (d == b11) {
      c11.push_back(flat);
    }
  }
  auto add_column = [&](std::size_t flat, const std::map<std::size_t, int>& entries) {
    std::vector<std::pair<int, int>> col;
    for (const auto& [face, sign] : entries) {
      if (sign != 0) col.push_back({row_of[face], sign});
    }
    a.problem.columns.push_back(std::move(col));
    a.problem.col_weight.push_back(slot_volume(slots[flat], cx));
    a.col_cells.push_back(flat);
  };
  for (std::size_t flat : c10) {
    std::map<std::size_t, int> e;
    for (const auto& [face, sign] : slot_boundary(slots[flat], sp.n1, true)) e[cx.flat_index(face)] += sign;
    add_column(flat, e);
  }
  for (std::size_t flat : c01) {
    std::map<std::size_t, int> e;
    for (const auto& [face, sign] : slot_boundary(slots[flat], sp.n1, false)) e[cx.flat_index(face)] += sign;
    add_column(flat, e);
  }
  for (std::size_t flat : c11) {
    std::map<std::size_t, int> e;
    for (const auto& [mid, s2] : slot_boundary(slots[flat], sp.n1, false)) {
      for (const auto& [face, s1] : slot_boundary(mid, sp.n1, true)) e[cx.flat_index(face)] += s1 * s2;
    }
    add_column(flat, e);
  }
  fill_rhs(a, decompose(t.body(), cx), row_of, g0);
  const L1Solution sol = solve_l1(a.problem, options.backend, options.exhaustive);
  const GroupDescriptor g = witness_group(g0, sol.s);
  const std::size_t e10 = c10.size();
  const std::size_t e01 = e10 + c01.size();
  const std::size_t e11 = e01 + c11.size();
  if (w.r10) w.r10 = TensorChain(sp, b10, chain_from_columns(cx, b10.total(), g, a.col_cells, sol.s, 0, e10));
  if (w.r01) w.r01 = TensorChain(sp, b01, chain_from_columns(cx, b01.total(), g, a.col_cells, sol.s, e10, e01));
  if (w.r11) w.r11 = TensorChain(sp, b11, chain_from_columns(cx, b11.total(), g, a.col_cells, sol.s, e01, e11));
  CoordChain rest = convert(t.body(), g);
  if (w.r10) rest = subtract(rest, d1(*w.r10).body());
  if (w.r01) rest = subtract(rest, d2(*w.r01).body());
  if (w.r11) rest = subtract(rest, d1(d2(*w.r11)).body());
  w.r00 = TensorChain(sp, b, rest);
  w.value = tensor_mass(w.r00);
  for (const auto* part : {&w.r10, &w.r01, &w.r11}) {
    if (*part) w.value += tensor_mass(**part);
  }
  w.method = sol.method;
  w.integral = sol.integral;
  if (w.value != sol.value) throw Error("tensor flat norm witness does not reproduce the solver value");
  return w;
}

bool verify_tensor_witness(const TensorChain& t, const TensorFlatWitness& w) {
  const GroupDescriptor& g = w.r00.body().descriptor();
  CoordChain sum = w.r00.body();
  Rational value = tensor_mass(w.r00);
  if (w.r10) {
    sum = add(sum, d1(*w.r10).body());
    value += tensor_mass(*w.r10);
  }
  if (w.r01) {
    sum = add(sum, d2(*w.r01).body());
    value += tensor_mass(*w.r01);
  }
  if (w.r11) {
    sum = add(sum, d1(d2(*w.r11)).body());
    value += tensor_mass(*w.r11);
  }
  return value == w.value && chains_equal(convert(t.body(), g), sum);
}

Rational flat_dist(const CoordChain& a, const CoordChain& b, const InducedComplex& cx, const FlatOptions& options) {
  return flat_norm_grid(subtract(a, b), cx, options).value;
}

Rational tensor_flat_dist(const TensorChain& a, const TensorChain& b, const InducedComplex& cx,
                          const FlatOptions& options) {
  return tensor_flat_norm_grid(tensor_subtract(a, b), cx, options).value;
}

NNorm n_norm(const CoordChain& c) {
  NNorm out{mass(c), slicing_mass(c).total};
  if (c.degree() > 0) {
    const CoordChain bd = boundary(canonicalize(c));
    out.n += mass(bd);
    out.n_sl += slicing_mass(bd).total;
  }
  return out;
}

NNorm n_norm_tensor(const TensorChain& t) {
  NNorm out{tensor_mass(t), slicing_mass_tensor(t).total};
  if (t.bidegree().k1 > 0) {
    const TensorChain p = d1(t);
    out.n += tensor_mass(p);
    out.n_sl += slicing_mass_tensor(p).total;
  }
  if (t.bidegree().k2 > 0) {
    const TensorChain p = d2(t);
    out.n += tensor_mass(p);
    out.n_sl += slicing_mass_tensor(p).total;
  }
  return out;
}

}  // namespace flatchain
