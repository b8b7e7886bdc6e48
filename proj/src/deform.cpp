#include "flatchain/deform.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "flatchain/errors.hpp"
#include "flatchain/linalg.hpp"
#include "flatchain/random.hpp"
#include "flatchain/slicing.hpp"

namespace flatchain {

namespace {

void check_grid(const GridSpec& grid, int n) {
  if (grid.eps <= 0) throw DomainError("grid size must be positive");
  if (static_cast<int>(grid.shift.size()) != n) throw StructuralError("grid shift has the wrong dimension");
}

// q = t / eps - 1/2; integral q means t lies on a rounding boundary.
Rational offset(const Rational& t, const Rational& eps) {
  Rational q = t / eps - Rational(1, 2);
  q.canonicalize();
  return q;
}

bool is_integral(const Rational& q) { return q.get_den() == 1; }

Integer ceil(const Rational& q) { return -floor(-q); }

// Grid index of the dual cell containing t on a point axis.
Integer round_point(const Rational& t, const Rational& eps) {
  const Rational q = offset(t, eps);
  if (is_integral(q)) throw DegenerateError("degenerate shift: a point sits on a dual-cell boundary");
  return floor(q) + 1;
}

// Enumerates the cartesian product of per-axis integer ranges [lo_i, hi_i].
void for_each_index(const std::vector<std::pair<Integer, Integer>>& ranges,
                    const std::function<void(const std::vector<Integer>&)>& fn) {
  for (const auto& [lo, hi] : ranges) {
    if (hi < lo) return;
  }
  std::vector<Integer> idx;
  for (const auto& r : ranges) idx.push_back(r.first);
  while (true) {
    fn(idx);
    std::size_t i = 0;
    for (; i < idx.size(); ++i) {
      if (++idx[i] <= ranges[i].second) break;
      idx[i] = ranges[i].first;
    }
    if (i == idx.size()) return;
  }
}

}  // namespace

int pairing_sign(const std::vector<int>& face_axes, int n) {
  std::vector<int> seq = face_axes;
  for (int i = 0; i < n; ++i) {
    if (std::find(face_axes.begin(), face_axes.end(), i) == face_axes.end()) seq.push_back(i);
  }
  return permutation_sign(seq);
}

CoordChain deform_P(const CoordChain& c, const GridSpec& grid) {
  const int n = c.ambient_dim();
  check_grid(grid, n);
  const Rational& eps = grid.eps;
  CoordChain out(n, c.degree(), c.descriptor());
  for (const auto& [cell, g] : c.terms()) {
    // Interval axes: grid slots whose centers lie strictly inside; point axes: the rounded point.
    std::vector<std::pair<Integer, Integer>> ranges;
    for (int i = 0; i < n; ++i) {
      const AxisFactor& f = cell.factor(i);
      const Rational& y = grid.shift[static_cast<std::size_t>(i)];
      if (f.is_interval()) {
        const Rational qa = offset(f.lo() + y, eps);
        const Rational qb = offset(f.hi() + y, eps);
        if (is_integral(qa) || is_integral(qb)) {
          throw DegenerateError("degenerate shift: a cell endpoint sits on a dual-cell boundary");
        }
        ranges.emplace_back(floor(qa) + 1, ceil(qb) - 1);
      } else {
        const Integer l = round_point(f.value() + y, eps);
        ranges.emplace_back(l, l);
      }
    }
    for_each_index(ranges, [&](const std::vector<Integer>& idx) {
      std::vector<AxisFactor> factors;
      for (int i = 0; i < n; ++i) {
        const Rational lo = Rational(idx[static_cast<std::size_t>(i)]) * eps;
        factors.push_back(cell.factor(i).is_interval() ? AxisFactor::interval(lo, lo + eps) : AxisFactor::point(lo));
      }
      out.accumulate(CoordCell(std::move(factors)), g);
    });
  }
  return canonicalize(out);
}

CoordChain deform_P(const SimplexChain& c, const GridSpec& grid) {
  const int n = c.ambient_dim();
  const int k = c.degree();
  check_grid(grid, n);
  const Rational& eps = grid.eps;
  const auto gammas = combinations(n, k);
  CoordChain out(n, k, c.descriptor());
  for (const auto& [simplex, g] : c.terms()) {
    const Simplex s = simplex.translated(grid.shift);
    const auto& v = s.vertices();
    for (const auto& gamma : gammas) {
      const Rational det = s.minor_det(gamma);
      if (det == 0) continue;
      const Coefficient coeff = sign(det) > 0 ? g : -g;
      RationalMatrix m(static_cast<std::size_t>(k), RationalVector(static_cast<std::size_t>(k)));
      for (int r = 0; r < k; ++r) {
        for (int e = 0; e < k; ++e) {
          m[static_cast<std::size_t>(r)][static_cast<std::size_t>(e)] =
              v[static_cast<std::size_t>(e) + 1][static_cast<std::size_t>(gamma[static_cast<std::size_t>(r)])] -
              v[0][static_cast<std::size_t>(gamma[static_cast<std::size_t>(r)])];
        }
      }
      std::vector<std::pair<Integer, Integer>> ranges;
      for (int ax : gamma) {
        Rational lo = v[0][static_cast<std::size_t>(ax)];
        Rational hi = lo;
        for (const auto& p : v) {
          lo = std::min(lo, p[static_cast<std::size_t>(ax)]);
          hi = std::max(hi, p[static_cast<std::size_t>(ax)]);
        }
        ranges.emplace_back(ceil(offset(lo, eps)), floor(offset(hi, eps)));
      }
      for_each_index(ranges, [&](const std::vector<Integer>& idx) {
        RationalVector rhs(static_cast<std::size_t>(k));
        for (int r = 0; r < k; ++r) {
          const Rational center = (Rational(idx[static_cast<std::size_t>(r)]) + Rational(1, 2)) * eps;
          rhs[static_cast<std::size_t>(r)] = center - v[0][static_cast<std::size_t>(gamma[static_cast<std::size_t>(r)])];
        }
        const auto t = solve(m, rhs);
        if (!t) throw Error("singular minor with nonzero determinant");
        Rational t0 = 1;
        for (const auto& ti : *t) t0 -= ti;
        bool zero = t0 == 0;
        bool outside = t0 < 0;
        for (const auto& ti : *t) {
          zero = zero || ti == 0;
          outside = outside || ti < 0;
        }
        if (outside) return;
        if (zero) throw DegenerateError("degenerate shift: a dual-face center sits on a simplex face");
        RationalVector p = v[0];
        for (int e = 0; e < k; ++e) {
          for (int i = 0; i < n; ++i) {
            p[static_cast<std::size_t>(i)] += (*t)[static_cast<std::size_t>(e)] *
                                              (v[static_cast<std::size_t>(e) + 1][static_cast<std::size_t>(i)] -
                                               v[0][static_cast<std::size_t>(i)]);
          }
        }
        std::vector<AxisFactor> factors(static_cast<std::size_t>(n), AxisFactor::point(0));
        std::size_t r = 0;
        for (int i = 0; i < n; ++i) {
          if (r < gamma.size() && gamma[r] == i) {
            const Rational lo = Rational(idx[r]) * eps;
            factors[static_cast<std::size_t>(i)] = AxisFactor::interval(lo, lo + eps);
            ++r;
          } else {
            factors[static_cast<std::size_t>(i)] =
                AxisFactor::point(Rational(round_point(p[static_cast<std::size_t>(i)], eps)) * eps);
          }
        }
        out.accumulate(CoordCell(std::move(factors)), coeff);
      });
    }
  }
  return canonicalize(out);
}

TensorChain deform_Pi0(const TensorChain& t, const GridSpec& grid) {
  return TensorChain(t.split(), t.bidegree(), deform_P(t.body(), grid));
}

RationalVector sample_shift(int n, const Rational& eps, std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                            unsigned bits) {
  Rng rng(seed, stream, index);
  const long steps = 1L << bits;
  RationalVector y;
  for (int i = 0; i < n; ++i) {
    const long odd = 2 * rng.uniform_int(0, steps / 2 - 1) + 1;
    Rational r = eps * Rational(odd, steps);
    r.canonicalize();
    y.push_back(r);
  }
  return y;
}

namespace {

// Cells of [0, eps) between consecutive breakpoints (eps/2 - e) mod eps.
std::vector<std::pair<Rational, Rational>> shift_cells(const std::vector<Rational>& endpoints, const Rational& eps) {
  std::vector<Rational> b{Rational(0), eps};
  for (const auto& e : endpoints) {
    Rational t = eps / 2 - e;
    t -= Rational(floor(t / eps)) * eps;
    t.canonicalize();
    b.push_back(t);
  }
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  std::vector<std::pair<Rational, Rational>> out;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) out.emplace_back(b[i], b[i + 1]);
  return out;
}

// Integrates a mass function that is constant on each box of the per-axis cells.
AverageMass integrate_boxes(const std::vector<std::vector<std::pair<Rational, Rational>>>& cells, const Rational& eps,
                            const std::function<Rational(const RationalVector&)>& mass_at) {
  const std::size_t n = cells.size();
  AverageMass out;
  out.exact = true;
  out.value = 0;
  std::vector<std::pair<Integer, Integer>> ranges;
  for (const auto& c : cells) ranges.emplace_back(0, static_cast<long>(c.size()) - 1);
  Rational vol_total = 1;
  for (std::size_t i = 0; i < n; ++i) vol_total *= eps;
  for_each_index(ranges, [&](const std::vector<Integer>& idx) {
    Rational weight = 1;
    std::vector<std::pair<Rational, Rational>> box;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& c = cells[i][idx[i].get_ui()];
      weight *= c.second - c.first;
      box.push_back(c);
    }
    // The box center is generic for the breakpoints; other ties get a nudge.
    static const Rational fractions[] = {Rational(1, 2), Rational(1, 3), Rational(2, 7), Rational(5, 11)};
    for (std::size_t attempt = 0;; ++attempt) {
      RationalVector y;
      for (const auto& [lo, hi] : box) y.push_back(lo + (hi - lo) * fractions[attempt]);
      try {
        out.value += weight * mass_at(y);
        break;
      } catch (const DegenerateError&) {
        if (attempt + 1 == std::size(fractions)) throw;
      }
    }
    ++out.boxes;
  });
  out.value /= vol_total;
  out.value.canonicalize();
  out.mean = to_double(out.value);
  return out;
}

template <class Chain>
AverageMass monte_carlo(const Chain& c, const Rational& eps, std::size_t samples, std::uint64_t seed) {
  if (samples < 2) throw DomainError("Monte-Carlo needs at least two samples");
  double sum = 0, sum2 = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::uint64_t attempt = 0;; ++attempt) {
      const RationalVector y = sample_shift(c.ambient_dim(), eps, seed, 0x5eed0000 + attempt, s);
      try {
        const double m = to_double(mass(deform_P(c, GridSpec{eps, y})));
        sum += m;
        sum2 += m * m;
        break;
      } catch (const DegenerateError&) {
        if (attempt > 64) throw;
      }
    }
  }
  AverageMass out;
  out.samples = samples;
  out.mean = sum / static_cast<double>(samples);
  const double var = std::max(0.0, (sum2 - sum * out.mean) / static_cast<double>(samples - 1));
  out.stderr_ = std::sqrt(var / static_cast<double>(samples));
  return out;
}

}  // namespace

AverageMass shift_average_mass_exact(const CoordChain& c, const Rational& eps) {
  const int n = c.ambient_dim();
  if (eps <= 0) throw DomainError("grid size must be positive");
  std::vector<std::vector<Rational>> endpoints(static_cast<std::size_t>(n));
  for (const auto& [cell, g] : c.terms()) {
    for (int i = 0; i < n; ++i) {
      const auto& f = cell.factor(i);
      endpoints[static_cast<std::size_t>(i)].push_back(f.lo());
      if (f.is_interval()) endpoints[static_cast<std::size_t>(i)].push_back(f.hi());
    }
  }
  std::vector<std::vector<std::pair<Rational, Rational>>> cells;
  for (const auto& e : endpoints) cells.push_back(shift_cells(e, eps));
  return integrate_boxes(cells, eps, [&](const RationalVector& y) { return mass(deform_P(c, GridSpec{eps, y})); });
}

AverageMass shift_average_mass_exact(const SimplexChain& c, const Rational& eps) {
  if (c.degree() != 1 || c.terms().size() != 1) {
    throw CapabilityError("exact shift averages for simplicial chains are limited to a single segment");
  }
  if (eps <= 0) throw DomainError("grid size must be positive");
  const auto& v = c.terms().front().first.vertices();
  std::vector<std::vector<std::pair<Rational, Rational>>> cells;
  for (int i = 0; i < c.ambient_dim(); ++i) {
    cells.push_back(shift_cells({v[0][static_cast<std::size_t>(i)], v[1][static_cast<std::size_t>(i)]}, eps));
  }
  return integrate_boxes(cells, eps, [&](const RationalVector& y) { return mass(deform_P(c, GridSpec{eps, y})); });
}

AverageMass shift_average_mass_mc(const CoordChain& c, const Rational& eps, std::size_t samples, std::uint64_t seed) {
  return monte_carlo(c, eps, samples, seed);
}

AverageMass shift_average_mass_mc(const SimplexChain& c, const Rational& eps, std::size_t samples,
                                  std::uint64_t seed) {
  return monte_carlo(c, eps, samples, seed);
}

Staircase staircase_surrogate(const Simplex& segment, const Coefficient& g, int steps) {
  if (segment.degree() != 1 || segment.ambient_dim() != 2) {
    throw CapabilityError("staircase surrogates are limited to planar segments");
  }
  if (steps < 1) throw DomainError("staircase needs at least one step");
  const auto& u = segment.vertices()[0];
  const auto& v = segment.vertices()[1];
  const Rational dx = (v[0] - u[0]) / steps;
  const Rational dy = (v[1] - u[1]) / steps;
  Staircase out{CoordChain(2, 1, g.descriptor()), SimplexChain(2, 2, g.descriptor()), Rational(0)};
  for (int j = 0; j < steps; ++j) {
    const RationalVector w0{u[0] + dx * j, u[1] + dy * j};
    const RationalVector w1{u[0] + dx * (j + 1), u[1] + dy * (j + 1)};
    const RationalVector corner{w1[0], w0[1]};
    if (dx != 0) {
      const auto f = dx > 0 ? AxisFactor::interval(w0[0], w1[0]) : AxisFactor::interval(w1[0], w0[0]);
      out.stair.accumulate(CoordCell({f, AxisFactor::point(w0[1])}), dx > 0 ? g : -g);
    }
    if (dy != 0) {
      const auto f = dy > 0 ? AxisFactor::interval(w0[1], w1[1]) : AxisFactor::interval(w1[1], w0[1]);
      out.stair.accumulate(CoordCell({AxisFactor::point(w1[0]), f}), dy > 0 ? g : -g);
    }
    if (dx != 0 && dy != 0) {
      out.filling.add_term(Simplex({w0, corner, w1}), g);
      out.filling_mass += g.norm() * abs(dx * dy) / 2;
    }
  }
  out.stair = canonicalize(out.stair);
  out.filling_mass.canonicalize();
  return out;
}

namespace {

ConvergenceRow summarize(const Rational& eps, std::vector<Rational> values, const Rational& slack) {
  ConvergenceRow row;
  row.eps = eps;
  row.surrogate_slack = slack;
  double sum = 0, sum2 = 0;
  for (const auto& v : values) {
    const double d = to_double(v);
    sum += d;
    sum2 += d * d;
  }
  const double count = static_cast<double>(values.size());
  row.mean = count > 0 ? sum / count : 0;
  if (values.size() > 1) {
    const double var = std::max(0.0, (sum2 - sum * row.mean) / (count - 1));
    row.stderr_ = std::sqrt(var / count);
  }
  row.values = std::move(values);
  return row;
}

template <class F>
Rational with_generic_shift(int n, const Rational& eps, std::uint64_t seed, std::size_t sample, F&& fn) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    const RationalVector y = sample_shift(n, eps, seed, 0xc0de0000 + attempt, sample);
    try {
      return fn(y);
    } catch (const DegenerateError&) {
      if (attempt > 64) throw;
    }
  }
}

}  // namespace

std::vector<ConvergenceRow> convergence_experiment(const CoordChain& c, const std::vector<Rational>& epsilons,
                                                   std::size_t samples, std::uint64_t seed, int refinement,
                                                   const FlatOptions& options) {
  std::vector<ConvergenceRow> rows;
  for (const auto& eps : epsilons) {
    std::vector<Rational> values;
    for (std::size_t s = 0; s < samples; ++s) {
      values.push_back(with_generic_shift(c.ambient_dim(), eps, seed, s, [&](const RationalVector& y) {
        const CoordChain p = deform_P(c, GridSpec{eps, y});
        const CoordChain shifted = canonicalize(translate(c, y));
        const auto cx = induced_complex({p, shifted}, Rational(0), refinement);
        return flat_dist(p, shifted, cx, options);
      }));
    }
    rows.push_back(summarize(eps, std::move(values), Rational(0)));
  }
  return rows;
}

std::vector<ConvergenceRow> convergence_experiment(const SimplexChain& c, const std::vector<Rational>& epsilons,
                                                   std::size_t samples, std::uint64_t seed, int refinement, int steps,
                                                   const FlatOptions& options) {
  if (c.degree() != 1 || c.ambient_dim() != 2 || c.terms().size() != 1) {
    throw CapabilityError("simplicial convergence runs are limited to a single planar segment");
  }
  const auto& [segment, g] = c.terms().front();
  std::vector<ConvergenceRow> rows;
  for (const auto& eps : epsilons) {
    std::vector<Rational> values;
    Rational slack = 0;
    for (std::size_t s = 0; s < samples; ++s) {
      values.push_back(with_generic_shift(2, eps, seed, s, [&](const RationalVector& y) {
        const CoordChain p = deform_P(c, GridSpec{eps, y});
        const Staircase st = staircase_surrogate(segment.translated(y), g, steps);
        slack = st.filling_mass;
        const auto cx = induced_complex({p, st.stair}, Rational(0), refinement);
        Rational v = flat_dist(p, st.stair, cx, options) + st.filling_mass;
        v.canonicalize();
        return v;
      }));
    }
    rows.push_back(summarize(eps, std::move(values), slack));
  }
  return rows;
}

std::pair<double, double> fit_geometric(const std::vector<double>& values) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0, count = 0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (!(values[j] > 0)) continue;
    const double x = static_cast<double>(j);
    const double y = std::log(values[j]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    count += 1;
  }
  if (count < 2) return {0.0, 0.0};
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / count;
  return {std::exp(slope), std::exp(intercept)};
}

CauchyResult cauchy_experiment(const TensorChain& t, int levels, const std::vector<RationalVector>& shifts,
                               int refinement, const FlatOptions& options) {
  if (levels < 1) throw DomainError("at least one level is required");
  if (shifts.empty()) throw DomainError("at least one shift is required");
  CauchyResult out;
  out.tensor_values.assign(static_cast<std::size_t>(levels), {});
  out.ordinary_values.assign(static_cast<std::size_t>(levels), {});
  for (const auto& y : shifts) {
    std::vector<TensorChain> q;
    for (int j = 0; j <= levels; ++j) {
      q.push_back(deform_Pi0(t, GridSpec{Rational(1, Integer(1) << j), y}));
    }
    for (int j = 0; j < levels; ++j) {
      const auto& a = q[static_cast<std::size_t>(j) + 1];
      const auto& b = q[static_cast<std::size_t>(j)];
      const auto cx = induced_complex({a.body(), b.body()}, Rational(0), refinement);
      out.tensor_values[static_cast<std::size_t>(j)].push_back(tensor_flat_dist(a, b, cx, options));
      out.ordinary_values[static_cast<std::size_t>(j)].push_back(flat_dist(a.body(), b.body(), cx, options));
    }
  }
  for (int j = 0; j < levels; ++j) {
    double st = 0, so = 0;
    for (const auto& v : out.tensor_values[static_cast<std::size_t>(j)]) st += to_double(v);
    for (const auto& v : out.ordinary_values[static_cast<std::size_t>(j)]) so += to_double(v);
    out.tensor_mean.push_back(st / static_cast<double>(shifts.size()));
    out.ordinary_mean.push_back(so / static_cast<double>(shifts.size()));
  }
  std::tie(out.ratio, out.constant) = fit_geometric(out.tensor_mean);
  out.decreasing = true;
  for (std::size_t j = 1; j < out.tensor_mean.size(); ++j) {
    if (!(out.tensor_mean[j] < out.tensor_mean[j - 1])) out.decreasing = false;
  }
  // Partial sums of the data stay within a factor two of those of the fit.
  out.partial_sums_consistent = out.constant > 0;
  double data = 0, fit = 0;
  for (std::size_t j = 0; j < out.tensor_mean.size(); ++j) {
    data += out.tensor_mean[j];
    fit += out.constant * std::pow(out.ratio, static_cast<double>(j));
    if (!(data <= 2 * fit && fit <= 2 * data)) out.partial_sums_consistent = false;
  }
  return out;
}

TensorChain triangle_approximant(const Coefficient& g, int j) {
  if (j < 0 || j > 20) throw DomainError("approximant level out of range");
  const Integer count = Integer(1) << j;
  const Rational h(1, count);
  CoordChain body(2, 2, g.descriptor());
  for (long i = 0; i < count.get_si(); ++i) {
    const Rational t = (Rational(i) + Rational(1, 2)) * h;
    body.accumulate(CoordCell({AxisFactor::interval(0, 1 - t), AxisFactor::interval(h * i, h * (i + 1))}), g);
  }
  return TensorChain(Split{1, 1}, Bidegree{1, 1}, body);
}

TensorChain staircase_chain(const Coefficient& g, int j) { return d1(triangle_approximant(g, j)); }

Counterexample counterexample_build(const Coefficient& g, int j_max, bool with_grid_distance) {
  if (j_max < 1) throw DomainError("at least one level is required");
  Counterexample out{SimplexChain(2, 2, g.descriptor()), {}, {}};
  out.q.add_term(Simplex({{0, 0}, {1, 0}, {0, 1}}), g);
  out.q_mass = s_mass(out.q);
  std::vector<TensorChain> t;
  for (int j = 1; j <= j_max + 1; ++j) t.push_back(triangle_approximant(g, j));
  for (int j = 1; j <= j_max; ++j) {
    const TensorChain& tj = t[static_cast<std::size_t>(j) - 1];
    const TensorChain& tn = t[static_cast<std::size_t>(j)];
    CounterexampleLevel lv{j, d1(tj), d1(d2(tj)), {}, false, {}, false, std::nullopt, Rational(0), Coefficient::zero(g.descriptor())};
    lv.slicing_mass = slicing_mass_tensor(lv.r).total;
    lv.b_anticommutes = tensor_add(lv.b, d2(d1(tj))).empty();
    const TensorChain rn = d1(tn);
    const TensorChain diff = tensor_subtract(tj, tn);
    lv.prism_mass = tensor_mass(diff);
    lv.prism_identity = tensor_equal(tensor_subtract(lv.r, rn), d1(diff));
    if (with_grid_distance) {
      const auto cx = induced_complex({lv.r.body(), rn.body()}, Rational(0), 1);
      lv.grid_distance = tensor_flat_dist(rn, lv.r, cx);
    }
    for (const auto& [cell, coeff] : lv.b.body().terms()) {
      const Rational& x1 = cell.factor(0).value();
      const Rational& x2 = cell.factor(1).value();
      if (x1 > 0) lv.b_mass_right += coeff.norm();
      if (x1 + x2 > 1) lv.b_chi_antidiagonal += coeff;
    }
    out.levels.push_back(std::move(lv));
  }
  return out;
}

}  // namespace flatchain
