#include "flatchain/simplexchain.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "flatchain/errors.hpp"
#include "flatchain/lp.hpp"
#include "flatchain/random.hpp"

namespace flatchain {

Simplex::Simplex(std::vector<RationalVector> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw DomainError("simplex needs at least one vertex");
  for (const auto& v : vertices_) {
    if (v.size() != vertices_.front().size()) throw DomainError("simplex vertices of different dimension");
  }
  if (degree() > ambient_dim()) throw DomainError("simplex degree exceeds ambient dimension");
  if (rank(edges()) != degree()) throw DomainError("degenerate simplex");
}

RationalMatrix Simplex::edges() const {
  RationalMatrix e;
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    RationalVector row(vertices_[i].size());
    for (std::size_t t = 0; t < row.size(); ++t) row[t] = vertices_[i][t] - vertices_[0][t];
    e.push_back(std::move(row));
  }
  return e;
}

Rational Simplex::squared_volume() const {
  const Integer f = factorial(degree());
  return gram_determinant(edges()) / Rational(f * f);
}

Rational Simplex::minor_det(const std::vector<int>& gamma) const {
  if (static_cast<int>(gamma.size()) != degree()) throw DomainError("axis subset size differs from simplex degree");
  const RationalMatrix e = edges();
  RationalMatrix m(gamma.size(), RationalVector(gamma.size()));
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    for (std::size_t r = 0; r < gamma.size(); ++r) m[r][i] = e[i][static_cast<std::size_t>(gamma[r])];
  }
  return determinant(std::move(m));
}

Simplex Simplex::translated(std::span<const Rational> y) const {
  std::vector<RationalVector> out = vertices_;
  for (auto& v : out) {
    for (std::size_t t = 0; t < v.size(); ++t) v[t] += y[t];
  }
  return Simplex(std::move(out));
}

SimplexChain::SimplexChain(int n, int k, GroupDescriptor g) : n_(n), k_(k), g_(std::move(g)) {
  if (n < 1 || k < 0 || k > n) throw DomainError("invalid simplicial chain signature");
}

void SimplexChain::add_term(Simplex s, Coefficient g) {
  if (s.ambient_dim() != n_ || s.degree() != k_) throw StructuralError("simplex does not match chain signature");
  if (!(g.descriptor() == g_)) throw StructuralError("coefficient group mismatch");
  if (g.is_zero()) return;
  terms_.emplace_back(std::move(s), std::move(g));
}

SimplexMass s_mass(const SimplexChain& c) {
  SimplexMass out;
  Rational exact(0);
  bool all_square = true;
  for (const auto& [s, g] : c.terms()) {
    const Rational sq = s.squared_volume();
    out.squared_volumes.push_back(sq);
    const Rational norm = g.norm();
    out.value += to_double(norm) * std::sqrt(to_double(sq));
    Rational root;
    if (all_square && is_perfect_square(sq, &root)) {
      exact += norm * root;
    } else {
      all_square = false;
    }
  }
  if (all_square) out.exact = exact;
  return out;
}

SimplexChain s_boundary(const SimplexChain& c) {
  if (c.degree() == 0) throw DomainError("boundary of a 0-chain is undefined");
  // Faces keyed by sorted vertex list; the sorting parity goes into the coefficient.
  std::map<std::vector<RationalVector>, Coefficient> faces;
  std::vector<std::vector<RationalVector>> order;
  for (const auto& [s, g] : c.terms()) {
    const auto& v = s.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::vector<RationalVector> face;
      for (std::size_t t = 0; t < v.size(); ++t) {
        if (t != i) face.push_back(v[t]);
      }
      std::vector<int> idx(face.size());
      std::iota(idx.begin(), idx.end(), 0);
      std::sort(idx.begin(), idx.end(), [&](int a, int b) { return face[static_cast<std::size_t>(a)] < face[static_cast<std::size_t>(b)]; });
      std::vector<RationalVector> sorted;
      for (int t : idx) sorted.push_back(face[static_cast<std::size_t>(t)]);
      const int parity = permutation_sign(idx);
      const Coefficient term = ((i % 2 == 0) == (parity > 0)) ? g : -g;
      auto it = faces.find(sorted);
      if (it == faces.end()) {
        faces.emplace(sorted, term);
        order.push_back(sorted);
      } else {
        it->second += term;
      }
    }
  }
  SimplexChain out(c.ambient_dim(), c.degree() - 1, c.descriptor());
  for (const auto& key : order) {
    const Coefficient& g = faces.at(key);
    if (!g.is_zero()) out.add_term(Simplex(key), g);
  }
  return out;
}

Rational proj_mass(const Simplex& s, const std::vector<int>& gamma) {
  if (static_cast<int>(gamma.size()) != s.degree()) throw DomainError("axis subset size differs from simplex degree");
  return abs(s.minor_det(gamma)) / Rational(factorial(s.degree()));
}

Rational sum_squared_projections(const Simplex& s) {
  Rational total(0);
  for (const auto& gamma : combinations(s.ambient_dim(), s.degree())) {
    const Rational p = proj_mass(s, gamma);
    total += p * p;
  }
  return total;
}

bool null_intersection(const Simplex& a, const Simplex& b) {
  if (a.degree() != b.degree() || a.ambient_dim() != b.ambient_dim()) return true;
  RationalMatrix span = a.edges();
  for (const auto& v : b.vertices()) {
    RationalVector d(v.size());
    for (std::size_t t = 0; t < v.size(); ++t) d[t] = v[t] - a.vertices()[0][t];
    span.push_back(std::move(d));
  }
  if (rank(span) > a.degree()) return true;
  // Same affine k-plane: the relative interiors overlap iff some point has
  // strictly positive barycentric coordinates in both.
  const std::size_t k1 = static_cast<std::size_t>(a.degree()) + 1;
  const std::size_t n = static_cast<std::size_t>(a.ambient_dim());
  LinearProgram lp;
  lp.num_vars = 2 * k1 + 1;
  const std::size_t t = 2 * k1;
  lp.objective.assign(lp.num_vars, Rational(0));
  lp.objective[t] = -1;
  LinearProgram::Row sum_a{{}, Sense::eq, Rational(1)};
  LinearProgram::Row sum_b{{}, Sense::eq, Rational(1)};
  for (std::size_t i = 0; i < k1; ++i) {
    sum_a.coeffs.push_back({i, Rational(1)});
    sum_b.coeffs.push_back({k1 + i, Rational(1)});
  }
  lp.rows.push_back(sum_a);
  lp.rows.push_back(sum_b);
  for (std::size_t d = 0; d < n; ++d) {
    LinearProgram::Row row{{}, Sense::eq, Rational(0)};
    for (std::size_t i = 0; i < k1; ++i) {
      row.coeffs.push_back({i, a.vertices()[i][d]});
      row.coeffs.push_back({k1 + i, Rational(-b.vertices()[i][d])});
    }
    lp.rows.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < 2 * k1; ++i) lp.rows.push_back({{{i, Rational(1)}, {t, Rational(-1)}}, Sense::ge, Rational(0)});
  lp.rows.push_back({{{t, Rational(1)}}, Sense::le, Rational(1)});
  const LpResult res = solve_lp(lp);
  return res.status != LpStatus::optimal || res.x[t] == 0;
}

void require_null_intersections(const SimplexChain& c) {
  const auto& terms = c.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      if (!null_intersection(terms[i].first, terms[j].first)) {
        throw PreconditionError("simplices " + std::to_string(i) + " and " + std::to_string(j) +
                                " overlap in a set of positive measure");
      }
    }
  }
}

Rational s_slicing_mass(const SimplexChain& c) {
  require_null_intersections(c);
  const auto gammas = combinations(c.ambient_dim(), c.degree());
  Rational total(0);
  for (const auto& [s, g] : c.terms()) {
    Rational cell(0);
    for (const auto& gamma : gammas) cell += proj_mass(s, gamma);
    total += g.norm() * cell;
  }
  return total;
}

CoordChain s_slice0(const SimplexChain& c, const std::vector<int>& gamma, const RationalVector& x) {
  if (static_cast<int>(gamma.size()) != c.degree()) throw DomainError("axis subset size differs from chain degree");
  if (x.size() != gamma.size()) throw DomainError("slice parameter has the wrong dimension");
  const std::size_t k = gamma.size();
  CoordChain out(c.ambient_dim(), 0, c.descriptor());
  for (const auto& [s, g] : c.terms()) {
    const Rational det = s.minor_det(gamma);
    if (det == 0) continue;
    const RationalMatrix e = s.edges();
    const RationalVector& v0 = s.vertices()[0];
    RationalMatrix m(k, RationalVector(k));
    RationalVector rhs(k);
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t i = 0; i < k; ++i) m[r][i] = e[i][static_cast<std::size_t>(gamma[r])];
      rhs[r] = x[r] - v0[static_cast<std::size_t>(gamma[r])];
    }
    const auto t = solve(m, rhs);
    Rational first(1);
    for (const auto& ti : *t) first -= ti;
    bool inside = first > 0;
    bool on_face = first == 0;
    for (const auto& ti : *t) {
      if (ti < 0) inside = false;
      if (ti == 0) on_face = true;
    }
    if (on_face && (first >= 0) && std::all_of(t->begin(), t->end(), [](const Rational& q) { return q >= 0; })) {
      throw DegenerateError("degenerate slice: point lies on a projected face");
    }
    if (!inside) continue;
    std::vector<AxisFactor> pt;
    for (std::size_t d = 0; d < v0.size(); ++d) {
      Rational coord = v0[d];
      for (std::size_t i = 0; i < k; ++i) coord += (*t)[i] * e[i][d];
      pt.push_back(AxisFactor::point(coord));
    }
    out.accumulate(CoordCell(std::move(pt)), det > 0 ? g : -g);
  }
  return canonicalize(out);
}

std::vector<double> haar_orthogonal(int n, std::uint64_t seed, std::uint64_t index) {
  Rng rng(seed, 0x6a61u, index);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  }
  std::vector<double> out(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(i * n + j)] = q(i, j);
  }
  return out;
}

GrassmannEstimate grassmann_avg(const Simplex& s, std::size_t samples, std::uint64_t seed) {
  if (samples < 100) throw DomainError("grassmann_avg needs at least 100 samples");
  const int n = s.ambient_dim();
  const int k = s.degree();
  Eigen::MatrixXd e(n, k);
  const RationalMatrix edges = s.edges();
  for (int i = 0; i < k; ++i) {
    for (int d = 0; d < n; ++d) e(d, i) = to_double(edges[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)]);
  }
  const auto gammas = combinations(n, k);
  double kfact = 1;
  for (int i = 2; i <= k; ++i) kfact *= i;
  double sum = 0;
  double sum_sq = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const auto qv = haar_orthogonal(n, seed, i);
    Eigen::MatrixXd q(n, n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) q(r, c) = qv[static_cast<std::size_t>(r * n + c)];
    }
    const Eigen::MatrixXd re = q * e;
    double total = 0;
    for (const auto& gamma : gammas) {
      Eigen::MatrixXd m(k, k);
      for (int r = 0; r < k; ++r) m.row(r) = re.row(gamma[static_cast<std::size_t>(r)]);
      total += std::abs(k == 0 ? 1.0 : m.determinant()) / kfact;
    }
    sum += total;
    sum_sq += total * total;
  }
  GrassmannEstimate out;
  out.n = n;
  out.k = k;
  out.samples = samples;
  const double ns = static_cast<double>(samples);
  out.estimate = sum / ns;
  const double var = std::max(0.0, (sum_sq - ns * out.estimate * out.estimate) / (ns - 1));
  out.stderr_ = std::sqrt(var / ns);
  out.mass = std::sqrt(to_double(s.squared_volume()));
  out.ratio = out.estimate / out.mass;
  out.ratio_stderr = out.stderr_ / out.mass;
  return out;
}

SimplexChain triangulate(const CoordChain& c) {
  SimplexChain out(c.ambient_dim(), c.degree(), c.descriptor());
  for (const auto& [cell, g] : c.terms()) {
    const std::vector<int> axes = cell.axes();
    std::vector<int> perm(axes.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<RationalVector> verts;
      RationalVector v(static_cast<std::size_t>(cell.ambient_dim()));
      for (int d = 0; d < cell.ambient_dim(); ++d) v[static_cast<std::size_t>(d)] = cell.factor(d).lo();
      verts.push_back(v);
      for (int p : perm) {
        const int ax = axes[static_cast<std::size_t>(p)];
        v[static_cast<std::size_t>(ax)] = cell.factor(ax).hi();
        verts.push_back(v);
      }
      if (permutation_sign(perm) < 0 && verts.size() >= 3) std::swap(verts[1], verts[2]);
      out.add_term(Simplex(std::move(verts)), g);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

}  // namespace flatchain
