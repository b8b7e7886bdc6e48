#include "flatchain/cubchain.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "flatchain/errors.hpp"

namespace flatchain {

AxisFactor AxisFactor::point(Rational q) {
  q.canonicalize();
  return AxisFactor(q, q, false);
}

AxisFactor AxisFactor::interval(Rational a, Rational b) {
  if (!(a < b)) {
    throw DomainError("interval [" + flatchain::to_string(a) + "," + flatchain::to_string(b) + "] is degenerate");
  }
  a.canonicalize();
  b.canonicalize();
  return AxisFactor(std::move(a), std::move(b), true);
}

AxisFactor AxisFactor::shifted(const Rational& t) const {
  return AxisFactor(Rational(lo_ + t), Rational(hi_ + t), interval_);
}

bool AxisFactor::operator==(const AxisFactor& o) const {
  return interval_ == o.interval_ && lo_ == o.lo_ && hi_ == o.hi_;
}

bool AxisFactor::operator<(const AxisFactor& o) const {
  if (interval_ != o.interval_) return !interval_;
  if (lo_ != o.lo_) return lo_ < o.lo_;
  return hi_ < o.hi_;
}

CoordCell::CoordCell(std::vector<AxisFactor> factors) : factors_(std::move(factors)) {
  if (factors_.size() > 31) throw DomainError("ambient dimension above 31 is not supported");
}

int CoordCell::dimension() const {
  return static_cast<int>(std::count_if(factors_.begin(), factors_.end(), [](const AxisFactor& f) { return f.is_interval(); }));
}

AxisMask CoordCell::axis_mask() const {
  AxisMask m = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].is_interval()) m |= AxisMask{1} << i;
  }
  return m;
}

std::vector<int> CoordCell::axes() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].is_interval()) out.push_back(static_cast<int>(i));
  }
  return out;
}

Rational CoordCell::volume() const {
  Rational v(1);
  for (const auto& f : factors_) {
    if (f.is_interval()) v *= f.length();
  }
  return v;
}

CoordCell CoordCell::translated(std::span<const Rational> y) const {
  if (y.size() != factors_.size()) throw StructuralError("shift length does not match ambient dimension");
  std::vector<AxisFactor> out;
  out.reserve(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) out.push_back(factors_[i].shifted(y[i]));
  return CoordCell(std::move(out));
}

bool CoordCell::operator<(const CoordCell& o) const {
  return std::lexicographical_compare(factors_.begin(), factors_.end(), o.factors_.begin(), o.factors_.end());
}

std::string CoordCell::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) s += "x";
    const auto& f = factors_[i];
    if (f.is_interval()) {
      s += "[" + flatchain::to_string(f.lo()) + "," + flatchain::to_string(f.hi()) + "]";
    } else {
      s += "{" + flatchain::to_string(f.value()) + "}";
    }
  }
  return s;
}

bool BoundingBox::contains(const BoundingBox& other) const {
  if (other.empty) return true;
  if (empty || bounds.size() != other.bounds.size()) return false;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (other.bounds[i].first < bounds[i].first || other.bounds[i].second > bounds[i].second) return false;
  }
  return true;
}

BoundingBox BoundingBox::inflated(const Rational& r) const {
  BoundingBox b = *this;
  for (auto& [lo, hi] : b.bounds) {
    lo -= r;
    hi += r;
  }
  return b;
}

BoundingBox BoundingBox::translated(std::span<const Rational> y) const {
  BoundingBox b = *this;
  for (std::size_t i = 0; i < b.bounds.size() && i < y.size(); ++i) {
    b.bounds[i].first += y[i];
    b.bounds[i].second += y[i];
  }
  return b;
}

bool BoundingBox::operator==(const BoundingBox& o) const {
  if (empty || o.empty) return empty == o.empty;
  return bounds == o.bounds;
}

CoordChain::CoordChain(int n, int k, GroupDescriptor g) : n_(n), k_(k), g_(std::move(g)) {
  if (n < 0 || k < 0 || k > n) throw DomainError("invalid chain signature n=" + std::to_string(n) + " k=" + std::to_string(k));
}

void CoordChain::accumulate(const CoordCell& cell, const Coefficient& g) {
  if (cell.ambient_dim() != n_ || cell.dimension() != k_) {
    throw StructuralError("cell " + cell.to_string() + " does not have signature n=" + std::to_string(n_) +
                          " k=" + std::to_string(k_));
  }
  if (!(g.descriptor() == g_)) throw StructuralError("coefficient group mismatch");
  if (g.is_zero()) return;
  auto it = terms_.find(cell);
  if (it == terms_.end()) {
    terms_.emplace(cell, g);
  } else {
    it->second += g;
    if (it->second.is_zero()) terms_.erase(it);
  }
  canonical_ = false;
}

CoordChain CoordChain::raw(int n, int k, GroupDescriptor g, const std::vector<std::pair<CoordCell, Coefficient>>& terms) {
  CoordChain c(n, k, std::move(g));
  for (const auto& [cell, coeff] : terms) c.accumulate(cell, coeff);
  c.canonical_ = c.terms_.size() <= 1;
  return c;
}

CoordChain CoordChain::from_terms(int n, int k, GroupDescriptor g,
                                  const std::vector<std::pair<CoordCell, Coefficient>>& terms) {
  return canonicalize(raw(n, k, std::move(g), terms));
}

bool CoordChain::same_signature(const CoordChain& o) const { return n_ == o.n_ && k_ == o.k_ && g_ == o.g_; }

void CoordChain::require_signature(const CoordChain& o, const char* what) const {
  if (!same_signature(o)) {
    throw StructuralError(std::string(what) + ": signature mismatch (n=" + std::to_string(n_) + ",k=" +
                          std::to_string(k_) + "," + g_.to_string() + ") vs (n=" + std::to_string(o.n_) +
                          ",k=" + std::to_string(o.k_) + "," + o.g_.to_string() + ")");
  }
}

namespace {

struct GroupKey {
  AxisMask mask;
  std::vector<Rational> points;
  bool operator<(const GroupKey& o) const {
    if (mask != o.mask) return mask < o.mask;
    return points < o.points;
  }
};

GroupKey group_key(const CoordCell& c) {
  GroupKey key{c.axis_mask(), {}};
  for (const auto& f : c.factors()) {
    if (!f.is_interval()) key.points.push_back(f.value());
  }
  return key;
}

bool open_boxes_overlap(const CoordCell& a, const CoordCell& b, const std::vector<int>& axes) {
  for (int ax : axes) {
    const auto& fa = a.factor(ax);
    const auto& fb = b.factor(ax);
    if (!(fa.lo() < fb.hi() && fb.lo() < fa.hi())) return false;
  }
  return true;
}

int find_root(std::vector<int>& parent, int i) {
  while (parent[static_cast<std::size_t>(i)] != i) {
    parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
    i = parent[static_cast<std::size_t>(i)];
  }
  return i;
}

using Entry = std::pair<const CoordCell*, const Coefficient*>;

// Splits every cell of a cluster along the cluster's own endpoints and sums the pieces.
void refine_cluster(const std::vector<Entry>& cluster, const std::vector<int>& axes, CoordChain::Terms& out) {
  std::vector<std::vector<Rational>> cuts(axes.size());
  for (std::size_t a = 0; a < axes.size(); ++a) {
    for (const auto& [cell, g] : cluster) {
      cuts[a].push_back(cell->factor(axes[a]).lo());
      cuts[a].push_back(cell->factor(axes[a]).hi());
    }
    std::sort(cuts[a].begin(), cuts[a].end());
    cuts[a].erase(std::unique(cuts[a].begin(), cuts[a].end()), cuts[a].end());
  }
  for (const auto& [cell, g] : cluster) {
    std::vector<std::pair<std::size_t, std::size_t>> ranges(axes.size());
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const auto& f = cell->factor(axes[a]);
      const auto lo = std::lower_bound(cuts[a].begin(), cuts[a].end(), f.lo()) - cuts[a].begin();
      const auto hi = std::lower_bound(cuts[a].begin(), cuts[a].end(), f.hi()) - cuts[a].begin();
      ranges[a] = {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
    }
    std::vector<std::size_t> idx(axes.size());
    for (std::size_t a = 0; a < axes.size(); ++a) idx[a] = ranges[a].first;
    while (true) {
      std::vector<AxisFactor> factors = cell->factors();
      for (std::size_t a = 0; a < axes.size(); ++a) {
        factors[static_cast<std::size_t>(axes[a])] = AxisFactor::interval(cuts[a][idx[a]], cuts[a][idx[a] + 1]);
      }
      CoordCell piece(std::move(factors));
      auto it = out.find(piece);
      if (it == out.end()) {
        out.emplace(std::move(piece), *g);
      } else {
        it->second += *g;
      }
      std::size_t a = 0;
      for (; a < axes.size(); ++a) {
        if (++idx[a] < ranges[a].second) break;
        idx[a] = ranges[a].first;
      }
      if (a == axes.size()) break;
    }
  }
}

}  // namespace

CoordChain canonicalize(const CoordChain& c) {
  if (c.canonical_) return c;
  CoordChain out(c.n_, c.k_, c.g_);
  if (c.k_ == 0) {
    for (const auto& [cell, g] : c.terms_) {
      if (!g.is_zero()) out.terms_.emplace(cell, g);
    }
    return out;
  }
  std::map<GroupKey, std::vector<Entry>> groups;
  for (const auto& [cell, g] : c.terms_) groups[group_key(cell)].push_back({&cell, &g});

  CoordChain::Terms result;
  for (auto& [key, entries] : groups) {
    std::vector<int> axes;
    for (int i = 0; i < c.n_; ++i) {
      if (key.mask & (AxisMask{1} << i)) axes.push_back(i);
    }
    const int first = axes.front();
    std::sort(entries.begin(), entries.end(), [first](const Entry& a, const Entry& b) {
      return a.first->factor(first).lo() < b.first->factor(first).lo();
    });
    std::vector<int> parent(entries.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<int> active;
    for (int i = 0; i < static_cast<int>(entries.size()); ++i) {
      const auto& cur = *entries[static_cast<std::size_t>(i)].first;
      std::erase_if(active, [&](int j) {
        return !(cur.factor(first).lo() < entries[static_cast<std::size_t>(j)].first->factor(first).hi());
      });
      for (int j : active) {
        if (open_boxes_overlap(cur, *entries[static_cast<std::size_t>(j)].first, axes)) {
          parent[static_cast<std::size_t>(find_root(parent, i))] = find_root(parent, j);
        }
      }
      active.push_back(i);
    }
    std::map<int, std::vector<Entry>> clusters;
    for (int i = 0; i < static_cast<int>(entries.size()); ++i) {
      clusters[find_root(parent, i)].push_back(entries[static_cast<std::size_t>(i)]);
    }
    for (const auto& [root, cluster] : clusters) {
      if (cluster.size() == 1) {
        result.emplace(*cluster.front().first, *cluster.front().second);
      } else {
        refine_cluster(cluster, axes, result);
      }
    }
  }
  for (auto& [cell, g] : result) {
    if (!g.is_zero()) out.terms_.emplace(cell, std::move(g));
  }
  return out;
}

CoordChain add(const CoordChain& a, const CoordChain& b) {
  a.require_signature(b, "add");
  if (b.empty()) return canonicalize(a);
  if (a.empty()) return canonicalize(b);
  CoordChain sum = a;
  for (const auto& [cell, g] : b.terms()) sum.accumulate(cell, g);
  return canonicalize(sum);
}

CoordChain negate(const CoordChain& c) {
  CoordChain out(c.ambient_dim(), c.degree(), c.descriptor());
  for (const auto& [cell, g] : c.terms()) out.accumulate(cell, -g);
  return c.is_canonical() ? canonicalize(out) : out;
}

CoordChain subtract(const CoordChain& a, const CoordChain& b) { return add(a, negate(b)); }

CoordChain scale(const CoordChain& c, long m) {
  CoordChain out(c.ambient_dim(), c.degree(), c.descriptor());
  for (const auto& [cell, g] : c.terms()) out.accumulate(cell, g.times(m));
  return canonicalize(out);
}

CoordChain boundary(const CoordChain& c) {
  if (c.degree() == 0) throw DomainError("boundary of a 0-chain is undefined");
  CoordChain out(c.ambient_dim(), c.degree() - 1, c.descriptor());
  for (const auto& [cell, g] : c.terms()) {
    int p = 0;
    for (int ax = 0; ax < cell.ambient_dim(); ++ax) {
      const auto& f = cell.factor(ax);
      if (!f.is_interval()) continue;
      std::vector<AxisFactor> top = cell.factors();
      std::vector<AxisFactor> bottom = cell.factors();
      top[static_cast<std::size_t>(ax)] = AxisFactor::point(f.hi());
      bottom[static_cast<std::size_t>(ax)] = AxisFactor::point(f.lo());
      const Coefficient signed_g = (p % 2 == 0) ? g : -g;
      out.accumulate(CoordCell(std::move(top)), signed_g);
      out.accumulate(CoordCell(std::move(bottom)), -signed_g);
      ++p;
    }
  }
  return canonicalize(out);
}

Rational mass(const CoordChain& c) {
  const CoordChain cc = canonicalize(c);
  Rational m(0);
  for (const auto& [cell, g] : cc.terms()) m += g.norm() * cell.volume();
  return m;
}

CoordChain translate(const CoordChain& c, std::span<const Rational> y) {
  if (static_cast<int>(y.size()) != c.ambient_dim()) throw StructuralError("shift length does not match ambient dimension");
  CoordChain out(c.ambient_dim(), c.degree(), c.descriptor());
  for (const auto& [cell, g] : c.terms()) out.accumulate(cell.translated(y), g);
  return c.is_canonical() ? canonicalize(out) : out;
}

BoundingBox support_box(const CoordChain& c) {
  BoundingBox box;
  for (const auto& [cell, g] : c.terms()) {
    if (box.empty) {
      box.empty = false;
      for (const auto& f : cell.factors()) box.bounds.emplace_back(f.lo(), f.hi());
      continue;
    }
    for (std::size_t i = 0; i < box.bounds.size(); ++i) {
      const auto& f = cell.factors()[i];
      if (f.lo() < box.bounds[i].first) box.bounds[i].first = f.lo();
      if (f.hi() > box.bounds[i].second) box.bounds[i].second = f.hi();
    }
  }
  return box;
}

bool chains_equal(const CoordChain& a, const CoordChain& b) {
  if (!a.same_signature(b)) return false;
  return subtract(a, b).empty();
}

CoordChain cell_chain(const CoordCell& cell, const Coefficient& g) {
  CoordChain c(cell.ambient_dim(), cell.dimension(), g.descriptor());
  c.accumulate(cell, g);
  return canonicalize(c);
}

std::string to_string(const CoordChain& c) {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [cell, g] : c.terms()) {
    if (!first) os << " + ";
    first = false;
    os << g.to_string() << "*" << cell.to_string();
  }
  return os.str();
}

}  // namespace flatchain
