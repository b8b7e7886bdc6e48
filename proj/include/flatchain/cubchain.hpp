#pragma once

// Coordinate polyhedral chains: finite sums of axis-aligned product cells
// with exact rational endpoints.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flatchain/coeff.hpp"
#include "flatchain/rational.hpp"

namespace flatchain {

class AxisFactor {
 public:
  static AxisFactor point(Rational q);
  // Requires a < b; degenerate intervals are rejected.
  static AxisFactor interval(Rational a, Rational b);

  bool is_interval() const { return interval_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  // Coordinate of a point factor.
  const Rational& value() const { return lo_; }
  Rational length() const { return hi_ - lo_; }

  AxisFactor shifted(const Rational& t) const;

  bool operator==(const AxisFactor& o) const;
  bool operator<(const AxisFactor& o) const;

 private:
  AxisFactor(Rational lo, Rational hi, bool interval) : lo_(std::move(lo)), hi_(std::move(hi)), interval_(interval) {}

  Rational lo_;
  Rational hi_;
  bool interval_ = false;
};

using AxisMask = std::uint32_t;

// Orientation is the wedge of the interval axes in increasing order.
class CoordCell {
 public:
  CoordCell() = default;
  explicit CoordCell(std::vector<AxisFactor> factors);

  int ambient_dim() const { return static_cast<int>(factors_.size()); }
  int dimension() const;
  AxisMask axis_mask() const;
  std::vector<int> axes() const;
  const std::vector<AxisFactor>& factors() const { return factors_; }
  const AxisFactor& factor(int axis) const { return factors_[static_cast<std::size_t>(axis)]; }

  Rational volume() const;
  CoordCell translated(std::span<const Rational> y) const;

  bool operator==(const CoordCell& o) const { return factors_ == o.factors_; }
  bool operator<(const CoordCell& o) const;

  std::string to_string() const;

 private:
  std::vector<AxisFactor> factors_;
};

struct BoundingBox {
  bool empty = true;
  std::vector<std::pair<Rational, Rational>> bounds;

  bool contains(const BoundingBox& other) const;
  BoundingBox inflated(const Rational& r) const;
  BoundingBox translated(std::span<const Rational> y) const;
  bool operator==(const BoundingBox& o) const;
};

class CoordChain {
 public:
  using Terms = std::map<CoordCell, Coefficient>;

  CoordChain() : CoordChain(0, 0, GroupDescriptor::integers()) {}
  CoordChain(int n, int k, GroupDescriptor g);

  // Identical cells are merged; overlapping cells are kept until canonicalize().
  static CoordChain raw(int n, int k, GroupDescriptor g, const std::vector<std::pair<CoordCell, Coefficient>>& terms);
  // Canonical chain built from arbitrary terms.
  static CoordChain from_terms(int n, int k, GroupDescriptor g,
                               const std::vector<std::pair<CoordCell, Coefficient>>& terms);

  int ambient_dim() const { return n_; }
  int degree() const { return k_; }
  const GroupDescriptor& descriptor() const { return g_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_canonical() const { return canonical_; }

  // Accumulates without canonicalizing.
  void accumulate(const CoordCell& cell, const Coefficient& g);

  bool same_signature(const CoordChain& o) const;
  void require_signature(const CoordChain& o, const char* what) const;

 private:
  friend CoordChain canonicalize(const CoordChain& c);

  int n_;
  int k_;
  GroupDescriptor g_;
  Terms terms_;
  bool canonical_ = true;
};

// Overlay of equal-axis-set cells on the endpoint refinement of each overlapping cluster.
CoordChain canonicalize(const CoordChain& c);

CoordChain add(const CoordChain& a, const CoordChain& b);
CoordChain subtract(const CoordChain& a, const CoordChain& b);
CoordChain negate(const CoordChain& c);
CoordChain scale(const CoordChain& c, long m);

CoordChain boundary(const CoordChain& c);
Rational mass(const CoordChain& c);
CoordChain translate(const CoordChain& c, std::span<const Rational> y);
BoundingBox support_box(const CoordChain& c);

// Equality of chains: the difference canonicalizes to the empty chain.
bool chains_equal(const CoordChain& a, const CoordChain& b);

// Single-term chain with an integer coefficient.
CoordChain cell_chain(const CoordCell& cell, const Coefficient& g);

std::string to_string(const CoordChain& c);

}  // namespace flatchain
