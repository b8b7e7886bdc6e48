#pragma once

// Coordinate 0-slices, slicing masses, figures and restriction.

#include <map>
#include <optional>
#include <vector>

#include "flatchain/cubchain.hpp"
#include "flatchain/tensor.hpp"

namespace flatchain {

// The 0-chain A ∩ X_gammabar(x) of a coordinate chain.
CoordChain slice0_coord(const CoordChain& c, const std::vector<int>& gamma, const RationalVector& x);

struct SlicingMass {
  Rational total;
  // Contribution of each coordinate k-plane family, keyed by axis subset.
  std::map<std::vector<int>, Rational> per_gamma;
};

SlicingMass slicing_mass(const CoordChain& c);
// Only planes gamma with (|gamma ∩ alpha|, |gamma ∩ alphabar|) equal to the bidegree.
SlicingMass slicing_mass_tensor(const TensorChain& t);

struct Interval1D {
  std::optional<Rational> lo;  // nullopt: unbounded below
  std::optional<Rational> hi;
  bool lo_closed = false;
  bool hi_closed = false;

  static Interval1D all() { return {}; }
  static Interval1D closed(Rational a, Rational b) { return {std::move(a), std::move(b), true, true}; }
  static Interval1D open(Rational a, Rational b) { return {std::move(a), std::move(b), false, false}; }
  static Interval1D at_most(Rational b) { return {std::nullopt, std::move(b), false, true}; }
  static Interval1D at_least(Rational a) { return {std::move(a), std::nullopt, true, false}; }

  bool contains(const Rational& v) const;
  bool operator==(const Interval1D& o) const;
};

// A finite union of axis-aligned product intervals.
class Figure {
 public:
  explicit Figure(int n) : n_(n) {}
  static Figure whole(int n);
  static Figure box(std::vector<Interval1D> factors);

  int ambient_dim() const { return n_; }
  const std::vector<std::vector<Interval1D>>& boxes() const { return boxes_; }
  void add_box(std::vector<Interval1D> factors);
  bool contains(const RationalVector& p) const;
  Figure translated(const RationalVector& y) const;

 private:
  int n_;
  std::vector<std::vector<Interval1D>> boxes_;
};

enum class FigureOp { intersect, unite, complement };

// Complement ignores `b`.
Figure figure_algebra(const Figure& a, const Figure& b, FigureOp op);
bool figures_equal(const Figure& a, const Figure& b);
// Disjoint decomposition into products of atoms (open intervals and points).
Figure canonical_figure(const Figure& f);

// A restricted to x + J; fragments of lower dimension are discarded.
CoordChain restrict(const CoordChain& c, const Figure& j, const RationalVector& x);

}  // namespace flatchain
