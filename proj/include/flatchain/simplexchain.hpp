#pragma once

// Oriented rational simplices and finite simplicial chains.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "flatchain/coeff.hpp"
#include "flatchain/cubchain.hpp"
#include "flatchain/linalg.hpp"

namespace flatchain {

// Vertex order is the orientation.
class Simplex {
 public:
  explicit Simplex(std::vector<RationalVector> vertices);

  int ambient_dim() const { return static_cast<int>(vertices_.front().size()); }
  int degree() const { return static_cast<int>(vertices_.size()) - 1; }
  const std::vector<RationalVector>& vertices() const { return vertices_; }

  // Edge vectors v_i - v_0, one per row.
  RationalMatrix edges() const;
  // Squared k-volume: Gram determinant / (k!)^2.
  Rational squared_volume() const;
  // Signed determinant of the k x k minor of the edge matrix on the axes `gamma`.
  Rational minor_det(const std::vector<int>& gamma) const;

  Simplex translated(std::span<const Rational> y) const;

  bool operator==(const Simplex& o) const { return vertices_ == o.vertices_; }

 private:
  std::vector<RationalVector> vertices_;
};

class SimplexChain {
 public:
  SimplexChain(int n, int k, GroupDescriptor g);

  int ambient_dim() const { return n_; }
  int degree() const { return k_; }
  const GroupDescriptor& descriptor() const { return g_; }
  const std::vector<std::pair<Simplex, Coefficient>>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add_term(Simplex s, Coefficient g);

 private:
  int n_;
  int k_;
  GroupDescriptor g_;
  std::vector<std::pair<Simplex, Coefficient>> terms_;
};

struct SimplexMass {
  double value = 0;
  // Squared k-volume of each cell, in term order.
  std::vector<Rational> squared_volumes;
  // Set when every squared volume is a rational square.
  std::optional<Rational> exact;
};

SimplexMass s_mass(const SimplexChain& c);
SimplexChain s_boundary(const SimplexChain& c);
Rational proj_mass(const Simplex& s, const std::vector<int>& gamma);
// Sum over all coordinate k-planes of the squared projected volumes (Cauchy-Binet side).
Rational sum_squared_projections(const Simplex& s);

// Two k-simplices meet in an H^k-null set.
bool null_intersection(const Simplex& a, const Simplex& b);
void require_null_intersections(const SimplexChain& c);

Rational s_slicing_mass(const SimplexChain& c);
CoordChain s_slice0(const SimplexChain& c, const std::vector<int>& gamma, const RationalVector& x);

struct GrassmannEstimate {
  int n = 0;
  int k = 0;
  std::size_t samples = 0;
  double estimate = 0;
  double stderr_ = 0;
  double mass = 0;
  double ratio = 0;
  double ratio_stderr = 0;
};

GrassmannEstimate grassmann_avg(const Simplex& s, std::size_t samples, std::uint64_t seed);
// Haar-distributed orthogonal matrix (row-major n x n), from a derived stream.
std::vector<double> haar_orthogonal(int n, std::uint64_t seed, std::uint64_t index);

// Kuhn triangulation of every cell, orientations matching the cells.
SimplexChain triangulate(const CoordChain& c);

}  // namespace flatchain
