#pragma once

// Bigraded coordinate chains under a split R^n = X_alpha x X_alphabar,
// with alpha the first n1 axes.

#include <map>
#include <string>
#include <vector>

#include "flatchain/coeff.hpp"
#include "flatchain/cubchain.hpp"

namespace flatchain {

struct Split {
  int n1 = 0;
  int n2 = 0;

  int n() const { return n1 + n2; }
  bool in_alpha(int axis) const { return axis < n1; }
  bool operator==(const Split& o) const { return n1 == o.n1 && n2 == o.n2; }
};

struct Bidegree {
  int k1 = 0;
  int k2 = 0;

  int total() const { return k1 + k2; }
  bool operator==(const Bidegree& o) const { return k1 == o.k1 && k2 == o.k2; }
  bool operator<(const Bidegree& o) const { return k1 != o.k1 ? k1 < o.k1 : k2 < o.k2; }
  std::string to_string() const { return "(" + std::to_string(k1) + "," + std::to_string(k2) + ")"; }
};

Bidegree classify(const CoordCell& cell, const Split& split);
// D_k: all (k1, k2) with 0 <= k1 <= n1, 0 <= k2 <= n2, k1 + k2 = k.
std::vector<Bidegree> admissible_bidegrees(int k, const Split& split);

class TensorChain {
 public:
  TensorChain(Split split, Bidegree bidegree, const GroupDescriptor& g);
  // Validates that every cell of `body` has the given type.
  TensorChain(Split split, Bidegree bidegree, const CoordChain& body);

  const Split& split() const { return split_; }
  const Bidegree& bidegree() const { return bidegree_; }
  const CoordChain& body() const { return body_; }
  bool empty() const { return body_.empty(); }

 private:
  Split split_;
  Bidegree bidegree_;
  CoordChain body_;
};

// Exact cell classification; every admissible bidegree has an entry.
std::map<Bidegree, TensorChain> jdecomp(const CoordChain& c, const Split& split);

TensorChain d1(const TensorChain& t);
TensorChain d2(const TensorChain& t);

TensorChain tensor_add(const TensorChain& a, const TensorChain& b);
TensorChain tensor_subtract(const TensorChain& a, const TensorChain& b);
bool tensor_equal(const TensorChain& a, const TensorChain& b);
// M^ of a tensor chain: the mass of its body.
Rational tensor_mass(const TensorChain& t);

// k1-chain over X_alpha whose coefficients are k2-chains over X_alphabar.
CoordChain iota(const TensorChain& t);
TensorChain iota_inv(const CoordChain& c, const Split& split);

Coefficient chi(const CoordChain& c);
// chi(chi(iota t)) for a (0,0)-chain.
Coefficient chi_tensor(const TensorChain& t);

// Boundary terms from interval axes selected by `alpha_part` (true: alpha axes), with the total-boundary signs.
CoordChain partial_boundary(const CoordChain& c, const Split& split, bool alpha_part);

}  // namespace flatchain
