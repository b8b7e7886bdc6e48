#pragma once

// Small dense exact linear algebra over the rationals.

#include <optional>
#include <vector>

#include "flatchain/rational.hpp"

namespace flatchain {

using RationalMatrix = std::vector<std::vector<Rational>>;

Rational determinant(RationalMatrix m);
int rank(RationalMatrix m);
// Unique solution of a square system, or nullopt when singular.
std::optional<RationalVector> solve(RationalMatrix a, RationalVector b);

// Gram determinant of the given vectors (rows).
Rational gram_determinant(const RationalMatrix& vectors);

// All k-subsets of {0, ..., n-1} in lexicographic order.
std::vector<std::vector<int>> combinations(int n, int k);

Integer factorial(int k);
Integer binomial(int n, int k);

// Sign of the permutation taking `seq` to sorted order; 0 if entries repeat.
int permutation_sign(std::vector<int> seq);

}  // namespace flatchain
