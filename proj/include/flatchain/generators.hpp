#pragma once

// Seeded random chains for property checks.

#include "flatchain/cubchain.hpp"
#include "flatchain/random.hpp"
#include "flatchain/simplexchain.hpp"
#include "flatchain/slicing.hpp"
#include "flatchain/tensor.hpp"

namespace flatchain {

struct ChainShape {
  int max_terms = 4;
  long span = 2;      // coordinates in [-span, span]
  long max_den = 3;   // coordinate denominators
};

Coefficient random_coefficient(Rng& rng, const GroupDescriptor& g);
// One of Z, Z/m, Q, chosen by `index` so cases rotate deterministically.
GroupDescriptor rotating_group(std::size_t index);

CoordCell random_cell(Rng& rng, int n, const std::vector<int>& axes, const ChainShape& shape = {});
CoordChain random_coord_chain(Rng& rng, int n, int k, const GroupDescriptor& g, const ChainShape& shape = {});
TensorChain random_tensor_chain(Rng& rng, const Split& split, const Bidegree& b, const GroupDescriptor& g,
                                const ChainShape& shape = {});
// Vertices are small rationals; resampled until affinely independent.
Simplex random_simplex(Rng& rng, int n, int k, const ChainShape& shape = {});
Figure random_figure(Rng& rng, int n, int boxes, const ChainShape& shape = {});

}  // namespace flatchain
