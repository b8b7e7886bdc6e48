#pragma once

// Grid deformation P_eps via the dual-face coefficient formula, exact and
// Monte-Carlo shift averages, and the experiment runners built on them.

#include <cstdint>
#include <optional>
#include <vector>

#include "flatchain/cubchain.hpp"
#include "flatchain/flatnorm.hpp"
#include "flatchain/simplexchain.hpp"
#include "flatchain/tensor.hpp"

namespace flatchain {

// The grid eps Z^n; the input is translated by `shift` before deformation.
struct GridSpec {
  Rational eps;
  RationalVector shift;
};

// Sign of the permutation sorting (face axes, complementary axes) into 0..n-1.
int pairing_sign(const std::vector<int>& face_axes, int n);

CoordChain deform_P(const CoordChain& c, const GridSpec& grid);
CoordChain deform_P(const SimplexChain& c, const GridSpec& grid);
TensorChain deform_Pi0(const TensorChain& t, const GridSpec& grid);

// Uniform dyadic shift in [0, eps)^n with an odd numerator over 2^bits.
RationalVector sample_shift(int n, const Rational& eps, std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                            unsigned bits = 20);

struct AverageMass {
  bool exact = false;
  Rational value;  // exact mode
  double mean = 0;
  double stderr_ = 0;
  std::size_t samples = 0;
  std::size_t boxes = 0;
};

// Average of M(P_eps tau_y c) over y in [0, eps)^n, integrated box by box.
AverageMass shift_average_mass_exact(const CoordChain& c, const Rational& eps);
// Single segments only; other simplicial inputs raise CapabilityError.
AverageMass shift_average_mass_exact(const SimplexChain& c, const Rational& eps);
AverageMass shift_average_mass_mc(const CoordChain& c, const Rational& eps, std::size_t samples, std::uint64_t seed);
AverageMass shift_average_mass_mc(const SimplexChain& c, const Rational& eps, std::size_t samples, std::uint64_t seed);

// Monotone staircase through `steps` equally spaced points of a planar
// segment, and the fan of triangles between the two.
struct Staircase {
  CoordChain stair;
  SimplexChain filling;
  Rational filling_mass;
};

Staircase staircase_surrogate(const Simplex& segment, const Coefficient& g, int steps);

struct ConvergenceRow {
  Rational eps;
  std::vector<Rational> values;
  double mean = 0;
  double stderr_ = 0;
  Rational surrogate_slack;
};

std::vector<ConvergenceRow> convergence_experiment(const CoordChain& c, const std::vector<Rational>& epsilons,
                                                   std::size_t samples, std::uint64_t seed, int refinement,
                                                   const FlatOptions& options = {});
// Planar segments: the distance to the segment is bounded through the staircase surrogate.
std::vector<ConvergenceRow> convergence_experiment(const SimplexChain& c, const std::vector<Rational>& epsilons,
                                                   std::size_t samples, std::uint64_t seed, int refinement,
                                                   int steps = 64, const FlatOptions& options = {});

struct CauchyResult {
  // Per level j: distances between Q_{j+1} and Q_j, one entry per shift.
  std::vector<std::vector<Rational>> tensor_values;
  std::vector<std::vector<Rational>> ordinary_values;
  std::vector<double> tensor_mean;
  std::vector<double> ordinary_mean;
  double ratio = 0;     // fitted geometric ratio of tensor_mean
  double constant = 0;  // fitted C in C * ratio^j
  bool decreasing = false;
  bool partial_sums_consistent = false;
};

CauchyResult cauchy_experiment(const TensorChain& t, int levels, const std::vector<RationalVector>& shifts,
                               int refinement, const FlatOptions& options = {});

// Least-squares fit of log(values) against the index.
std::pair<double, double> fit_geometric(const std::vector<double>& values);

// Cubical approximant T_j of the triangle, a (1,1)-chain with split (1,1).
TensorChain triangle_approximant(const Coefficient& g, int j);
// R'_j = d1 T_j: the left edge and the 2^j right edges along the hypotenuse.
TensorChain staircase_chain(const Coefficient& g, int j);

struct CounterexampleLevel {
  int j = 0;
  TensorChain r;
  TensorChain b;
  Rational slicing_mass;
  bool b_anticommutes = false;
  Rational prism_mass;
  bool prism_identity = false;
  std::optional<Rational> grid_distance;
  Rational b_mass_right;        // mass of B'_j on the open half-plane x1 > 0
  Coefficient b_chi_antidiagonal;  // chi of B'_j beyond the line x1 + x2 = 1
};

struct Counterexample {
  SimplexChain q;
  SimplexMass q_mass;
  std::vector<CounterexampleLevel> levels;
};

Counterexample counterexample_build(const Coefficient& g, int j_max, bool with_grid_distance = true);

}  // namespace flatchain
