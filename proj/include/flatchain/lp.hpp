#pragma once

// Exact optimization back-ends: a dense rational simplex method, min-cost
// flow on network-structured L1 problems, and exhaustive enumeration.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "flatchain/rational.hpp"

namespace flatchain {

enum class Sense { le, eq, ge };

// min objective.x subject to the rows, x >= 0.
struct LinearProgram {
  std::size_t num_vars = 0;
  RationalVector objective;
  struct Row {
    std::vector<std::pair<std::size_t, Rational>> coeffs;
    Sense sense = Sense::eq;
    Rational rhs;
  };
  std::vector<Row> rows;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  RationalVector x;
  Rational value;
  std::size_t pivots = 0;
};

// Two-phase tableau simplex with Bland's rule; exact.
LpResult solve_lp(const LinearProgram& lp);

// minimize  sum_j v_j |s_j| + sum_r w_r |c_r - (B s)_r|
// with B sparse integer. A nonzero modulus replaces |.| on residuals by the
// residue norm min(x mod m, m - x mod m); only the exhaustive back-end accepts it.
struct L1Problem {
  RationalVector rhs;
  RationalVector row_weight;
  RationalVector col_weight;
  std::vector<std::vector<std::pair<int, int>>> columns;
  std::int64_t modulus = 0;

  std::size_t num_rows() const { return rhs.size(); }
  std::size_t num_cols() const { return columns.size(); }
};

enum class L1Backend { automatic, network, simplex, exhaustive };

struct L1Solution {
  RationalVector s;
  Rational value;
  std::string method;
  bool integral = true;
};

struct ExhaustiveOptions {
  std::vector<Rational> values{Rational(-1), Rational(0), Rational(1)};
  std::size_t max_columns = 16;
};

Rational l1_objective(const L1Problem& p, const RationalVector& s);

// Which network formulation applies, if any ("flow", "tension" or "").
std::string network_form(const L1Problem& p);

L1Solution solve_l1(const L1Problem& p, L1Backend backend, const ExhaustiveOptions& exhaustive = {});
L1Solution solve_l1_network(const L1Problem& p);
L1Solution solve_l1_simplex(const L1Problem& p);
L1Solution solve_l1_exhaustive(const L1Problem& p, const ExhaustiveOptions& options);

L1Backend parse_backend(const std::string& name);
std::string backend_name(L1Backend b);
// FLATCHAIN_LP_BACKEND, defaulting to automatic.
L1Backend backend_from_env();

}  // namespace flatchain
