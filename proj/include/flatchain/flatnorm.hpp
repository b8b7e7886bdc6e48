#pragma once

// Flat norms on finite cubical complexes induced by the input chains.
// Values are upper bounds on the flat norm of the ambient space.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flatchain/cubchain.hpp"
#include "flatchain/lp.hpp"
#include "flatchain/tensor.hpp"

namespace flatchain {

class InducedComplex {
 public:
  InducedComplex() = default;
  explicit InducedComplex(std::vector<std::vector<Rational>> breakpoints);

  int ambient_dim() const { return static_cast<int>(breakpoints_.size()); }
  const std::vector<std::vector<Rational>>& breakpoints() const { return breakpoints_; }
  bool empty() const;

  // Slots per axis: even = breakpoint, odd = gap; 2m - 1 for m breakpoints.
  std::size_t slots(int axis) const;
  // Closed form: product over axes of (2 * gaps + 1).
  std::size_t cell_count() const;
  std::size_t cell_count(int degree) const;

  // Every endpoint of the cell is a breakpoint.
  bool subordinate(const CoordCell& cell) const;
  bool subordinate(const CoordChain& c) const;

  std::vector<std::size_t> slot_tuple(std::size_t flat) const;
  std::size_t flat_index(const std::vector<std::size_t>& slots) const;
  CoordCell cell_at(const std::vector<std::size_t>& slots) const;

 private:
  std::vector<std::vector<Rational>> breakpoints_;
};

// Breakpoints: every endpoint of every cell, the extreme ones pushed out by
// `margin`, each gap split into `refinement` equal parts.
InducedComplex induced_complex(const std::vector<CoordChain>& chains, const Rational& margin, int refinement);

struct FlatOptions {
  L1Backend backend = L1Backend::automatic;
  ExhaustiveOptions exhaustive;
};

struct FlatWitness {
  Rational value;
  CoordChain r;
  CoordChain s;
  std::string method;
  bool integral = true;
  std::size_t rows = 0;
  std::size_t cols = 0;
};

// Minimizes M(R) + M(S) over S on the (k+1)-cells of cx with R = c - dS.
// The returned witness has been re-verified with the chain boundary.
FlatWitness flat_norm_grid(const CoordChain& c, const InducedComplex& cx, const FlatOptions& options = {});

struct TensorFlatWitness {
  Rational value;
  TensorChain r00;
  // Absent when the bidegree is not admissible for the split.
  std::optional<TensorChain> r10;
  std::optional<TensorChain> r01;
  std::optional<TensorChain> r11;
  std::string method;
  bool integral = true;
};

// t = R00 + d1 R10 + d2 R01 + d1 d2 R11 with minimal total mass.
TensorFlatWitness tensor_flat_norm_grid(const TensorChain& t, const InducedComplex& cx, const FlatOptions& options = {});

Rational flat_dist(const CoordChain& a, const CoordChain& b, const InducedComplex& cx, const FlatOptions& options = {});
Rational tensor_flat_dist(const TensorChain& a, const TensorChain& b, const InducedComplex& cx,
                          const FlatOptions& options = {});

// True when R + dS reproduces c and the value equals M(R) + M(S).
bool verify_witness(const CoordChain& c, const FlatWitness& w);
bool verify_tensor_witness(const TensorChain& t, const TensorFlatWitness& w);

struct NNorm {
  Rational n;
  Rational n_sl;
};

NNorm n_norm(const CoordChain& c);
NNorm n_norm_tensor(const TensorChain& t);

}  // namespace flatchain
