#pragma once

// Abelian normed coefficient groups: Z, Z/m, Q and chain-valued coefficients.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "flatchain/rational.hpp"

namespace flatchain {

class CoordChain;

enum class GroupKind { integers, residues, rationals, nested };

class GroupDescriptor {
 public:
  static GroupDescriptor integers();
  static GroupDescriptor residues(std::int64_t modulus);
  static GroupDescriptor rationals();
  // Coefficients are degree-`k` coordinate chains in R^n over `inner`; `inner` may not itself be nested.
  static GroupDescriptor nested(int n, int k, const GroupDescriptor& inner);

  GroupKind kind() const { return kind_; }
  std::int64_t modulus() const { return modulus_; }
  int inner_dim() const { return inner_n_; }
  int inner_degree() const { return inner_k_; }
  const GroupDescriptor& inner() const;

  // Z and Q: the coefficients that embed in the rationals.
  bool is_numeric() const { return kind_ == GroupKind::integers || kind_ == GroupKind::rationals; }

  bool operator==(const GroupDescriptor& other) const;
  std::string to_string() const;

 private:
  GroupDescriptor() = default;

  GroupKind kind_ = GroupKind::integers;
  std::int64_t modulus_ = 0;
  int inner_n_ = 0;
  int inner_k_ = 0;
  std::shared_ptr<const GroupDescriptor> inner_;
};

class Coefficient {
 public:
  // Zero of the integers.
  Coefficient();

  static Coefficient zero(const GroupDescriptor& g);
  static Coefficient integer(const Integer& v);
  static Coefficient integer(long v) { return integer(Integer(v)); }
  static Coefficient residue(std::int64_t r, std::int64_t modulus);
  static Coefficient rational(const Rational& v);
  static Coefficient chain(const CoordChain& c);
  // Rational value interpreted in the group `g` (Z requires an integer, Z/m reduces).
  static Coefficient from_rational(const Rational& v, const GroupDescriptor& g);

  const GroupDescriptor& descriptor() const { return descriptor_; }

  bool is_zero() const;
  Rational norm() const;

  Coefficient operator+(const Coefficient& other) const;
  Coefficient operator-(const Coefficient& other) const;
  Coefficient operator-() const;
  Coefficient& operator+=(const Coefficient& other);
  Coefficient times(long m) const;

  bool operator==(const Coefficient& other) const;
  bool operator!=(const Coefficient& other) const { return !(*this == other); }

  // Z and Q payloads as rationals.
  std::optional<Rational> as_rational() const;
  std::int64_t residue_value() const;
  const CoordChain& inner_chain() const;

  std::string to_string() const;

 private:
  using Payload = std::variant<Integer, std::int64_t, Rational, std::shared_ptr<const CoordChain>>;
  Coefficient(GroupDescriptor d, Payload p) : descriptor_(std::move(d)), payload_(std::move(p)) {}
  void require_same(const Coefficient& other) const;

  GroupDescriptor descriptor_ = GroupDescriptor::integers();
  Payload payload_;
};

}  // namespace flatchain
