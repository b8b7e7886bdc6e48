#include "flatchain/coeff.hpp"

#include <algorithm>

#include "flatchain/cubchain.hpp"
#include "flatchain/errors.hpp"

namespace flatchain {

namespace {

std::int64_t reduce_mod(std::int64_t r, std::int64_t m) {
  r %= m;
  return r < 0 ? r + m : r;
}

}  // namespace

GroupDescriptor GroupDescriptor::integers() {
  GroupDescriptor d;
  d.kind_ = GroupKind::integers;
  return d;
}

GroupDescriptor GroupDescriptor::residues(std::int64_t modulus) {
  if (modulus < 2) throw DomainError("residue modulus must be at least 2");
  GroupDescriptor d;
  d.kind_ = GroupKind::residues;
  d.modulus_ = modulus;
  return d;
}

GroupDescriptor GroupDescriptor::rationals() {
  GroupDescriptor d;
  d.kind_ = GroupKind::rationals;
  return d;
}

GroupDescriptor GroupDescriptor::nested(int n, int k, const GroupDescriptor& inner) {
  if (inner.kind() == GroupKind::nested) throw DomainError("chain-valued coefficients nest to depth 1 only");
  if (n < 0 || k < 0 || k > n) throw DomainError("invalid inner chain signature");
  GroupDescriptor d;
  d.kind_ = GroupKind::nested;
  d.inner_n_ = n;
  d.inner_k_ = k;
  d.inner_ = std::make_shared<const GroupDescriptor>(inner);
  return d;
}

const GroupDescriptor& GroupDescriptor::inner() const {
  if (!inner_) throw DomainError("descriptor has no inner group");
  return *inner_;
}

bool GroupDescriptor::operator==(const GroupDescriptor& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case GroupKind::integers:
    case GroupKind::rationals:
      return true;
    case GroupKind::residues:
      return modulus_ == other.modulus_;
    case GroupKind::nested:
      return inner_n_ == other.inner_n_ && inner_k_ == other.inner_k_ && *inner_ == *other.inner_;
  }
  return false;
}

std::string GroupDescriptor::to_string() const {
  switch (kind_) {
    case GroupKind::integers:
      return "Z";
    case GroupKind::rationals:
      return "Q";
    case GroupKind::residues:
      return "Z/" + std::to_string(modulus_);
    case GroupKind::nested:
      return "Chains(n=" + std::to_string(inner_n_) + ",k=" + std::to_string(inner_k_) + "," + inner_->to_string() +
             ")";
  }
  return "?";
}

Coefficient::Coefficient() : descriptor_(GroupDescriptor::integers()), payload_(Integer(0)) {}

Coefficient Coefficient::zero(const GroupDescriptor& g) {
  switch (g.kind()) {
    case GroupKind::integers:
      return {g, Integer(0)};
    case GroupKind::residues:
      return {g, std::int64_t{0}};
    case GroupKind::rationals:
      return {g, Rational(0)};
    case GroupKind::nested:
      return {g, std::make_shared<const CoordChain>(g.inner_dim(), g.inner_degree(), g.inner())};
  }
  throw DomainError("unknown group kind");
}

Coefficient Coefficient::integer(const Integer& v) { return {GroupDescriptor::integers(), v}; }

Coefficient Coefficient::residue(std::int64_t r, std::int64_t modulus) {
  return {GroupDescriptor::residues(modulus), reduce_mod(r, modulus)};
}

Coefficient Coefficient::rational(const Rational& v) {
  Rational q = v;
  q.canonicalize();
  return {GroupDescriptor::rationals(), q};
}

Coefficient Coefficient::chain(const CoordChain& c) {
  const GroupDescriptor d = GroupDescriptor::nested(c.ambient_dim(), c.degree(), c.descriptor());
  return {d, std::make_shared<const CoordChain>(canonicalize(c))};
}

Coefficient Coefficient::from_rational(const Rational& v, const GroupDescriptor& g) {
  switch (g.kind()) {
    case GroupKind::integers:
      if (v.get_den() != 1) throw DomainError("non-integer value " + flatchain::to_string(v) + " for Z");
      return integer(v.get_num());
    case GroupKind::rationals:
      return rational(v);
    case GroupKind::residues: {
      if (v.get_den() != 1) throw DomainError("non-integer value for residues");
      Integer r;
      mpz_fdiv_r_ui(r.get_mpz_t(), v.get_num_mpz_t(), static_cast<unsigned long>(g.modulus()));
      return residue(r.get_si(), g.modulus());
    }
    case GroupKind::nested:
      break;
  }
  throw DomainError("cannot interpret a rational as a chain-valued coefficient");
}

void Coefficient::require_same(const Coefficient& other) const {
  if (!(descriptor_ == other.descriptor_)) {
    throw StructuralError("coefficient descriptor mismatch: " + descriptor_.to_string() + " vs " +
                          other.descriptor_.to_string());
  }
}

bool Coefficient::is_zero() const {
  switch (descriptor_.kind()) {
    case GroupKind::integers:
      return std::get<Integer>(payload_) == 0;
    case GroupKind::residues:
      return std::get<std::int64_t>(payload_) == 0;
    case GroupKind::rationals:
      return std::get<Rational>(payload_) == 0;
    case GroupKind::nested:
      return std::get<std::shared_ptr<const CoordChain>>(payload_)->empty();
  }
  return false;
}

Rational Coefficient::norm() const {
  switch (descriptor_.kind()) {
    case GroupKind::integers:
      return Rational(abs(std::get<Integer>(payload_)));
    case GroupKind::residues: {
      const std::int64_t r = std::get<std::int64_t>(payload_);
      return Rational(static_cast<long>(std::min(r, descriptor_.modulus() - r)));
    }
    case GroupKind::rationals:
      return abs(std::get<Rational>(payload_));
    case GroupKind::nested:
      return mass(*std::get<std::shared_ptr<const CoordChain>>(payload_));
  }
  return Rational(0);
}

Coefficient Coefficient::operator+(const Coefficient& other) const {
  require_same(other);
  switch (descriptor_.kind()) {
    case GroupKind::integers:
      return {descriptor_, Integer(std::get<Integer>(payload_) + std::get<Integer>(other.payload_))};
    case GroupKind::residues:
      return {descriptor_, reduce_mod(std::get<std::int64_t>(payload_) + std::get<std::int64_t>(other.payload_),
                                      descriptor_.modulus())};
    case GroupKind::rationals: {
      Rational s = std::get<Rational>(payload_) + std::get<Rational>(other.payload_);
      return {descriptor_, s};
    }
    case GroupKind::nested:
      return {descriptor_, std::make_shared<const CoordChain>(
                               add(*std::get<std::shared_ptr<const CoordChain>>(payload_),
                                   *std::get<std::shared_ptr<const CoordChain>>(other.payload_)))};
  }
  throw DomainError("unknown group kind");
}

Coefficient Coefficient::operator-() const {
  switch (descriptor_.kind()) {
    case GroupKind::integers:
      return {descriptor_, Integer(-std::get<Integer>(payload_))};
    case GroupKind::residues:
      return {descriptor_, reduce_mod(-std::get<std::int64_t>(payload_), descriptor_.modulus())};
    case GroupKind::rationals:
      return {descriptor_, Rational(-std::get<Rational>(payload_))};
    case GroupKind::nested:
      return {descriptor_,
              std::make_shared<const CoordChain>(negate(*std::get<std::shared_ptr<const CoordChain>>(payload_)))};
  }
  throw DomainError("unknown group kind");
}

Coefficient Coefficient::operator-(const Coefficient& other) const { return *this + (-other); }

Coefficient& Coefficient::operator+=(const Coefficient& other) {
  *this = *this + other;
  return *this;
}

Coefficient Coefficient::times(long m) const {
  switch (descriptor_.kind()) {
    case GroupKind::integers:
      return {descriptor_, Integer(std::get<Integer>(payload_) * m)};
    case GroupKind::residues: {
      const std::int64_t mod = descriptor_.modulus();
      const __int128 prod = static_cast<__int128>(std::get<std::int64_t>(payload_)) * (m % mod);
      return {descriptor_, reduce_mod(static_cast<std::int64_t>(prod % mod), mod)};
    }
    case GroupKind::rationals:
      return {descriptor_, Rational(std::get<Rational>(payload_) * m)};
    case GroupKind::nested:
      return {descriptor_,
              std::make_shared<const CoordChain>(scale(*std::get<std::shared_ptr<const CoordChain>>(payload_), m))};
  }
  throw DomainError("unknown group kind");
}

bool Coefficient::operator==(const Coefficient& other) const {
  if (!(descriptor_ == other.descriptor_)) return false;
  switch (descriptor_.kind()) {
    case GroupKind::integers:
      return std::get<Integer>(payload_) == std::get<Integer>(other.payload_);
    case GroupKind::residues:
      return std::get<std::int64_t>(payload_) == std::get<std::int64_t>(other.payload_);
    case GroupKind::rationals:
      return std::get<Rational>(payload_) == std::get<Rational>(other.payload_);
    case GroupKind::nested:
      return chains_equal(*std::get<std::shared_ptr<const CoordChain>>(payload_),
                          *std::get<std::shared_ptr<const CoordChain>>(other.payload_));
  }
  return false;
}

std::optional<Rational> Coefficient::as_rational() const {
  switch (descriptor_.kind()) {
    case GroupKind::integers:
      return Rational(std::get<Integer>(payload_));
    case GroupKind::rationals:
      return std::get<Rational>(payload_);
    default:
      return std::nullopt;
  }
}

std::int64_t Coefficient::residue_value() const {
  if (descriptor_.kind() != GroupKind::residues) throw DomainError("not a residue");
  return std::get<std::int64_t>(payload_);
}

const CoordChain& Coefficient::inner_chain() const {
  if (descriptor_.kind() != GroupKind::nested) throw DomainError("not a chain-valued coefficient");
  return *std::get<std::shared_ptr<const CoordChain>>(payload_);
}

std::string Coefficient::to_string() const {
  switch (descriptor_.kind()) {
    case GroupKind::integers:
      return std::get<Integer>(payload_).get_str();
    case GroupKind::residues:
      return std::to_string(std::get<std::int64_t>(payload_)) + " mod " + std::to_string(descriptor_.modulus());
    case GroupKind::rationals:
      return flatchain::to_string(std::get<Rational>(payload_));
    case GroupKind::nested:
      return "[" + flatchain::to_string(*std::get<std::shared_ptr<const CoordChain>>(payload_)) + "]";
  }
  return "?";
}

}  // namespace flatchain
