#include "flatchain/tensor.hpp"

#include "flatchain/errors.hpp"

namespace flatchain {

Bidegree classify(const CoordCell& cell, const Split& split) {
  Bidegree b;
  for (int ax = 0; ax < cell.ambient_dim(); ++ax) {
    if (!cell.factor(ax).is_interval()) continue;
    if (split.in_alpha(ax)) ++b.k1;
    else ++b.k2;
  }
  return b;
}

std::vector<Bidegree> admissible_bidegrees(int k, const Split& split) {
  std::vector<Bidegree> out;
  for (int k1 = 0; k1 <= split.n1; ++k1) {
    const int k2 = k - k1;
    if (k2 >= 0 && k2 <= split.n2) out.push_back({k1, k2});
  }
  return out;
}

namespace {

void check_bidegree(const Split& split, const Bidegree& b) {
  if (split.n1 < 0 || split.n2 < 0) throw DomainError("invalid split");
  if (b.k1 < 0 || b.k2 < 0 || b.k1 > split.n1 || b.k2 > split.n2) {
    throw DomainError("bidegree " + b.to_string() + " is not admissible");
  }
}

}  // namespace

TensorChain::TensorChain(Split split, Bidegree bidegree, const GroupDescriptor& g)
    : split_(split), bidegree_(bidegree), body_(split.n(), bidegree.total(), g) {
  check_bidegree(split_, bidegree_);
}

TensorChain::TensorChain(Split split, Bidegree bidegree, const CoordChain& body)
    : split_(split), bidegree_(bidegree), body_(canonicalize(body)) {
  check_bidegree(split_, bidegree_);
  if (body_.ambient_dim() != split_.n()) throw StructuralError("body dimension does not match split");
  for (const auto& [cell, g] : body_.terms()) {
    if (!(classify(cell, split_) == bidegree_)) {
      throw StructuralError("cell " + cell.to_string() + " has type " + classify(cell, split_).to_string() +
                            ", expected " + bidegree_.to_string());
    }
  }
}

std::map<Bidegree, TensorChain> jdecomp(const CoordChain& c, const Split& split) {
  if (c.ambient_dim() != split.n()) throw StructuralError("chain dimension does not match split");
  const CoordChain cc = canonicalize(c);
  std::map<Bidegree, CoordChain> parts;
  for (const auto& b : admissible_bidegrees(c.degree(), split)) {
    parts.emplace(b, CoordChain(c.ambient_dim(), c.degree(), c.descriptor()));
  }
  for (const auto& [cell, g] : cc.terms()) parts.at(classify(cell, split)).accumulate(cell, g);
  std::map<Bidegree, TensorChain> out;
  for (const auto& [b, body] : parts) out.emplace(b, TensorChain(split, b, body));
  return out;
}

CoordChain partial_boundary(const CoordChain& c, const Split& split, bool alpha_part) {
  if (c.degree() == 0) throw DomainError("boundary of a 0-chain is undefined");
  CoordChain out(c.ambient_dim(), c.degree() - 1, c.descriptor());
  for (const auto& [cell, g] : c.terms()) {
    int p = 0;
    for (int ax = 0; ax < cell.ambient_dim(); ++ax) {
      const auto& f = cell.factor(ax);
      if (!f.is_interval()) continue;
      if (split.in_alpha(ax) == alpha_part) {
        std::vector<AxisFactor> top = cell.factors();
        std::vector<AxisFactor> bottom = cell.factors();
        top[static_cast<std::size_t>(ax)] = AxisFactor::point(f.hi());
        bottom[static_cast<std::size_t>(ax)] = AxisFactor::point(f.lo());
        const Coefficient signed_g = (p % 2 == 0) ? g : -g;
        out.accumulate(CoordCell(std::move(top)), signed_g);
        out.accumulate(CoordCell(std::move(bottom)), -signed_g);
      }
      ++p;
    }
  }
  return canonicalize(out);
}

TensorChain d1(const TensorChain& t) {
  if (t.bidegree().k1 == 0) throw DomainError("d1 of a chain with k1 = 0");
  return TensorChain(t.split(), {t.bidegree().k1 - 1, t.bidegree().k2}, partial_boundary(t.body(), t.split(), true));
}

TensorChain d2(const TensorChain& t) {
  if (t.bidegree().k2 == 0) throw DomainError("d2 of a chain with k2 = 0");
  return TensorChain(t.split(), {t.bidegree().k1, t.bidegree().k2 - 1}, partial_boundary(t.body(), t.split(), false));
}

TensorChain tensor_add(const TensorChain& a, const TensorChain& b) {
  if (!(a.split() == b.split()) || !(a.bidegree() == b.bidegree())) throw StructuralError("tensor signature mismatch");
  return TensorChain(a.split(), a.bidegree(), add(a.body(), b.body()));
}

TensorChain tensor_subtract(const TensorChain& a, const TensorChain& b) {
  if (!(a.split() == b.split()) || !(a.bidegree() == b.bidegree())) throw StructuralError("tensor signature mismatch");
  return TensorChain(a.split(), a.bidegree(), subtract(a.body(), b.body()));
}

bool tensor_equal(const TensorChain& a, const TensorChain& b) {
  return a.split() == b.split() && a.bidegree() == b.bidegree() && chains_equal(a.body(), b.body());
}

Rational tensor_mass(const TensorChain& t) { return mass(t.body()); }

CoordChain iota(const TensorChain& t) {
  const Split& s = t.split();
  const GroupDescriptor& g = t.body().descriptor();
  const GroupDescriptor nested = GroupDescriptor::nested(s.n2, t.bidegree().k2, g);
  std::map<CoordCell, CoordChain> groups;
  for (const auto& [cell, coeff] : t.body().terms()) {
    std::vector<AxisFactor> alpha(cell.factors().begin(), cell.factors().begin() + s.n1);
    std::vector<AxisFactor> rest(cell.factors().begin() + s.n1, cell.factors().end());
    CoordCell a(std::move(alpha));
    auto it = groups.find(a);
    if (it == groups.end()) it = groups.emplace(a, CoordChain(s.n2, t.bidegree().k2, g)).first;
    it->second.accumulate(CoordCell(std::move(rest)), coeff);
  }
  CoordChain out(s.n1, t.bidegree().k1, nested);
  for (const auto& [a, inner] : groups) out.accumulate(a, Coefficient::chain(inner));
  return canonicalize(out);
}

TensorChain iota_inv(const CoordChain& c, const Split& split) {
  const GroupDescriptor& nested = c.descriptor();
  if (nested.kind() != GroupKind::nested) throw DomainError("iota_inv needs chain-valued coefficients");
  if (c.ambient_dim() != split.n1 || nested.inner_dim() != split.n2) throw StructuralError("split does not match chain");
  const Bidegree b{c.degree(), nested.inner_degree()};
  CoordChain body(split.n(), b.total(), nested.inner());
  for (const auto& [a, coeff] : c.terms()) {
    for (const auto& [inner, g] : coeff.inner_chain().terms()) {
      std::vector<AxisFactor> factors = a.factors();
      factors.insert(factors.end(), inner.factors().begin(), inner.factors().end());
      body.accumulate(CoordCell(std::move(factors)), g);
    }
  }
  return TensorChain(split, b, body);
}

Coefficient chi(const CoordChain& c) {
  if (c.degree() != 0) throw DomainError("chi is defined on 0-chains only");
  Coefficient total = Coefficient::zero(c.descriptor());
  for (const auto& [cell, g] : c.terms()) total += g;
  return total;
}

Coefficient chi_tensor(const TensorChain& t) {
  if (!(t.bidegree() == Bidegree{0, 0})) throw DomainError("chi_tensor is defined on (0,0)-chains only");
  const Coefficient inner = chi(iota(t));
  return chi(inner.inner_chain());
}

}  // namespace flatchain
