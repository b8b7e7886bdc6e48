#include "flatchain/serialize.hpp"

#include <fstream>
#include <sstream>

#include "flatchain/errors.hpp"

namespace flatchain {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where.empty() ? what : where + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(where, std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_field(const json& j, const char* key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_number_integer()) fail(where, std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

Rational rational_from(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "rational values must be strings");
  const auto s = j.get<std::string>();
  if (!is_canonical_rational_string(s)) fail(where, "'" + s + "' is not a rational in lowest terms");
  return parse_rational(s);
}

json cell_to_json(const CoordCell& cell) {
  json out = json::array();
  for (const auto& f : cell.factors()) {
    if (f.is_interval()) out.push_back({{"iv", {to_string(f.lo()), to_string(f.hi())}}});
    else out.push_back({{"pt", to_string(f.value())}});
  }
  return out;
}

CoordCell cell_from_json(const json& j, int n, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) fail(where, "cell must list one factor per axis");
  std::vector<AxisFactor> factors;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& f = j[i];
    const std::string at = where + ", axis " + std::to_string(i);
    if (f.is_object() && f.size() == 1 && f.contains("pt")) {
      factors.push_back(AxisFactor::point(rational_from(f["pt"], at)));
    } else if (f.is_object() && f.size() == 1 && f.contains("iv") && f["iv"].is_array() && f["iv"].size() == 2) {
      const Rational a = rational_from(f["iv"][0], at);
      const Rational b = rational_from(f["iv"][1], at);
      if (!(a < b)) fail(at, "interval endpoints must be increasing");
      factors.push_back(AxisFactor::interval(a, b));
    } else {
      fail(at, "factor must be {\"pt\": q} or {\"iv\": [a, b]}");
    }
  }
  return CoordCell(std::move(factors));
}

json terms_to_json(const CoordChain& c) {
  json terms = json::array();
  for (const auto& [cell, g] : c.terms()) terms.push_back({{"cell", cell_to_json(cell)}, {"coeff", coefficient_to_json(g)}});
  return terms;
}

Coefficient term_coefficient(const json& j, const GroupDescriptor& g, const std::string& at) {
  try {
    return coefficient_from_json(j, g);
  } catch (const ParseError& e) {
    fail(at, e.what());
  }
  return Coefficient::zero(g);
}

bool same_point_set(const CoordCell& a, const CoordCell& b) {
  for (int i = 0; i < a.ambient_dim(); ++i) {
    const AxisFactor& x = a.factor(i);
    const AxisFactor& y = b.factor(i);
    if (x.is_interval() != y.is_interval()) return false;
    if (x.is_interval() ? !(x.lo() < y.hi() && y.lo() < x.hi()) : x.value() != y.value()) return false;
  }
  return true;
}

// Terms must appear exactly as in the canonical form: sorted, disjoint, nonzero.
CoordChain coord_from_terms(const json& terms, int n, int k, const GroupDescriptor& g, const std::string& where,
                            const std::pair<Split, Bidegree>* type = nullptr) {
  if (!terms.is_array()) fail(where, "'terms' must be an array");
  std::vector<std::pair<CoordCell, Coefficient>> parsed;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string at = (where.empty() ? "" : where + ", ") + "term " + std::to_string(i);
    const CoordCell cell = cell_from_json(field(terms[i], "cell", at), n, at);
    if (cell.dimension() != k) {
      fail(at, "cell has dimension " + std::to_string(cell.dimension()) + ", expected " + std::to_string(k));
    }
    if (type != nullptr) {
      const Bidegree c = classify(cell, type->first);
      if (!(c == type->second)) fail(at, "cell has type " + c.to_string() + ", expected " + type->second.to_string());
    }
    Coefficient coeff = term_coefficient(field(terms[i], "coeff", at), g, at);
    if (coeff.is_zero()) fail(at, "zero coefficient");
    for (const auto& [prev, unused] : parsed) {
      if (same_point_set(prev, cell)) fail(at, "cell overlaps an earlier term");
    }
    if (!parsed.empty() && !(parsed.back().first < cell)) fail(at, "cells must be sorted");
    parsed.emplace_back(cell, std::move(coeff));
  }
  CoordChain raw = CoordChain::raw(n, k, g, parsed);
  const CoordChain canon = canonicalize(raw);
  std::size_t i = 0;
  for (const auto& [cell, coeff] : canon.terms()) {
    if (i >= parsed.size() || !(parsed[i].first == cell) || parsed[i].second != coeff) {
      fail(where, "term " + std::to_string(std::min(i, parsed.size())) +
                      " breaks canonical form (cells must be sorted and non-overlapping)");
    }
    ++i;
  }
  if (i != parsed.size()) fail(where, "term " + std::to_string(i) + " breaks canonical form (cells must be sorted and non-overlapping)");
  return canon;
}

}  // namespace

json descriptor_to_json(const GroupDescriptor& g) {
  switch (g.kind()) {
    case GroupKind::integers:
      return {{"kind", "integers"}};
    case GroupKind::rationals:
      return {{"kind", "rationals"}};
    case GroupKind::residues:
      return {{"kind", "residues"}, {"modulus", g.modulus()}};
    case GroupKind::nested:
      return {{"kind", "nested"}, {"n", g.inner_dim()}, {"k", g.inner_degree()}, {"inner", descriptor_to_json(g.inner())}};
  }
  throw Error("unknown group kind");
}

GroupDescriptor descriptor_from_json(const json& j) {
  const std::string where = "descriptor";
  const json& kind = field(j, "kind", where);
  if (!kind.is_string()) fail(where, "'kind' must be a string");
  const auto k = kind.get<std::string>();
  try {
    if (k == "integers") return GroupDescriptor::integers();
    if (k == "rationals") return GroupDescriptor::rationals();
    if (k == "residues") {
      const json& m = field(j, "modulus", where);
      if (!m.is_number_integer()) fail(where, "'modulus' must be an integer");
      return GroupDescriptor::residues(m.get<std::int64_t>());
    }
    if (k == "nested") {
      return GroupDescriptor::nested(int_field(j, "n", where), int_field(j, "k", where),
                                     descriptor_from_json(field(j, "inner", where)));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    fail(where, e.what());
  }
  fail(where, "unknown kind '" + k + "'");
}

json coefficient_to_json(const Coefficient& c) {
  const auto& g = c.descriptor();
  switch (g.kind()) {
    case GroupKind::integers:
    case GroupKind::rationals:
      return to_string(*c.as_rational());
    case GroupKind::residues:
      return {{"mod", g.modulus()}, {"r", c.residue_value()}};
    case GroupKind::nested:
      return {{"terms", terms_to_json(canonicalize(c.inner_chain()))}};
  }
  throw Error("unknown group kind");
}

Coefficient coefficient_from_json(const json& j, const GroupDescriptor& g) {
  const std::string where = "coefficient";
  switch (g.kind()) {
    case GroupKind::integers: {
      const Rational v = rational_from(j, where);
      if (v.get_den() != 1) fail(where, "integer coefficient expected");
      return Coefficient::from_rational(v, g);
    }
    case GroupKind::rationals:
      return Coefficient::from_rational(rational_from(j, where), g);
    case GroupKind::residues: {
      if (!j.is_object() || !j.contains("mod") || !j.contains("r") || !j["mod"].is_number_integer() ||
          !j["r"].is_number_integer()) {
        fail(where, "residue coefficient must be {\"mod\": m, \"r\": r}");
      }
      const auto m = j["mod"].get<std::int64_t>();
      const auto r = j["r"].get<std::int64_t>();
      if (m != g.modulus()) fail(where, "residue modulus differs from the descriptor");
      if (r < 0 || r >= m) fail(where, "residue must lie in [0, modulus)");
      return Coefficient::residue(r, m);
    }
    case GroupKind::nested: {
      const CoordChain inner =
          coord_from_terms(field(j, "terms", where), g.inner_dim(), g.inner_degree(), g.inner(), "nested coefficient");
      return Coefficient::chain(inner);
    }
  }
  throw Error("unknown group kind");
}

ChainDocument ChainDocument::of(CoordChain c) {
  ChainDocument d;
  d.kind = ChainKind::coordinate;
  d.coord = canonicalize(c);
  return d;
}

ChainDocument ChainDocument::of(TensorChain t) {
  ChainDocument d;
  d.kind = ChainKind::tensor;
  d.tensor = std::move(t);
  return d;
}

ChainDocument ChainDocument::of(SimplexChain s) {
  ChainDocument d;
  d.kind = ChainKind::simplicial;
  d.simplicial = std::move(s);
  return d;
}

json to_json(const ChainDocument& doc) {
  json out;
  out["format"] = kFormatVersion;
  switch (doc.kind) {
    case ChainKind::coordinate: {
      const CoordChain c = canonicalize(*doc.coord);
      out["type"] = "coordinate";
      out["descriptor"] = descriptor_to_json(c.descriptor());
      out["signature"] = {{"n", c.ambient_dim()}, {"k", c.degree()}};
      out["terms"] = terms_to_json(c);
      break;
    }
    case ChainKind::tensor: {
      const TensorChain& t = *doc.tensor;
      out["type"] = "tensor";
      out["descriptor"] = descriptor_to_json(t.body().descriptor());
      out["signature"] = {{"n", t.split().n()},
                          {"split", {t.split().n1, t.split().n2}},
                          {"bidegree", {t.bidegree().k1, t.bidegree().k2}}};
      out["terms"] = terms_to_json(t.body());
      break;
    }
    case ChainKind::simplicial: {
      const SimplexChain& s = *doc.simplicial;
      out["type"] = "simplicial";
      out["descriptor"] = descriptor_to_json(s.descriptor());
      out["signature"] = {{"n", s.ambient_dim()}, {"k", s.degree()}};
      json terms = json::array();
      for (const auto& [simplex, g] : s.terms()) {
        json verts = json::array();
        for (const auto& v : simplex.vertices()) {
          json coords = json::array();
          for (const auto& x : v) coords.push_back(to_string(x));
          verts.push_back(coords);
        }
        terms.push_back({{"simplex", verts}, {"coeff", coefficient_to_json(g)}});
      }
      out["terms"] = terms;
      break;
    }
  }
  if (!doc.metadata.is_null()) out["metadata"] = doc.metadata;
  return out;
}

ChainDocument document_from_json(const json& j) {
  if (!j.is_object()) fail("", "document must be a JSON object");
  const json& format = field(j, "format", "document");
  if (format != kFormatVersion) fail("document", std::string("unsupported format, expected '") + kFormatVersion + "'");
  const json& type = field(j, "type", "document");
  if (!type.is_string()) fail("document", "'type' must be a string");
  const GroupDescriptor g = descriptor_from_json(field(j, "descriptor", "document"));
  const json& sig = field(j, "signature", "document");
  const int n = int_field(sig, "n", "signature");
  if (n < 1 || n > 31) fail("signature", "ambient dimension must be in 1..31");
  const json& terms = field(j, "terms", "document");
  ChainDocument doc;
  const auto t = type.get<std::string>();
  if (t == "coordinate") {
    const int k = int_field(sig, "k", "signature");
    if (k < 0 || k > n) fail("signature", "degree out of range");
    doc = ChainDocument::of(coord_from_terms(terms, n, k, g, ""));
  } else if (t == "tensor") {
    const json& split = field(sig, "split", "signature");
    const json& bideg = field(sig, "bidegree", "signature");
    if (!split.is_array() || split.size() != 2 || !bideg.is_array() || bideg.size() != 2) {
      fail("signature", "'split' and 'bidegree' must be pairs");
    }
    const Split sp{split[0].get<int>(), split[1].get<int>()};
    const Bidegree bd{bideg[0].get<int>(), bideg[1].get<int>()};
    if (sp.n1 < 0 || sp.n2 < 0 || sp.n() != n) fail("signature", "split does not add up to n");
    if (bd.k1 < 0 || bd.k2 < 0 || bd.k1 > sp.n1 || bd.k2 > sp.n2) fail("signature", "bidegree not admissible for split");
    const std::pair<Split, Bidegree> type{sp, bd};
    const CoordChain body = coord_from_terms(terms, n, bd.total(), g, "", &type);
    doc = ChainDocument::of(TensorChain(sp, bd, body));
  } else if (t == "simplicial") {
    const int k = int_field(sig, "k", "signature");
    if (k < 0 || k > n) fail("signature", "degree out of range");
    if (!terms.is_array()) fail("document", "'terms' must be an array");
    SimplexChain s(n, k, g);
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const std::string at = "term " + std::to_string(i);
      const json& verts = field(terms[i], "simplex", at);
      if (!verts.is_array() || static_cast<int>(verts.size()) != k + 1) fail(at, "simplex must list k+1 vertices");
      std::vector<RationalVector> vs;
      for (const auto& v : verts) {
        if (!v.is_array() || static_cast<int>(v.size()) != n) fail(at, "vertex must have n coordinates");
        RationalVector p;
        for (const auto& x : v) p.push_back(rational_from(x, at));
        vs.push_back(std::move(p));
      }
      Coefficient coeff = coefficient_from_json(field(terms[i], "coeff", at), g);
      if (coeff.is_zero()) fail(at, "zero coefficient");
      try {
        s.add_term(Simplex(std::move(vs)), std::move(coeff));
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        fail(at, e.what());
      }
    }
    doc = ChainDocument::of(std::move(s));
  } else {
    fail("document", "unknown type '" + t + "'");
  }
  if (j.contains("metadata")) doc.metadata = j["metadata"];
  return doc;
}

ChainDocument parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    return document_from_json(j);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
}

std::string emit_document(const ChainDocument& doc) { return to_json(doc).dump(); }

ChainDocument read_document_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

void write_document_file(const std::string& path, const ChainDocument& doc) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << emit_document(doc) << '\n';
}

std::vector<ChainDocument> read_corpus(std::istream& in) {
  std::vector<ChainDocument> docs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      docs.push_back(parse_document(line));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return docs;
}

void write_corpus(std::ostream& out, const std::vector<ChainDocument>& docs) {
  for (const auto& d : docs) out << emit_document(d) << '\n';
}

json figure_to_json(const Figure& f) {
  json boxes = json::array();
  for (const auto& box : f.boxes()) {
    json b = json::array();
    for (const auto& iv : box) {
      b.push_back({{"lo", iv.lo ? json(to_string(*iv.lo)) : json(nullptr)},
                   {"hi", iv.hi ? json(to_string(*iv.hi)) : json(nullptr)},
                   {"lo_closed", iv.lo_closed},
                   {"hi_closed", iv.hi_closed}});
    }
    boxes.push_back(b);
  }
  return {{"n", f.ambient_dim()}, {"boxes", boxes}};
}

Figure figure_from_json(const json& j) {
  const int n = int_field(j, "n", "figure");
  Figure f(n);
  const json& boxes = field(j, "boxes", "figure");
  if (!boxes.is_array()) fail("figure", "'boxes' must be an array");
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const std::string at = "figure box " + std::to_string(i);
    if (!boxes[i].is_array() || static_cast<int>(boxes[i].size()) != n) fail(at, "box must list one interval per axis");
    std::vector<Interval1D> box;
    for (const auto& iv : boxes[i]) {
      Interval1D x;
      const json& lo = field(iv, "lo", at);
      const json& hi = field(iv, "hi", at);
      if (!lo.is_null()) x.lo = rational_from(lo, at);
      if (!hi.is_null()) x.hi = rational_from(hi, at);
      x.lo_closed = iv.value("lo_closed", false) && x.lo.has_value();
      x.hi_closed = iv.value("hi_closed", false) && x.hi.has_value();
      box.push_back(x);
    }
    f.add_box(std::move(box));
  }
  return f;
}

}  // namespace flatchain
