#include <doctest.h>

#include <sstream>

#include "flatchain/errors.hpp"
#include "flatchain/generators.hpp"
#include "flatchain/serialize.hpp"
#include "support.hpp"

using namespace testing;
using nlohmann::json;

namespace {

json square_json() { return to_json(ChainDocument::of(unit_square())); }

json segment_pair() {
  json j = to_json(ChainDocument::of(chain_of(1, 1, {{{iv(0, 1)}, 1}, {{iv(2, 3)}, 2}})));
  return j;
}

std::string rejection(const json& j) {
  try {
    document_from_json(j);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

bool mentions(const std::string& msg, const std::string& part) { return msg.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("documents round-trip") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng rng(101, 1, i);
    const int n = 1 + static_cast<int>(i % 4);
    const GroupDescriptor g = rotating_group(i);
    ChainDocument doc;
    switch (i % 3) {
      case 0:
        doc = ChainDocument::of(random_coord_chain(rng, n, static_cast<int>(rng.uniform_int(0, n)), g));
        break;
      case 1: {
        const int m = n + 1;
        const int n1 = static_cast<int>(rng.uniform_int(1, m - 1));
        const Split s{n1, m - n1};
        doc = ChainDocument::of(random_tensor_chain(rng, s, {static_cast<int>(rng.uniform_int(0, n1)), static_cast<int>(rng.uniform_int(0, m - n1))}, g));
        break;
      }
      default: {
        const int k = static_cast<int>(rng.uniform_int(0, n));
        SimplexChain s(n, k, g);
        s.add_term(random_simplex(rng, n, k), random_coefficient(rng, g));
        doc = ChainDocument::of(s);
        break;
      }
    }
    if (i % 7 == 0) doc.metadata = {{"label", "case " + std::to_string(i)}};
    const std::string text = emit_document(doc);
    const ChainDocument back = parse_document(text);
    CHECK(back.kind == doc.kind);
    CHECK(emit_document(back) == text);
    CHECK(back.metadata == doc.metadata);
    if (doc.coord) CHECK(chains_equal(*back.coord, *doc.coord));
    if (doc.tensor) CHECK(tensor_equal(*back.tensor, *doc.tensor));
  }
}

TEST_CASE("residue and nested coefficients serialize") {
  const GroupDescriptor z5 = GroupDescriptor::residues(5);
  CoordChain c(1, 0, z5);
  c.accumulate(CoordCell({pt(0)}), Coefficient::residue(3, 5));
  const json j = to_json(ChainDocument::of(c));
  CHECK(j["descriptor"] == json{{"kind", "residues"}, {"modulus", 5}});
  CHECK(j["terms"][0]["coeff"] == json{{"mod", 5}, {"r", 3}});
  CHECK(chains_equal(*document_from_json(j).coord, c));

  json bad = j;
  bad["terms"][0]["coeff"]["r"] = 7;
  CHECK(mentions(rejection(bad), "term 0"));
  bad["terms"][0]["coeff"] = {{"mod", 4}, {"r", 1}};
  CHECK(mentions(rejection(bad), "modulus"));
}

TEST_CASE("malformed documents are rejected with the offending term") {
  const json good = segment_pair();
  CHECK_NOTHROW(document_from_json(good));

  json overlap = good;
  overlap["terms"][1]["cell"][0]["iv"] = {"1/2", "3"};
  CHECK(mentions(rejection(overlap), "term 1"));
  CHECK(mentions(rejection(overlap), "overlaps"));

  json unsorted = good;
  std::swap(unsorted["terms"][0], unsorted["terms"][1]);
  CHECK(mentions(rejection(unsorted), "term 1"));
  CHECK(mentions(rejection(unsorted), "sorted"));

  json mixed = good;
  mixed["terms"][1]["cell"][0] = {{"pt", "2"}};
  CHECK(mentions(rejection(mixed), "term 1"));
  CHECK(mentions(rejection(mixed), "dimension"));

  json noncanonical = good;
  noncanonical["terms"][1]["cell"][0]["iv"] = {"4/2", "3"};
  CHECK(mentions(rejection(noncanonical), "term 1"));
  CHECK(mentions(rejection(noncanonical), "lowest terms"));

  json zero = good;
  zero["terms"][0]["coeff"] = "0";
  CHECK(mentions(rejection(zero), "term 0"));

  json format = good;
  format["format"] = "flatchain/0";
  CHECK(mentions(rejection(format), "format"));

  json descriptor = good;
  descriptor["descriptor"] = {{"kind", "reals"}};
  CHECK_FALSE(rejection(descriptor).empty());

  json reversed = good;
  reversed["terms"][0]["cell"][0]["iv"] = {"1", "0"};
  CHECK(mentions(rejection(reversed), "term 0"));

  json tensor = to_json(ChainDocument::of(TensorChain(Split{1, 1}, {1, 0}, chain_of(2, 1, {{{iv(0, 1), pt(0)}, 1}, {{iv(0, 1), pt(1)}, 1}}))));
  CHECK_NOTHROW(document_from_json(tensor));
  tensor["terms"][1]["cell"] = {{{"pt", "2"}}, {{"iv", {"0", "1"}}}};
  CHECK(mentions(rejection(tensor), "term 1"));

  CHECK_THROWS_AS(parse_document("{not json"), ParseError);
  CHECK_THROWS_AS(parse_document("[1, 2]"), ParseError);
  json missing = square_json();
  missing.erase("signature");
  CHECK(mentions(rejection(missing), "signature"));
}

TEST_CASE("JSON-lines corpora") {
  const std::vector<ChainDocument> docs{ChainDocument::of(unit_square()), ChainDocument::of(segment_34())};
  std::stringstream out;
  write_corpus(out, docs);
  std::stringstream in("\n" + out.str() + "\n\n");
  const auto back = read_corpus(in);
  REQUIRE(back.size() == 2);
  CHECK(emit_document(back[0]) == emit_document(docs[0]));
  CHECK(emit_document(back[1]) == emit_document(docs[1]));

  std::stringstream broken(emit_document(docs[0]) + "\n{\"format\": 3}\n");
  try {
    read_corpus(broken);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(mentions(e.what(), "line 2"));
  }
}

TEST_CASE("figures serialize") {
  const Figure f = figure_algebra(Figure::box({Interval1D::closed(0, 2), Interval1D::open(q(1, 3), 1)}),
                                  Figure::box({Interval1D::at_most(q(-1)), Interval1D::all()}), FigureOp::unite);
  CHECK(figures_equal(figure_from_json(figure_to_json(f)), f));
  CHECK(figures_equal(figure_from_json(figure_to_json(Figure(3))), Figure(3)));
}
