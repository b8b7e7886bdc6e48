#include <doctest.h>

#include "flatchain/verify.hpp"

using namespace flatchain;

namespace {

const CheckResult* find(const VerifyReport& r, const std::string& id) {
  for (const auto& c : r.checks) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

// Boundary with the sign of its first term flipped.
CoordChain corrupted_boundary(const CoordChain& c) {
  const CoordChain b = boundary(c);
  CoordChain out(b.ambient_dim(), b.degree(), b.descriptor());
  bool first = true;
  for (const auto& [cell, g] : b.terms()) {
    out.accumulate(cell, first ? -g : g);
    first = false;
  }
  return canonicalize(out);
}

}  // namespace

TEST_CASE("module suites pass") {
  for (const std::string suite : {"coeff", "cubchain", "tensor", "cli"}) {
    const VerifyReport r = run_verify(suite);
    CHECK_MESSAGE(r.passed(), suite);
    CHECK_FALSE(r.checks.empty());
    for (const auto& c : r.checks) CHECK(c.module == suite);
  }
}

TEST_CASE("unknown suites are rejected") { CHECK_THROWS(run_verify("nonsense")); }

TEST_CASE("a corrupted boundary is caught") {
  VerifyOptions opts;
  opts.boundary = corrupted_boundary;
  const VerifyReport r = run_verify("cubchain", opts);
  CHECK_FALSE(r.passed());
  const CheckResult* row = find(r, "cubchain.boundary_squared");
  REQUIRE(row != nullptr);
  CHECK_FALSE(row->passed);
  CHECK_FALSE(row->detail.empty());
}

TEST_CASE("reports are reproducible for a fixed seed") {
  const auto a = report_to_json(run_verify("deform"), false);
  const auto b = report_to_json(run_verify("deform"), false);
  CHECK(a == b);
  VerifyOptions other;
  other.seed = 7;
  CHECK(run_verify("deform", other).passed());
  CHECK(report_to_json(run_verify("coeff", other), false)["seed"] == 7);
}
