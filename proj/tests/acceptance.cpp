// Runs the acceptance suite and prints one line per criterion.

#include <cstdio>

#include "flatchain/verify.hpp"

int main() {
  const flatchain::VerifyReport report = flatchain::run_verify("acceptance");
  for (const auto& c : report.checks) {
    const char* status = c.passed ? "PASS" : (c.gated ? "FAIL" : "INFO");
    std::printf("%-4s %-14s %6.2fs  %s\n", status, c.id.c_str(), c.seconds, c.detail.c_str());
  }
  std::printf("%s\n", report.passed() ? "acceptance: all gated criteria pass" : "acceptance: FAILED");
  return report.passed() ? 0 : 1;
}
