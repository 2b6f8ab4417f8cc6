// Acceptance gate: runs every criterion at its stated tolerance and prints one
// pass/fail line per criterion. Exit status 0 only when all pass.

#include <iostream>

#include "pdorbit/acceptance.hpp"

int main() {
  const pdorbit::RunConfig cfg = pdorbit::RunConfig::from_environment();
  const pdorbit::acceptance::SuiteReport report = pdorbit::acceptance::run_suite(cfg, &std::cout);
  std::cout << (report.all_pass ? "suite: ALL PASS" : "suite: FAILURES PRESENT") << std::endl;
  return report.all_pass ? 0 : 1;
}
