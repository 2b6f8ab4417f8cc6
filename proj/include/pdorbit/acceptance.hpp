#pragma once

#include <iosfwd>

#include "pdorbit/config.hpp"

namespace pdorbit::acceptance {

struct CriterionResult {
  int id;
  std::string name;
  bool pass;
  std::string metrics;  // measured values; deterministic for a fixed seed
  double seconds;
};

struct SuiteReport {
  std::vector<CriterionResult> items;
  bool all_pass;
};

/// Runs the full acceptance suite. Individual failures are collected, not
/// fail-fast. Items derive their randomness from cfg.seed; the machine
/// report (see render_json) is byte-identical across runs for a fixed seed.
SuiteReport run_suite(const RunConfig& cfg, std::ostream* progress);

/// Human lines, one per criterion, timings included.
std::string render_text(const SuiteReport& report);

/// Machine report: seed, per-item pass/metrics. No timings, so repeated runs
/// with one seed produce identical bytes.
std::string render_json(const SuiteReport& report, const RunConfig& cfg);

}  // namespace pdorbit::acceptance
