#pragma once

#include <cstdint>

#include "pdorbit/descent.hpp"

namespace pdorbit {

enum class Verdict { global_min, global_max, not_extremal };

struct ExtremumCertificate {
  Verdict verdict;
  double gap_min;  // equality gap against the aligned (minimizing) configuration
  double gap_max;  // equality gap against the anti-aligned configuration
  /// For extremal verdicts: W with W A W* = D_lam(A) and W C W* diagonal in
  /// the matching order (simultaneous diagonalization of Theorem-equality type).
  std::optional<UnitaryMatrix> witness;
  /// For not_extremal: a strictly decreasing curve (commuting rotation when
  /// [A, C] = 0, otherwise a probe direction).
  std::optional<DescentCurve> descent;
  bool degenerate_spectrum;
};

/// Classifies an orbit point by the two equality gaps at tolerance tol * d.
ExtremumCertificate certify(const ProcrustesInstance& inst, const OrbitPoint& c,
                            double tol = defaults::certify_tol);

struct ProbeReport {
  double min_delta;  // most negative F change seen over all trials
  /// Hermitian generator H of the best one-parameter move gamma(t) = exp(itH).
  HermitianMatrix best_direction;
  bool decreased;  // min_delta < -probe_tol
};

/// Seeded random first-order probe: `trials` anti-Hermitian unit directions,
/// each evaluated at eps in {+-epsilon, +-epsilon/2}. Trial seeds derive from
/// (seed, trial index), so results are schedule-independent.
ProbeReport local_probe(const ProcrustesInstance& inst, const OrbitPoint& c, double epsilon,
                        int trials, std::uint64_t seed, double probe_tol = defaults::probe_tol);

enum class OptMode { min, max };

struct BruteForceResult {
  double value;
  OrbitPoint point;
};

/// Derivative-free orbit optimization, independent of the closed forms.
/// d = 2: deterministic grid over a three-angle parametrization of the
/// conjugation action, refined by coordinate descent. d = 3, 4: `budget` Haar
/// restarts polished by descent (analytic direction when the norm is smooth,
/// probe-driven line search otherwise). Deterministic given the seed.
BruteForceResult brute_force_extremum(const ProcrustesInstance& inst, OptMode mode, int budget,
                                      std::uint64_t seed, std::size_t dim_guard = 4);

}  // namespace pdorbit
