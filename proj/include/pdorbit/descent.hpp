#pragma once

#include <array>
#include <optional>
#include <utility>

#include "pdorbit/procrustes.hpp"

namespace pdorbit {

enum class CurveKind { commuting_rotation, spectral_path_lifted, probe_direction };

struct CurveSample {
  double t;
  UnitaryMatrix gamma;  // the orbit move: C(t) = gamma C gamma*
  double value;         // F_N at C(t)
  double residual;      // lifting residual ||Gamma(U,V) - l(t)||_F; 0 for exact constructions
};

/// The plane-rotation data of a commuting descent curve: the adjacent index i
/// in the common eigenbasis and the (alpha, beta) pairs entering the exact
/// 2x2 trace and determinant identities.
struct RotationBlock {
  std::size_t index;
  std::array<double, 2> alpha;
  std::array<double, 2> beta;
};

struct DescentCurve {
  CurveKind kind;
  std::vector<CurveSample> samples;  // ascending in t; contains t = 0 with gamma = I
  std::pair<double, double> t_range;
  bool complete = true;      // false when continuation stopped early
  double last_good_t = 0.0;  // largest |t| reached when incomplete
  std::optional<RotationBlock> block;  // commuting_rotation only
};

/// Common eigenbasis of a commuting pair (A, C): columns diagonalize both.
/// alpha is A's spectrum in non-increasing order; beta is C's spectrum in the
/// order induced by that basis, sorted within each A-eigenvalue cluster
/// (descending or ascending per flag). c_offdiag reports how far basis* C
/// basis is from diagonal.
struct CommonEigenbasis {
  ComplexMatrix basis;
  std::vector<double> alpha;
  std::vector<double> beta;
  double c_offdiag;
};
CommonEigenbasis simultaneous_eigenbasis(const PositiveDefiniteMatrix& a,
                                         const PositiveDefiniteMatrix& c,
                                         bool descending_within_clusters);

/// Plane rotation W(t) on an adjacent misordered pair of the common
/// eigenbasis, sampled on (-pi/2, pi/2). Requires [A, C] = 0 and an adjacent
/// index with C ascending against A descending. The exact 2x2 identities
/// tr C_S(t) = b1/a1 + b2/a2 + sin^2(t)(b1 - b2)(1/a2 - 1/a1) and
/// det C_S(t) = b1 b2/(a1 a2) are verified at every sample.
DescentCurve commuting_descent_curve(const ProcrustesInstance& inst, const OrbitPoint& c,
                                     int t_samples = 41);

struct PathSample {
  double t;
  PositiveDefiniteMatrix l;
};

/// The fixed-determinant spectral interpolation rho(t) = |t| a + (1 - |t|) b,
/// realized as l(t) = U D_exp(rho(t)) U* in the eigenbasis of the congruence
/// A^-1/2 C A^-1/2. Every sample has det l(t) = tau and
/// log lam(l(t)) majorized by log lam(l(0)).
struct SpectralPath {
  SpectrumVector a;  // (log lam(C) - log lam(A)) sorted descending
  SpectrumVector b;  // log lam(A^-1/2 C A^-1/2), descending
  double tau;        // det(C)/det(A)
  UnitaryMatrix aligner;
  PositiveDefiniteMatrix base;  // the orbit point the path descends from
  std::vector<PathSample> samples;
};

/// t grid is uniform over [t_min, t_max] and must contain 0 exactly.
SpectralPath spectral_descent_path(const ProcrustesInstance& inst, const OrbitPoint& c,
                                   int t_samples = 41, double t_min = -1.0, double t_max = 1.0);

/// Numerical lifting of a spectral path through Gamma(U, V) =
/// U A^-1/2 U* V C V* U A^-1/2 U*: warm-started Gauss-Newton continuation in
/// the product unitary group, outward from (I, I) at t = 0. Requires the
/// commutant of {A, C} to be trivial. When a sample cannot be driven below
/// residual_bound the curve is returned incomplete with last_good_t set.
DescentCurve lift_path(const ProcrustesInstance& inst, const SpectralPath& path,
                       double step = 1.0, double residual_bound = 1e-6);

}  // namespace pdorbit
