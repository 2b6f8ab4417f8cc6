#pragma once

#include "pdorbit/majorization.hpp"
#include "pdorbit/uinorms.hpp"

namespace pdorbit {

/// The triple (A, B, N) defining the log-distance F_N on the unitary orbit of
/// B, with the spectral data of A and B and A^{+-1/2} cached eagerly.
class ProcrustesInstance {
 public:
  ProcrustesInstance(PositiveDefiniteMatrix a, PositiveDefiniteMatrix b, NormSpec norm);

  std::size_t dim() const { return a_.dim(); }
  const PositiveDefiniteMatrix& A() const { return a_; }
  const PositiveDefiniteMatrix& B() const { return b_; }
  const NormSpec& norm() const { return norm_; }
  const HermitianMatrix& a_sqrt() const { return a_sqrt_; }
  const HermitianMatrix& a_inv_sqrt() const { return a_inv_sqrt_; }

 private:
  PositiveDefiniteMatrix a_;
  PositiveDefiniteMatrix b_;
  NormSpec norm_;
  HermitianMatrix a_sqrt_;
  HermitianMatrix a_inv_sqrt_;
};

/// A point C = W* B W on the orbit of B together with its witness W.
class OrbitPoint {
 public:
  static OrbitPoint from_witness(const PositiveDefiniteMatrix& b, const UnitaryMatrix& w);
  /// Validates that spectrum(C) matches spectrum(B) within orbit_tol and
  /// derives a witness from the two eigenbases.
  static OrbitPoint from_matrix(const PositiveDefiniteMatrix& b, PositiveDefiniteMatrix c,
                                double orbit_tol = defaults::orbit_tol);

  const PositiveDefiniteMatrix& matrix() const { return c_; }
  const UnitaryMatrix& witness() const { return w_; }
  std::size_t dim() const { return c_.dim(); }

 private:
  OrbitPoint(PositiveDefiniteMatrix c, UnitaryMatrix w) : c_(std::move(c)), w_(std::move(w)) {}
  PositiveDefiniteMatrix c_;
  UnitaryMatrix w_;
};

/// F_N(C) = N(log(A^-1/2 C A^-1/2)). Zero exactly when C = A.
double distance_fn(const ProcrustesInstance& inst, const PositiveDefiniteMatrix& c);
inline double distance_fn(const ProcrustesInstance& inst, const OrbitPoint& c) {
  return distance_fn(inst, c.matrix());
}

/// The Riemannian distance [sum_j log^2 lam_j(A^-1 C)]^(1/2); equals
/// distance_fn under schatten:2 but goes through a single eigensolve of the
/// congruence rather than through the matrix logarithm.
double distance_f2(const ProcrustesInstance& inst, const PositiveDefiniteMatrix& c);
inline double distance_f2(const ProcrustesInstance& inst, const OrbitPoint& c) {
  return distance_f2(inst, c.matrix());
}

struct Extremizer {
  OrbitPoint point;
  double value;
  bool degenerate_spectrum;  // A has a repeated eigenvalue: the point is one
                             // canonical representative among many
};

/// Aligned configuration: B's eigenvalues arranged non-increasing in A's
/// non-increasing eigenbasis. Globally minimizes F_N over the orbit.
Extremizer global_minimizer(const ProcrustesInstance& inst);

/// Anti-aligned configuration (B ascending against A descending); the global
/// maximizer of F_N over the orbit.
Extremizer global_maximizer(const ProcrustesInstance& inst);

/// sqrt(tr A + tr B - 2 tr (A^1/2 B A^1/2)^1/2).
double bw_distance(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b);

/// (1/2) [tr(B^-1 A) - d + log det B - log det A]. Nonnegative, 0 iff A = B.
double kl_divergence(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b);

}  // namespace pdorbit
