#include "pdorbit/procrustes.hpp"

#include <algorithm>
#include <cmath>

namespace pdorbit {

ProcrustesInstance::ProcrustesInstance(PositiveDefiniteMatrix a, PositiveDefiniteMatrix b,
                                       NormSpec norm)
    : a_(std::move(a)),
      b_(std::move(b)),
      norm_(std::move(norm)),
      a_sqrt_(a_.apply(ScalarFunc::sqrt)),
      a_inv_sqrt_(a_.apply(ScalarFunc::inv_sqrt)) {
  if (a_.dim() != b_.dim())
    throw DimensionError("ProcrustesInstance: dim(A) = " + std::to_string(a_.dim()) +
                         " but dim(B) = " + std::to_string(b_.dim()));
}

OrbitPoint OrbitPoint::from_witness(const PositiveDefiniteMatrix& b, const UnitaryMatrix& w) {
  if (b.dim() != w.dim())
    throw DimensionError("OrbitPoint: witness dimension " + std::to_string(w.dim()) +
                         " does not match B (" + std::to_string(b.dim()) + ")");
  PositiveDefiniteMatrix c(conjugate(b.hermitian(), w));
  return OrbitPoint(std::move(c), w);
}

OrbitPoint OrbitPoint::from_matrix(const PositiveDefiniteMatrix& b, PositiveDefiniteMatrix c,
                                   double orbit_tol) {
  if (b.dim() != c.dim())
    throw DimensionError("OrbitPoint: dim(C) = " + std::to_string(c.dim()) + " but dim(B) = " +
                         std::to_string(b.dim()));
  const std::size_t d = b.dim();
  for (std::size_t i = 0; i < d; ++i) {
    const double diff = std::abs(c.eigenvalues()[i] - b.eigenvalues()[i]);
    if (diff > orbit_tol)
      throw ValidationError("C is not on the orbit of B: eigenvalue[" + std::to_string(i) +
                            "] differs by " + std::to_string(diff) + " (tolerance " +
                            std::to_string(orbit_tol) + ")");
  }
  // B = U_B D U_B*, C = U_C D U_C*  =>  C = W* B W with W = U_B U_C*
  const UnitaryMatrix w(b.spectrum().basis.matrix() * adjoint(c.spectrum().basis.matrix()));
  return OrbitPoint(std::move(c), w);
}

namespace {
HermitianMatrix log_congruence(const ProcrustesInstance& inst, const PositiveDefiniteMatrix& c) {
  const ComplexMatrix& r = inst.a_inv_sqrt().matrix();
  const PositiveDefiniteMatrix m(HermitianMatrix::symmetrized(r * c.matrix() * r));
  return m.apply(ScalarFunc::log);
}
}  // namespace

double distance_fn(const ProcrustesInstance& inst, const PositiveDefiniteMatrix& c) {
  if (c.dim() != inst.dim())
    throw DimensionError("distance_fn: dimension mismatch");
  return evaluate(inst.norm(), log_congruence(inst, c));
}

double distance_f2(const ProcrustesInstance& inst, const PositiveDefiniteMatrix& c) {
  if (c.dim() != inst.dim())
    throw DimensionError("distance_f2: dimension mismatch");
  const ComplexMatrix& r = inst.a_inv_sqrt().matrix();
  const PositiveDefiniteMatrix m(HermitianMatrix::symmetrized(r * c.matrix() * r));
  double s = 0.0;
  for (double mu : m.eigenvalues()) {
    const double l = std::log(mu);
    s += l * l;
  }
  return std::sqrt(s);
}

namespace {
// U_A D_spec U_A* where spec holds B's eigenvalues in the requested order
// against A's non-increasing eigenbasis.
Extremizer aligned_extremizer(const ProcrustesInstance& inst, bool ascending) {
  const std::size_t d = inst.dim();
  const ComplexMatrix& ua = inst.A().spectrum().basis.matrix();
  std::vector<double> beta = inst.B().eigenvalues();  // non-increasing
  if (ascending) std::reverse(beta.begin(), beta.end());

  ComplexMatrix scaled(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) scaled(i, j) = ua(i, j) * beta[j];
  PositiveDefiniteMatrix c(HermitianMatrix::symmetrized(scaled * adjoint(ua)));

  std::vector<double> diff(d);
  const std::vector<double>& alpha = inst.A().eigenvalues();
  for (std::size_t i = 0; i < d; ++i) diff[i] = std::log(beta[i]) - std::log(alpha[i]);
  const double value = vector_norm(inst.norm(), diff);

  return Extremizer{OrbitPoint::from_matrix(inst.B(), std::move(c)), value,
                    inst.A().has_degenerate_spectrum()};
}
}  // namespace

Extremizer global_minimizer(const ProcrustesInstance& inst) {
  return aligned_extremizer(inst, false);
}

Extremizer global_maximizer(const ProcrustesInstance& inst) {
  return aligned_extremizer(inst, true);
}

double bw_distance(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("bw_distance: dimension mismatch");
  const ComplexMatrix ra = a.apply(ScalarFunc::sqrt).matrix();
  const PositiveDefiniteMatrix m(HermitianMatrix::symmetrized(ra * b.matrix() * ra));
  double cross = 0.0;
  for (double mu : m.eigenvalues()) cross += std::sqrt(mu);
  const double sq = a.trace() + b.trace() - 2.0 * cross;
  return std::sqrt(std::max(sq, 0.0));
}

double kl_divergence(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("kl_divergence: dimension mismatch");
  const ComplexMatrix binv = b.apply(ScalarFunc::inv).matrix();
  const double cross = trace(binv * a.matrix()).real();
  return 0.5 * (cross - static_cast<double>(a.dim()) + b.log_det() - a.log_det());
}

}  // namespace pdorbit
