#pragma once

#include <memory>

#include "pdorbit/matrix.hpp"

namespace pdorbit {

/// Eigenvalues in non-increasing order with a matching orthonormal eigenbasis
/// (column j of `basis` belongs to eigenvalues[j]).
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  UnitaryMatrix basis;

  std::size_t dim() const { return eigenvalues.size(); }
  HermitianMatrix reconstruct() const;
};

struct EighOptions {
  double conv_rel = defaults::jacobi_conv_rel;   // stop when off(A) < conv_rel * ||H||_F
  int max_sweeps = defaults::max_sweeps;
  double cluster_gap_rel = defaults::cluster_gap_rel;
};

/// Cyclic complex Jacobi diagonalization. Deterministic: fixed sweep order,
/// eigenvalues sorted non-increasing, degenerate clusters re-based by
/// Gram-Schmidt against coordinate order, every eigenvector phase-fixed so its
/// largest-modulus entry is real positive.
SpectralDecomposition eigh(const HermitianMatrix& h, const EighOptions& opt = {});

enum class ScalarFunc { log, exp, sqrt, inv_sqrt, inv };

/// U diag(f(lambda)) U*. log/sqrt/inv_sqrt/inv require a positive spectrum.
HermitianMatrix spectral_map(const SpectralDecomposition& s, ScalarFunc f);

/// exp(X) for anti-Hermitian X, through eigh(iX); the result is unitary.
UnitaryMatrix unitary_exp(const ComplexMatrix& x, double tol_antiherm = 1e-8);

/// Singular values in non-increasing order. Hermitian inputs go through eigh
/// directly; general matrices through the Gram matrix M*M.
std::vector<double> singular_values(const ComplexMatrix& m);

/// Hermitian with lambda_min > eps_pd * lambda_max. Keeps its spectral
/// decomposition, computed once at construction.
class PositiveDefiniteMatrix {
 public:
  explicit PositiveDefiniteMatrix(const HermitianMatrix& h, double eps_pd = defaults::eps_pd);
  /// Symmetrizes user data first; asymmetry beyond tol_herm is rejected.
  explicit PositiveDefiniteMatrix(const ComplexMatrix& m, double tol_herm = defaults::tol_herm,
                                  double eps_pd = defaults::eps_pd)
      : PositiveDefiniteMatrix(HermitianMatrix(m, tol_herm), eps_pd) {}

  std::size_t dim() const { return h_.dim(); }
  const HermitianMatrix& hermitian() const { return h_; }
  const ComplexMatrix& matrix() const { return h_.matrix(); }
  const Complex& operator()(std::size_t i, std::size_t j) const { return h_(i, j); }
  const SpectralDecomposition& spectrum() const { return *spec_; }
  const std::vector<double>& eigenvalues() const { return spec_->eigenvalues; }

  double det() const;        // product of eigenvalues
  double log_det() const;    // sum of log eigenvalues
  double trace() const { return h_.trace_real(); }
  HermitianMatrix apply(ScalarFunc f) const { return spectral_map(*spec_, f); }
  /// True when some eigenvalue gap is below cluster_gap_rel * ||.||_F.
  bool has_degenerate_spectrum(double cluster_gap_rel = defaults::cluster_gap_rel) const;

 private:
  HermitianMatrix h_;
  std::shared_ptr<const SpectralDecomposition> spec_;
};

}  // namespace pdorbit
