#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdorbit {

using Complex = std::complex<double>;

/// Default tolerances. Every value can be overridden through RunConfig.
namespace defaults {
inline constexpr double tol_herm = 1e-10;
inline constexpr double tol_unitary = 1e-10;
inline constexpr double tol_recon_rel = 1e-9;
inline constexpr double eps_pd = 1e-12;
inline constexpr double tol_null_rel = 1e-8;
inline constexpr double tol_majorization = 1e-9;
inline constexpr double tol_comm_rel = 1e-10;
inline constexpr double probe_tol = 1e-8;
inline constexpr double certify_tol = 1e-7;
inline constexpr double orbit_tol = 1e-8;
inline constexpr double jacobi_conv_rel = 1e-13;
inline constexpr double cluster_gap_rel = 1e-10;
inline constexpr int max_sweeps = 60;
}  // namespace defaults

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct SpectralDomainError : std::domain_error {
  using std::domain_error::domain_error;
};
struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& what, double residual_)
      : std::runtime_error(what), residual(residual_) {}
  double residual;
};

/// Dense complex d x d matrix, row-major storage.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;  // empty (d = 0); produced only as a placeholder
  explicit ComplexMatrix(std::size_t d) : d_(d), entries_(d * d, Complex(0.0, 0.0)) {
    if (d == 0) throw ValidationError("matrix dimension must be >= 1");
  }
  ComplexMatrix(std::size_t d, std::vector<Complex> entries) : d_(d), entries_(std::move(entries)) {
    if (d == 0) throw ValidationError("matrix dimension must be >= 1");
    if (entries_.size() != d * d)
      throw ValidationError("entry list has " + std::to_string(entries_.size()) +
                            " elements, expected " + std::to_string(d * d));
  }

  static ComplexMatrix identity(std::size_t d);

  std::size_t dim() const { return d_; }
  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * d_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * d_ + j]; }
  const std::vector<Complex>& entries() const { return entries_; }
  std::vector<Complex>& entries() { return entries_; }

 private:
  std::size_t d_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, const ComplexMatrix& a);
ComplexMatrix adjoint(const ComplexMatrix& a);
Complex trace(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);
double max_abs_entry(const ComplexMatrix& a);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
/// Max entrywise |M(i,j) - conj(M(j,i))|.
double hermiticity_defect(const ComplexMatrix& m);

/// Selfadjoint matrix. Stored form is exactly Hermitian: the constructor
/// rejects asymmetry beyond tol and then stores (M + M*)/2.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const ComplexMatrix& m, double tol = defaults::tol_herm);
  /// For matrices Hermitian by construction (U D U* rebuilds etc.):
  /// symmetrizes unconditionally, no defect check.
  static HermitianMatrix symmetrized(const ComplexMatrix& m);

  std::size_t dim() const { return m_.dim(); }
  const ComplexMatrix& matrix() const { return m_; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  double trace_real() const;

 private:
  struct Trusted {};
  HermitianMatrix(ComplexMatrix m, Trusted) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// U with ||U*U - I||_F <= tol.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(ComplexMatrix m, double tol = defaults::tol_unitary);
  static UnitaryMatrix identity(std::size_t d) { return UnitaryMatrix(ComplexMatrix::identity(d)); }

  std::size_t dim() const { return m_.dim(); }
  const ComplexMatrix& matrix() const { return m_; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

 private:
  ComplexMatrix m_;
};

/// U* C U. Preserves the spectrum of C.
HermitianMatrix conjugate(const HermitianMatrix& c, const UnitaryMatrix& u);

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);

}  // namespace pdorbit
