#include "pdorbit/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace pdorbit {

namespace {
void require_same_dim(std::size_t a, std::size_t b, const char* op) {
  if (a != b)
    throw DimensionError(std::string(op) + ": dimension mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
}
}  // namespace

ComplexMatrix ComplexMatrix::identity(std::size_t d) {
  ComplexMatrix m(d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = Complex(1.0, 0.0);
  return m;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "add");
  ComplexMatrix r(a.dim());
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    r.entries()[i] = a.entries()[i] + b.entries()[i];
  return r;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "subtract");
  ComplexMatrix r(a.dim());
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    r.entries()[i] = a.entries()[i] - b.entries()[i];
  return r;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "multiply");
  const std::size_t d = a.dim();
  ComplexMatrix r(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < d; ++j) r(i, j) += aik * b(k, j);
    }
  }
  return r;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
  ComplexMatrix r(a.dim());
  for (std::size_t i = 0; i < a.entries().size(); ++i) r.entries()[i] = s * a.entries()[i];
  return r;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  const std::size_t d = a.dim();
  ComplexMatrix r(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) r(j, i) = std::conj(a(i, j));
  return r;
}

Complex trace(const ComplexMatrix& a) {
  Complex t(0.0, 0.0);
  for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
  return t;
}

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const Complex& z : a.entries()) s += std::norm(z);
  return std::sqrt(s);
}

double max_abs_entry(const ComplexMatrix& a) {
  double m = 0.0;
  for (const Complex& z : a.entries()) m = std::max(m, std::abs(z));
  return m;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

double hermiticity_defect(const ComplexMatrix& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m, double tol) : m_(m.dim()) {
  const double defect = hermiticity_defect(m);
  if (defect > tol)
    throw ValidationError("matrix is not Hermitian: max |M(i,j) - conj(M(j,i))| = " +
                          std::to_string(defect) + " exceeds tolerance " + std::to_string(tol));
  const std::size_t d = m.dim();
  for (std::size_t i = 0; i < d; ++i) {
    m_(i, i) = Complex(m(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < d; ++j) {
      const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m_(i, j) = avg;
      m_(j, i) = std::conj(avg);
    }
  }
}

HermitianMatrix HermitianMatrix::symmetrized(const ComplexMatrix& m) {
  const std::size_t d = m.dim();
  ComplexMatrix h(d);
  for (std::size_t i = 0; i < d; ++i) {
    h(i, i) = Complex(m(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < d; ++j) {
      const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      h(i, j) = avg;
      h(j, i) = std::conj(avg);
    }
  }
  return HermitianMatrix(std::move(h), Trusted{});
}

double HermitianMatrix::trace_real() const { return trace(m_).real(); }

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m, double tol) : m_(std::move(m)) {
  const std::size_t d = m_.dim();
  ComplexMatrix g = adjoint(m_) * m_;
  for (std::size_t i = 0; i < d; ++i) g(i, i) -= Complex(1.0, 0.0);
  const double defect = frobenius_norm(g);
  if (defect > tol)
    throw ValidationError("matrix is not unitary: ||U*U - I||_F = " + std::to_string(defect) +
                          " exceeds tolerance " + std::to_string(tol));
}

HermitianMatrix conjugate(const HermitianMatrix& c, const UnitaryMatrix& u) {
  require_same_dim(c.dim(), u.dim(), "conjugate");
  return HermitianMatrix::symmetrized(adjoint(u.matrix()) * c.matrix() * u.matrix());
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix::symmetrized(a.matrix() + b.matrix());
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix::symmetrized(a.matrix() - b.matrix());
}

}  // namespace pdorbit
