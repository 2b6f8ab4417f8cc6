#include "pdorbit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pdorbit {

HermitianMatrix SpectralDecomposition::reconstruct() const {
  const std::size_t d = dim();
  const ComplexMatrix& u = basis.matrix();
  ComplexMatrix scaled(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) scaled(i, j) = u(i, j) * eigenvalues[j];
  return HermitianMatrix::symmetrized(scaled * adjoint(u));
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j) s += std::norm(a(i, j));
  return std::sqrt(2.0 * s);
}

// Canonical basis for the eigenspace spanned by columns [lo, hi) of v:
// Gram-Schmidt of the projector columns taken in coordinate order.
void canonicalize_cluster(ComplexMatrix& v, std::size_t lo, std::size_t hi) {
  const std::size_t d = v.dim();
  const std::size_t m = hi - lo;
  // projector P = sum of v_k v_k^*
  ComplexMatrix p(d);
  for (std::size_t k = lo; k < hi; ++k)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) p(i, j) += v(i, k) * std::conj(v(j, k));

  std::vector<std::vector<Complex>> cols;
  cols.reserve(m);
  for (std::size_t c = 0; c < d && cols.size() < m; ++c) {
    std::vector<Complex> w(d);
    for (std::size_t i = 0; i < d; ++i) w[i] = p(i, c);
    for (const auto& u : cols) {
      Complex dot(0.0, 0.0);
      for (std::size_t i = 0; i < d; ++i) dot += std::conj(u[i]) * w[i];
      for (std::size_t i = 0; i < d; ++i) w[i] -= dot * u[i];
    }
    double nrm = 0.0;
    for (const Complex& z : w) nrm += std::norm(z);
    nrm = std::sqrt(nrm);
    if (nrm < 1e-3) continue;
    for (Complex& z : w) z /= nrm;
    cols.push_back(std::move(w));
  }
  if (cols.size() != m) return;  // numerically impossible; keep solver basis
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < d; ++i) v(i, lo + k) = cols[k][i];
}

void fix_column_phase(ComplexMatrix& v, std::size_t col) {
  const std::size_t d = v.dim();
  std::size_t arg = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double a = std::abs(v(i, col));
    if (a > best) {
      best = a;
      arg = i;
    }
  }
  if (best <= 0.0) return;
  const Complex phase = std::conj(v(arg, col)) / best;
  for (std::size_t i = 0; i < d; ++i) v(i, col) *= phase;
  v(arg, col) = Complex(std::abs(v(arg, col)), 0.0);
}

}  // namespace

SpectralDecomposition eigh(const HermitianMatrix& h, const EighOptions& opt) {
  const std::size_t d = h.dim();
  ComplexMatrix a = h.matrix();
  ComplexMatrix v = ComplexMatrix::identity(d);
  const double hnorm = frobenius_norm(a);
  const double target = opt.conv_rel * hnorm;

  if (d > 1 && hnorm > 0.0) {
    const double skip_tol = target / static_cast<double>(d);
    bool converged = false;
    for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
      if (off_diagonal_norm(a) <= target) {
        converged = true;
        break;
      }
      for (std::size_t p = 0; p + 1 < d; ++p) {
        for (std::size_t q = p + 1; q < d; ++q) {
          const Complex b = a(p, q);
          const double r = std::abs(b);
          if (r <= skip_tol) continue;
          const Complex phase = b / r;  // b = r * phase
          const double app = a(p, p).real();
          const double aqq = a(q, q).real();
          // zero condition for this rotation convention reads
          // sn*cs*(aqq - app) + r*(cs^2 - sn^2) = 0; small-angle root below
          const double tau = (aqq - app) / (2.0 * r);
          const double t = (tau >= 0.0 ? -1.0 : 1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
          const double cs = 1.0 / std::sqrt(1.0 + t * t);
          const double sn = t * cs;
          const Complex sp = sn * phase;              // applied to column q
          const Complex spc = sn * std::conj(phase);  // applied to column p

          a(p, p) = Complex(app + t * r, 0.0);
          a(q, q) = Complex(aqq - t * r, 0.0);
          a(p, q) = Complex(0.0, 0.0);
          a(q, p) = Complex(0.0, 0.0);
          for (std::size_t k = 0; k < d; ++k) {
            if (k == p || k == q) continue;
            const Complex akp = a(k, p);
            const Complex akq = a(k, q);
            const Complex nkp = cs * akp + spc * akq;
            const Complex nkq = -sp * akp + cs * akq;
            a(k, p) = nkp;
            a(k, q) = nkq;
            a(p, k) = std::conj(nkp);
            a(q, k) = std::conj(nkq);
          }
          for (std::size_t k = 0; k < d; ++k) {
            const Complex vkp = v(k, p);
            const Complex vkq = v(k, q);
            v(k, p) = cs * vkp + spc * vkq;
            v(k, q) = -sp * vkp + cs * vkq;
          }
        }
      }
    }
    if (!converged && off_diagonal_norm(a) > target) {
      throw ConvergenceError("Jacobi eigensolver did not converge after " +
                                 std::to_string(opt.max_sweeps) +
                                 " sweeps; off-diagonal residual = " +
                                 std::to_string(off_diagonal_norm(a)),
                             off_diagonal_norm(a));
    }
  }

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() > a(j, j).real();
  });

  std::vector<double> vals(d);
  ComplexMatrix basis(d);
  for (std::size_t j = 0; j < d; ++j) {
    vals[j] = a(order[j], order[j]).real();
    for (std::size_t i = 0; i < d; ++i) basis(i, j) = v(i, order[j]);
  }

  const double cluster_gap = opt.cluster_gap_rel * hnorm;
  std::size_t lo = 0;
  while (lo < d) {
    std::size_t hi = lo + 1;
    while (hi < d && vals[hi - 1] - vals[hi] < cluster_gap) ++hi;
    if (hi - lo > 1) canonicalize_cluster(basis, lo, hi);
    lo = hi;
  }
  for (std::size_t j = 0; j < d; ++j) fix_column_phase(basis, j);

  return SpectralDecomposition{std::move(vals), UnitaryMatrix(std::move(basis))};
}

namespace {
const char* func_name(ScalarFunc f) {
  switch (f) {
    case ScalarFunc::log: return "log";
    case ScalarFunc::exp: return "exp";
    case ScalarFunc::sqrt: return "sqrt";
    case ScalarFunc::inv_sqrt: return "inv_sqrt";
    case ScalarFunc::inv: return "inv";
  }
  return "?";
}
}  // namespace

HermitianMatrix spectral_map(const SpectralDecomposition& s, ScalarFunc f) {
  const std::size_t d = s.dim();
  const bool needs_positive = f != ScalarFunc::exp;
  std::vector<double> mapped(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double x = s.eigenvalues[i];
    if (needs_positive && x <= 0.0)
      throw SpectralDomainError(std::string(func_name(f)) + " requires a positive spectrum; eigenvalue[" +
                                std::to_string(i) + "] = " + std::to_string(x));
    switch (f) {
      case ScalarFunc::log: mapped[i] = std::log(x); break;
      case ScalarFunc::exp: mapped[i] = std::exp(x); break;
      case ScalarFunc::sqrt: mapped[i] = std::sqrt(x); break;
      case ScalarFunc::inv_sqrt: mapped[i] = 1.0 / std::sqrt(x); break;
      case ScalarFunc::inv: mapped[i] = 1.0 / x; break;
    }
  }
  const ComplexMatrix& u = s.basis.matrix();
  ComplexMatrix scaled(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) scaled(i, j) = u(i, j) * mapped[j];
  return HermitianMatrix::symmetrized(scaled * adjoint(u));
}

UnitaryMatrix unitary_exp(const ComplexMatrix& x, double tol_antiherm) {
  const std::size_t d = x.dim();
  const ComplexMatrix sum = x + adjoint(x);  // 0 for anti-Hermitian x
  const double defect = frobenius_norm(sum);
  if (defect > tol_antiherm * std::max(1.0, frobenius_norm(x)))
    throw PreconditionError("unitary_exp requires an anti-Hermitian argument; ||X + X*||_F = " +
                            std::to_string(defect));
  // iX is Hermitian; exp(X) = exp(-i (iX)) = U diag(e^{-i mu}) U*.
  const SpectralDecomposition s = eigh(HermitianMatrix::symmetrized(Complex(0.0, 1.0) * x));
  const ComplexMatrix& u = s.basis.matrix();
  ComplexMatrix scaled(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      scaled(i, j) = u(i, j) * std::exp(Complex(0.0, -s.eigenvalues[j]));
  return UnitaryMatrix(scaled * adjoint(u));
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  const std::size_t d = m.dim();
  std::vector<double> s(d);
  if (hermiticity_defect(m) <= defaults::tol_herm * std::max(1.0, max_abs_entry(m))) {
    const SpectralDecomposition dec = eigh(HermitianMatrix::symmetrized(m));
    for (std::size_t i = 0; i < d; ++i) s[i] = std::abs(dec.eigenvalues[i]);
  } else {
    const SpectralDecomposition dec = eigh(HermitianMatrix::symmetrized(adjoint(m) * m));
    for (std::size_t i = 0; i < d; ++i) s[i] = std::sqrt(std::max(0.0, dec.eigenvalues[i]));
  }
  std::sort(s.begin(), s.end(), std::greater<double>());
  return s;
}

PositiveDefiniteMatrix::PositiveDefiniteMatrix(const HermitianMatrix& h, double eps_pd) : h_(h) {
  auto spec = std::make_shared<SpectralDecomposition>(eigh(h));
  const double largest = spec->eigenvalues.front();
  const double smallest = spec->eigenvalues.back();
  if (!(smallest > eps_pd * largest) || !(largest > 0.0))
    throw ValidationError("matrix is not positive definite: eigenvalue range [" +
                          std::to_string(smallest) + ", " + std::to_string(largest) + "]");
  spec_ = std::move(spec);
}

double PositiveDefiniteMatrix::det() const {
  double p = 1.0;
  for (double x : spec_->eigenvalues) p *= x;
  return p;
}

double PositiveDefiniteMatrix::log_det() const {
  double s = 0.0;
  for (double x : spec_->eigenvalues) s += std::log(x);
  return s;
}

bool PositiveDefiniteMatrix::has_degenerate_spectrum(double cluster_gap_rel) const {
  const double gap = cluster_gap_rel * frobenius_norm(h_.matrix());
  const auto& vals = spec_->eigenvalues;
  for (std::size_t i = 0; i + 1 < vals.size(); ++i)
    if (vals[i] - vals[i + 1] < gap) return true;
  return false;
}

}  // namespace pdorbit
