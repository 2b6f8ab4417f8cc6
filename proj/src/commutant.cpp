#include "pdorbit/commutant.hpp"

#include <algorithm>
#include <cmath>

#include "pdorbit/spectral.hpp"

namespace pdorbit {

namespace {
// Rows of the linear system L(C) = XC - CX for one generator X, on the
// vectorized unknown C (row-major). Equation (i,j), unknown (k,l):
// coefficient X(i,k) when l == j, minus X(l,j) when k == i.
void accumulate_gram(const ComplexMatrix& x, ComplexMatrix& gram) {
  const std::size_t d = x.dim();
  const std::size_t n = d * d;
  std::vector<Complex> row(n);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      std::fill(row.begin(), row.end(), Complex(0.0, 0.0));
      for (std::size_t k = 0; k < d; ++k) row[k * d + j] += x(i, k);
      for (std::size_t l = 0; l < d; ++l) row[i * d + l] -= x(l, j);
      for (std::size_t p = 0; p < n; ++p) {
        if (row[p] == Complex(0.0, 0.0)) continue;
        const Complex cp = std::conj(row[p]);
        for (std::size_t q = 0; q < n; ++q) gram(p, q) += cp * row[q];
      }
    }
  }
}
}  // namespace

std::size_t commutant_dimension(const HermitianMatrix& a, const HermitianMatrix& b,
                                double null_rel) {
  if (a.dim() != b.dim())
    throw DimensionError("commutant_dimension: dimension mismatch (" + std::to_string(a.dim()) +
                         " vs " + std::to_string(b.dim()) + ")");
  const std::size_t d = a.dim();
  const std::size_t n = d * d;

  // Commutator equations are homogeneous; normalize the generators so both
  // blocks weigh in at a comparable scale.
  auto normalized = [](const ComplexMatrix& m) {
    const double f = frobenius_norm(m);
    return f > 0.0 ? Complex(1.0 / f, 0.0) * m : m;
  };
  const ComplexMatrix an = normalized(a.matrix());
  const ComplexMatrix bn = normalized(b.matrix());

  ComplexMatrix gram(n);
  accumulate_gram(an, gram);
  accumulate_gram(bn, gram);

  const SpectralDecomposition s = eigh(HermitianMatrix::symmetrized(gram));
  const double largest = std::max(s.eigenvalues.front(), 0.0);
  // gram eigenvalues are squared singular values of the stacked system
  const double cutoff = null_rel * null_rel * largest;
  std::size_t rank = 0;
  for (double v : s.eigenvalues)
    if (v > cutoff) ++rank;
  return std::max<std::size_t>(n - rank, 1);
}

}  // namespace pdorbit
