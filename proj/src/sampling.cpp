#include "pdorbit/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace pdorbit {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}
}  // namespace

std::uint64_t SplitMix64::next_u64() {
  state_ += kGamma;
  return mix64(state_);
}

double SplitMix64::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SplitMix64::next_gaussian() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  // u1 in (0, 1] so the log is finite
  const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = next_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  cached_ = r * std::sin(a);
  has_cached_ = true;
  return r * std::cos(a);
}

Complex SplitMix64::next_complex_gaussian() {
  return Complex(next_gaussian() * M_SQRT1_2, next_gaussian() * M_SQRT1_2);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return mix64(master + kGamma * (mix64(stream + kGamma) | 1ull));
}

UnitaryMatrix haar_unitary(std::size_t d, std::uint64_t seed) {
  if (d == 0) throw ValidationError("haar_unitary: dimension must be >= 1");
  SplitMix64 rng(seed);
  ComplexMatrix g(d);
  for (Complex& z : g.entries()) z = rng.next_complex_gaussian();

  // Modified Gram-Schmidt with one reorthogonalization pass. The column
  // residual norm is the (real positive) triangular diagonal entry, which is
  // exactly the convention that makes the Q factor Haar.
  ComplexMatrix q(d);
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<Complex> w(d);
    for (std::size_t i = 0; i < d; ++i) w[i] = g(i, j);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        Complex dot(0.0, 0.0);
        for (std::size_t i = 0; i < d; ++i) dot += std::conj(q(i, k)) * w[i];
        for (std::size_t i = 0; i < d; ++i) w[i] -= dot * q(i, k);
      }
    }
    double nrm = 0.0;
    for (const Complex& z : w) nrm += std::norm(z);
    nrm = std::sqrt(nrm);
    // A Ginibre sample is almost surely nonsingular; a zero residual would
    // mean a degenerate draw, so redraw the column deterministically.
    while (nrm < 1e-12) {
      for (std::size_t i = 0; i < d; ++i) w[i] = rng.next_complex_gaussian();
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t k = 0; k < j; ++k) {
          Complex dot(0.0, 0.0);
          for (std::size_t i = 0; i < d; ++i) dot += std::conj(q(i, k)) * w[i];
          for (std::size_t i = 0; i < d; ++i) w[i] -= dot * q(i, k);
        }
      nrm = 0.0;
      for (const Complex& z : w) nrm += std::norm(z);
      nrm = std::sqrt(nrm);
    }
    for (std::size_t i = 0; i < d; ++i) q(i, j) = w[i] / nrm;
  }
  return UnitaryMatrix(std::move(q));
}

PositiveDefiniteMatrix random_pd(std::size_t d, std::uint64_t seed, double cond_target) {
  if (d == 0) throw ValidationError("random_pd: dimension must be >= 1");
  if (!(cond_target >= 1.0))
    throw PreconditionError("random_pd: cond_target must be >= 1, got " +
                            std::to_string(cond_target));
  const UnitaryMatrix v = haar_unitary(d, derive_seed(seed, 1));
  SplitMix64 rng(derive_seed(seed, 2));
  const double scale = std::exp(rng.next_gaussian());
  const double log_cond = std::log(cond_target);

  std::vector<double> lam(d);
  if (d == 1) {
    lam[0] = scale;
  } else {
    lam[0] = scale * cond_target;  // endpoints pin the condition number exactly
    lam[d - 1] = scale;
    for (std::size_t i = 1; i + 1 < d; ++i) lam[i] = scale * std::exp(rng.next_unit() * log_cond);
    std::sort(lam.begin(), lam.end(), std::greater<double>());
  }

  const ComplexMatrix& u = v.matrix();
  ComplexMatrix scaled(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) scaled(i, j) = u(i, j) * lam[j];
  return PositiveDefiniteMatrix(HermitianMatrix::symmetrized(scaled * adjoint(u)));
}

HermitianMatrix random_hermitian(std::size_t d, std::uint64_t seed) {
  if (d == 0) throw ValidationError("random_hermitian: dimension must be >= 1");
  SplitMix64 rng(seed);
  ComplexMatrix m(d);
  for (std::size_t i = 0; i < d; ++i) {
    m(i, i) = Complex(rng.next_gaussian(), 0.0);
    for (std::size_t j = i + 1; j < d; ++j) {
      const Complex z = rng.next_complex_gaussian();
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  return HermitianMatrix::symmetrized(m);
}

ComplexMatrix random_antihermitian_direction(std::size_t d, std::uint64_t seed) {
  if (d == 0) throw ValidationError("random_antihermitian_direction: dimension must be >= 1");
  SplitMix64 rng(seed);
  ComplexMatrix x(d);
  for (std::size_t i = 0; i < d; ++i) {
    x(i, i) = Complex(0.0, rng.next_gaussian());
    for (std::size_t j = i + 1; j < d; ++j) {
      const Complex z = rng.next_complex_gaussian();
      x(i, j) = z;
      x(j, i) = -std::conj(z);
    }
  }
  const double nrm = frobenius_norm(x);
  for (Complex& z : x.entries()) z /= nrm;
  return x;
}

}  // namespace pdorbit
