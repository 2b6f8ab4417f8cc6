#include <doctest.h>

#include "oracles.hpp"
#include "pdorbit/commutant.hpp"
#include "pdorbit/sampling.hpp"

using namespace pdorbit;

namespace {

ComplexMatrix diag(std::initializer_list<double> vals) {
  ComplexMatrix m(vals.size());
  std::size_t i = 0;
  for (double v : vals) m(i, i) = Complex(v, 0.0), ++i;
  return m;
}

ComplexMatrix real2x2(double a, double b, double c, double d) {
  ComplexMatrix m(2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

}  // namespace

TEST_CASE("ComplexMatrix validates shape") {
  CHECK_THROWS_AS(ComplexMatrix(0), ValidationError);
  CHECK_THROWS_AS(ComplexMatrix(2, std::vector<Complex>(3)), ValidationError);
  CHECK_NOTHROW(ComplexMatrix(2, std::vector<Complex>(4)));
}

TEST_CASE("HermitianMatrix rejects asymmetry and symmetrizes") {
  ComplexMatrix skew = real2x2(1.0, 2.0, -2.0, 1.0);
  CHECK_THROWS_AS(HermitianMatrix{skew}, ValidationError);

  ComplexMatrix nearly = real2x2(1.0, 2.0 + 1e-12, 2.0 - 1e-12, 3.0);
  HermitianMatrix h(nearly);
  CHECK(h(0, 1) == std::conj(h(1, 0)));
  CHECK(h(0, 1).real() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("UnitaryMatrix validates U*U = I") {
  CHECK_THROWS_AS(UnitaryMatrix{diag({1.0, 2.0})}, ValidationError);
  CHECK_NOTHROW(UnitaryMatrix{ComplexMatrix::identity(3)});
}

TEST_CASE("eigh: identity and diagonal inputs") {
  const SpectralDecomposition s1 = eigh(HermitianMatrix(ComplexMatrix::identity(2)));
  CHECK(s1.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(s1.eigenvalues[1] == doctest::Approx(1.0));

  const SpectralDecomposition s2 = eigh(HermitianMatrix(diag({3.0, 1.0})));
  CHECK(s2.eigenvalues[0] == doctest::Approx(3.0));
  CHECK(s2.eigenvalues[1] == doctest::Approx(1.0));
  CHECK(std::abs(s2.basis(0, 0)) == doctest::Approx(1.0));
}

TEST_CASE("eigh: 2x2 symmetric example with known eigenpairs") {
  const SpectralDecomposition s = eigh(HermitianMatrix(real2x2(2.0, 1.0, 1.0, 2.0)));
  CHECK(s.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(s.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
  // eigenvectors (1,1)/sqrt(2) and (1,-1)/sqrt(2), up to phase
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(s.basis(0, 0)) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
  CHECK(std::abs(s.basis(1, 0)) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
  const Complex ratio0 = s.basis(1, 0) / s.basis(0, 0);
  const Complex ratio1 = s.basis(1, 1) / s.basis(0, 1);
  CHECK(ratio0.real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ratio1.real() == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("eigh: random Hermitian matrices agree with the independent solver") {
  double max_recon = 0.0, max_eig_diff = 0.0, max_det_rel = 0.0, max_trace = 0.0;
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t d = 1 + (trial % 10);
    const HermitianMatrix h = random_hermitian(d, derive_seed(42, trial));
    const SpectralDecomposition s = eigh(h);
    for (std::size_t i = 0; i + 1 < d; ++i) CHECK(s.eigenvalues[i] >= s.eigenvalues[i + 1]);

    max_recon = std::max(max_recon, frobenius_norm(s.reconstruct().matrix() - h.matrix()) /
                                        frobenius_norm(h.matrix()));
    const std::vector<double> ref = oracle::eigenvalues_desc(h.matrix());
    for (std::size_t i = 0; i < d; ++i)
      max_eig_diff = std::max(max_eig_diff, std::abs(ref[i] - s.eigenvalues[i]));

    double sum = 0.0, prod = 1.0;
    for (double v : s.eigenvalues) {
      sum += v;
      prod *= v;
    }
    max_trace = std::max(max_trace, std::abs(sum - h.trace_real()));
    const Complex det = oracle::lu_determinant(h.matrix());
    if (std::abs(det) > 1e-6)
      max_det_rel = std::max(max_det_rel, std::abs(prod - det.real()) / std::abs(det));
  }
  CHECK(max_recon < 1e-9);
  CHECK(max_eig_diff < 1e-10);
  CHECK(max_trace < 1e-10);
  CHECK(max_det_rel < 1e-9);
}

TEST_CASE("eigh is deterministic and handles degenerate clusters") {
  const UnitaryMatrix u = haar_unitary(4, 99);
  std::vector<double> vals = {2.0, 2.0, 2.0, 1.0};
  const ComplexMatrix& um = u.matrix();
  ComplexMatrix scaled(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) scaled(i, j) = um(i, j) * vals[j];
  const HermitianMatrix h = HermitianMatrix::symmetrized(scaled * adjoint(um));

  const SpectralDecomposition s1 = eigh(h);
  const SpectralDecomposition s2 = eigh(h);
  CHECK(frobenius_norm(s1.reconstruct().matrix() - h.matrix()) < 1e-9 * frobenius_norm(h.matrix()));
  for (std::size_t i = 0; i < 16; ++i) {
    CHECK(s1.basis.matrix().entries()[i] == s2.basis.matrix().entries()[i]);
  }
  CHECK(s1.eigenvalues == s2.eigenvalues);
}

TEST_CASE("spectral_map: log examples") {
  const PositiveDefiniteMatrix id3(HermitianMatrix(ComplexMatrix::identity(3)));
  CHECK(frobenius_norm(id3.apply(ScalarFunc::log).matrix()) < 1e-14);

  const PositiveDefiniteMatrix de(HermitianMatrix(diag({std::exp(1.0), std::exp(2.0)})));
  const HermitianMatrix lg = de.apply(ScalarFunc::log);
  // diagonal case, but eigh sorts descending: log gives diag(2, 1) in sorted
  // basis which reconstructs back to diag(1, 2) in the original coordinates
  CHECK(lg(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lg(1, 1).real() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(lg(0, 1)) < 1e-12);
}

TEST_CASE("spectral_map: log of [[2,1],[1,2]] against closed form and series oracle") {
  const PositiveDefiniteMatrix m(HermitianMatrix(real2x2(2.0, 1.0, 1.0, 2.0)));
  const HermitianMatrix lg = m.apply(ScalarFunc::log);
  const double half_log3 = 0.5 * std::log(3.0);
  CHECK(lg(0, 0).real() == doctest::Approx(half_log3).epsilon(1e-12));
  CHECK(lg(0, 1).real() == doctest::Approx(half_log3).epsilon(1e-12));
  CHECK(lg(1, 1).real() == doctest::Approx(half_log3).epsilon(1e-12));

  const ComplexMatrix series = oracle::log_series(m.matrix());
  CHECK(frobenius_norm(lg.matrix() - series) < 1e-12);
}

TEST_CASE("spectral_map: exp(log(.)) is the identity on PD matrices") {
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 2 + (trial % 5);
    const PositiveDefiniteMatrix a = random_pd(d, derive_seed(7, trial), 50.0);
    const HermitianMatrix lg = a.apply(ScalarFunc::log);
    const SpectralDecomposition s = eigh(lg);
    const HermitianMatrix back = spectral_map(s, ScalarFunc::exp);
    CHECK(frobenius_norm(back.matrix() - a.matrix()) <
          1e-8 * frobenius_norm(a.matrix()));
  }
}

TEST_CASE("spectral_map: positivity domain errors name the eigenvalue") {
  const SpectralDecomposition s = eigh(HermitianMatrix(diag({1.0, -2.0})));
  CHECK_THROWS_WITH_AS(spectral_map(s, ScalarFunc::log),
                       doctest::Contains("eigenvalue[1] = -2.0"), SpectralDomainError);
  CHECK_THROWS_AS(spectral_map(s, ScalarFunc::sqrt), SpectralDomainError);
  CHECK_THROWS_AS(spectral_map(s, ScalarFunc::inv_sqrt), SpectralDomainError);
  CHECK_NOTHROW(spectral_map(s, ScalarFunc::exp));
}

TEST_CASE("unitary_exp matches the series oracle and validates input") {
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t d = 2 + (trial % 3);
    const ComplexMatrix x = Complex(0.7, 0.0) * random_antihermitian_direction(d, trial);
    const UnitaryMatrix e = unitary_exp(x);
    CHECK(frobenius_norm(e.matrix() - oracle::exp_series(x)) < 1e-12);
  }
  CHECK_THROWS_AS(unitary_exp(ComplexMatrix::identity(2)), PreconditionError);
}

TEST_CASE("haar_unitary: basic contracts") {
  const UnitaryMatrix u1 = haar_unitary(1, 5);
  CHECK(std::abs(u1(0, 0)) == doctest::Approx(1.0).epsilon(1e-12));

  for (std::size_t d = 2; d <= 10; ++d) {
    const UnitaryMatrix u = haar_unitary(d, 7);
    ComplexMatrix g = adjoint(u.matrix()) * u.matrix();
    for (std::size_t i = 0; i < d; ++i) g(i, i) -= Complex(1.0, 0.0);
    CHECK(frobenius_norm(g) < 1e-12);
  }

  const UnitaryMatrix a = haar_unitary(3, 11);
  const UnitaryMatrix b = haar_unitary(3, 11);
  const UnitaryMatrix c = haar_unitary(3, 12);
  CHECK(frobenius_norm(a.matrix() - b.matrix()) == 0.0);
  CHECK(frobenius_norm(a.matrix() - c.matrix()) > 1e-3);
}

TEST_CASE("haar_unitary: Monte Carlo moment E|U_11|^2 = 1/d at d = 2") {
  // |U_11|^2 is uniform on [0,1] at d = 2: variance 1/12
  const int n = 10000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const UnitaryMatrix u = haar_unitary(2, derive_seed(2024, i));
    sum += std::norm(u(0, 0));
  }
  const double mean = sum / n;
  const double se = std::sqrt(1.0 / 12.0 / n);
  CHECK(std::abs(mean - 0.5) < 3.0 * se);
}

TEST_CASE("random_pd: condition target and invariant sweep") {
  const PositiveDefiniteMatrix s1 = random_pd(1, 3, 1.0);
  CHECK(s1.eigenvalues()[0] > 0.0);

  const PositiveDefiniteMatrix m = random_pd(4, 3, 100.0);
  CHECK(m.eigenvalues().front() / m.eigenvalues().back() ==
        doctest::Approx(100.0).epsilon(1e-9));

  for (int seed = 0; seed < 1000; ++seed) {
    const PositiveDefiniteMatrix p = random_pd(3, seed, 1e3);
    CHECK(p.eigenvalues().back() > defaults::eps_pd * p.eigenvalues().front());
  }
  CHECK_THROWS_AS(random_pd(3, 1, 0.5), PreconditionError);
}

TEST_CASE("commutant_dimension: reference values") {
  const HermitianMatrix id3(ComplexMatrix::identity(3));
  CHECK(commutant_dimension(id3, id3) == 9);

  const HermitianMatrix d123(diag({1.0, 2.0, 3.0}));
  CHECK(commutant_dimension(d123, d123) == 3);

  // this pair generates the full 2x2 algebra
  CHECK(commutant_dimension(HermitianMatrix(diag({2.0, 1.0})),
                            HermitianMatrix(real2x2(2.0, 1.0, 1.0, 2.0))) == 1);
}

TEST_CASE("commutant_dimension: random non-commuting pairs are irreducible") {
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + (trial % 3);
    const HermitianMatrix a = random_hermitian(d, derive_seed(31, 2 * trial));
    const HermitianMatrix b = random_hermitian(d, derive_seed(31, 2 * trial + 1));
    REQUIRE(frobenius_norm(commutator(a.matrix(), b.matrix())) > 1e-8);
    CHECK(commutant_dimension(a, b) == 1);
  }
}

TEST_CASE("conjugate: identity, permutation, spectrum preservation") {
  const HermitianMatrix c(real2x2(1.5, 0.25, 0.25, 0.5));
  const HermitianMatrix same = conjugate(c, UnitaryMatrix::identity(2));
  CHECK(frobenius_norm(same.matrix() - c.matrix()) < 1e-15);

  ComplexMatrix swap(2);
  swap(0, 1) = 1.0;
  swap(1, 0) = 1.0;
  const HermitianMatrix flipped = conjugate(HermitianMatrix(diag({1.0, 2.0})), UnitaryMatrix(swap));
  CHECK(flipped(0, 0).real() == doctest::Approx(2.0));
  CHECK(flipped(1, 1).real() == doctest::Approx(1.0));

  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = 2 + (trial % 4);
    const HermitianMatrix h = random_hermitian(d, derive_seed(77, trial));
    const UnitaryMatrix u = haar_unitary(d, derive_seed(78, trial));
    const std::vector<double> before = eigh(h).eigenvalues;
    const std::vector<double> after = eigh(conjugate(h, u)).eigenvalues;
    for (std::size_t i = 0; i < d; ++i) CHECK(std::abs(before[i] - after[i]) < 1e-10);
  }

  CHECK_THROWS_AS(conjugate(HermitianMatrix(diag({1.0, 2.0})), UnitaryMatrix::identity(3)),
                  DimensionError);
}
