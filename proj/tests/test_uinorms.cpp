#include <doctest.h>

#include "oracles.hpp"
#include "pdorbit/uinorms.hpp"

using namespace pdorbit;

namespace {

ComplexMatrix from_singular_values(const std::vector<double>& s, std::uint64_t seed) {
  const std::size_t d = s.size();
  const UnitaryMatrix u = haar_unitary(d, derive_seed(seed, 1));
  const UnitaryMatrix v = haar_unitary(d, derive_seed(seed, 2));
  ComplexMatrix scaled(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) scaled(i, j) = u(i, j) * s[j];
  return scaled * v.matrix();
}

}  // namespace

TEST_CASE("vector_norm: reference values") {
  const std::vector<double> v34 = {3.0, 4.0};
  CHECK(vector_norm(NormSpec::schatten(2.0), v34) == doctest::Approx(5.0));
  const std::vector<double> v3m4 = {3.0, -4.0};
  CHECK(vector_norm(NormSpec::spectral(), v3m4) == doctest::Approx(4.0));
  const std::vector<double> v341 = {3.0, 4.0, 1.0};
  CHECK(vector_norm(NormSpec::kyfan(2), v341) == doctest::Approx(7.0));
  CHECK_THROWS_AS(vector_norm(NormSpec::kyfan(4), v341), ValidationError);
}

TEST_CASE("evaluate: zero matrix, diagonal, and symmetric example") {
  CHECK(evaluate(NormSpec::schatten(1.0), ComplexMatrix(3)) == 0.0);

  ComplexMatrix d34(2);
  d34(0, 0) = 3.0;
  d34(1, 1) = 4.0;
  CHECK(evaluate(NormSpec::schatten(2.0), d34) == doctest::Approx(5.0).epsilon(1e-12));

  ComplexMatrix sym(2);
  sym(0, 0) = 2.0;
  sym(0, 1) = 1.0;
  sym(1, 0) = 1.0;
  sym(1, 1) = 2.0;
  // singular values 3 and 1
  CHECK(evaluate(NormSpec::schatten(1.0), sym) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("strict convexity flags") {
  CHECK(NormSpec::schatten(2.0).is_strictly_convex());
  CHECK(NormSpec::schatten(1.5).is_strictly_convex());
  CHECK_FALSE(NormSpec::schatten(1.0).is_strictly_convex());
  CHECK_FALSE(NormSpec::spectral().is_strictly_convex());
  CHECK_FALSE(NormSpec::kyfan(1).is_strictly_convex());
  CHECK_FALSE(NormSpec::kyfan(3).is_strictly_convex());
  // schatten infinity canonicalizes to the spectral kind
  CHECK(NormSpec::schatten(std::numeric_limits<double>::infinity()).kind() ==
        NormSpec::Kind::spectral);
}

TEST_CASE("parse spellings") {
  CHECK(NormSpec::parse("schatten:2").label() == "schatten:2");
  CHECK(NormSpec::parse("schatten:1.5").p() == doctest::Approx(1.5));
  CHECK(NormSpec::parse("schatten:inf").kind() == NormSpec::Kind::spectral);
  CHECK(NormSpec::parse("kyfan:3").k() == 3);
  CHECK(NormSpec::parse("spectral").kind() == NormSpec::Kind::spectral);
  CHECK_THROWS_AS(NormSpec::parse("frobenius"), ValidationError);
  CHECK_THROWS_AS(NormSpec::parse("schatten:0.5"), ValidationError);
  CHECK_THROWS_AS(NormSpec::parse("kyfan:x"), ValidationError);
}

TEST_CASE("unitary invariance on random matrices") {
  double worst = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 2 + (trial % 5);
    SplitMix64 rng(derive_seed(500, trial));
    ComplexMatrix m(d);
    for (Complex& z : m.entries()) z = rng.next_complex_gaussian();
    const UnitaryMatrix u = haar_unitary(d, derive_seed(501, trial));
    const UnitaryMatrix v = haar_unitary(d, derive_seed(502, trial));
    const ComplexMatrix moved = u.matrix() * m * v.matrix();
    for (const NormSpec& n : {NormSpec::schatten(1.0), NormSpec::schatten(2.0),
                              NormSpec::schatten(3.0), NormSpec::spectral(), NormSpec::kyfan(2)})
      worst = std::max(worst, std::abs(evaluate(n, moved) - evaluate(n, m)));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("submajorized singular values give smaller norms") {
  SplitMix64 rng(510);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = 3 + (trial % 3);
    std::vector<double> y(d);
    for (auto& v : y) v = std::abs(rng.next_gaussian()) + 0.1;
    std::vector<double> x = oracle::t_transform(y, rng);
    for (auto& v : x) v *= 0.9;  // strictly inside the submajorization order
    const ComplexMatrix mb = from_singular_values(y, derive_seed(511, trial));
    const ComplexMatrix ma = from_singular_values(x, derive_seed(512, trial));
    for (const NormSpec& n :
         {NormSpec::schatten(1.0), NormSpec::schatten(1.5), NormSpec::schatten(2.0),
          NormSpec::schatten(3.0), NormSpec::spectral(), NormSpec::kyfan(1), NormSpec::kyfan(2)})
      CHECK(evaluate(n, ma) <= evaluate(n, mb) + 1e-9);
  }
}

TEST_CASE("strictly convex norms separate distinct singular spectra") {
  SplitMix64 rng(520);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 3;
    std::vector<double> y(d);
    for (auto& v : y) v = std::abs(rng.next_gaussian()) + 0.2;
    std::vector<double> x = oracle::t_transform(y, rng);
    for (auto& v : x) v *= 0.85;
    const ComplexMatrix mb = from_singular_values(y, derive_seed(521, trial));
    const ComplexMatrix ma = from_singular_values(x, derive_seed(522, trial));
    for (double p : {1.5, 2.0, 3.0}) {
      const NormSpec n = NormSpec::schatten(p);
      const double delta = (vector_norm(n, y) - vector_norm(n, x)) / 2.0;
      REQUIRE(delta > 0.0);
      CHECK(evaluate(n, ma) < evaluate(n, mb) - delta);
    }
  }
}

TEST_CASE("norm axioms: homogeneity and triangle inequality") {
  SplitMix64 rng(530);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 2 + (trial % 4);
    ComplexMatrix m1(d), m2(d);
    for (Complex& z : m1.entries()) z = rng.next_complex_gaussian();
    for (Complex& z : m2.entries()) z = rng.next_complex_gaussian();
    const double s = 0.3 + rng.next_unit();
    for (const NormSpec& n : {NormSpec::schatten(1.0), NormSpec::schatten(2.0),
                              NormSpec::schatten(2.5), NormSpec::spectral(), NormSpec::kyfan(2)}) {
      CHECK(evaluate(n, Complex(s, 0.0) * m1) ==
            doctest::Approx(s * evaluate(n, m1)).epsilon(1e-10));
      CHECK(evaluate(n, m1 + m2) <= evaluate(n, m1) + evaluate(n, m2) + 1e-10);
    }
  }
}

TEST_CASE("kyfan ignores zero singular values beyond the rank") {
  ComplexMatrix rank1(3);
  rank1(0, 0) = 2.0;  // singular values (2, 0, 0)
  CHECK(evaluate(NormSpec::kyfan(3), rank1) == doctest::Approx(2.0).epsilon(1e-12));
}
