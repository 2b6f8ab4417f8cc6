#include <doctest.h>

#include "oracles.hpp"
#include "pdorbit/majorization.hpp"
#include "pdorbit/sampling.hpp"

using namespace pdorbit;

namespace {

PositiveDefiniteMatrix pd_diag(std::initializer_list<double> vals) {
  ComplexMatrix m(vals.size());
  std::size_t i = 0;
  for (double v : vals) m(i, i) = Complex(v, 0.0), ++i;
  return PositiveDefiniteMatrix(HermitianMatrix(m));
}

SpectrumVector sv(std::initializer_list<double> vals) {
  return SpectrumVector(std::vector<double>(vals));
}

}  // namespace

TEST_CASE("SpectrumVector validates claimed ordering") {
  CHECK_THROWS_AS(SpectrumVector({1.0, 2.0}, Ordering::non_increasing), ValidationError);
  CHECK_THROWS_AS(SpectrumVector({2.0, 1.0}, Ordering::non_decreasing), ValidationError);
  CHECK_NOTHROW(SpectrumVector({2.0, 1.0}, Ordering::non_increasing));
  CHECK(SpectrumVector::sorted_desc({1.0, 3.0, 2.0}).values() ==
        std::vector<double>{3.0, 2.0, 1.0});
}

TEST_CASE("submajorizes and majorizes: reference cases") {
  CHECK(submajorizes(sv({3.0, 1.0}), sv({4.0, 1.0}), 1e-9));
  CHECK(submajorizes(sv({3.0, 1.0}), sv({3.0, 1.0}), 1e-9));
  CHECK_FALSE(submajorizes(sv({3.0, 1.0}), sv({2.0, 2.0}), 1e-9));

  CHECK(majorizes(sv({2.0, 2.0}), sv({3.0, 1.0}), 1e-9));
  CHECK(majorizes(sv({1.0, 3.0}), sv({3.0, 1.0}), 1e-9));  // sorting invariance
  CHECK_FALSE(majorizes(sv({3.0, 1.0}), sv({4.0, 1.0}), 1e-9));

  CHECK_THROWS_AS(submajorizes(sv({1.0}), sv({1.0, 2.0}), 1e-9), DimensionError);
}

TEST_CASE("predicates are invariant under permutations of the entries") {
  SplitMix64 rng(404);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(5), y(5);
    for (auto& v : x) v = rng.next_gaussian();
    for (auto& v : y) v = rng.next_gaussian();
    const bool base = submajorizes(SpectrumVector(x), SpectrumVector(y), 1e-9);
    std::reverse(x.begin(), x.end());
    std::swap(y[0], y[3]);
    CHECK(submajorizes(SpectrumVector(x), SpectrumVector(y), 1e-9) == base);
  }
}

TEST_CASE("entrywise dominance implies submajorization") {
  SplitMix64 rng(405);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(6), y(6);
    for (std::size_t i = 0; i < 6; ++i) {
      x[i] = rng.next_gaussian();
      y[i] = x[i] + std::abs(rng.next_gaussian());
    }
    CHECK(submajorizes(SpectrumVector(x), SpectrumVector(y), 1e-12));
  }
}

TEST_CASE("doubly-stochastic averaging yields majorized pairs; |x| submajorized by |y|") {
  SplitMix64 rng(406);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> y(5);
    for (auto& v : y) v = rng.next_gaussian() * 2.0;
    const std::vector<double> x = oracle::t_transform(y, rng);
    REQUIRE(majorizes(SpectrumVector(x), SpectrumVector(y), 1e-10));
    std::vector<double> ax = x, ay = y;
    for (auto& v : ax) v = std::abs(v);
    for (auto& v : ay) v = std::abs(v);
    CHECK(submajorizes(SpectrumVector(ax), SpectrumVector(ay), 1e-10));
  }
}

TEST_CASE("majorization with equal absolute rearrangements forces equal rearrangements") {
  SplitMix64 rng(407);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> y(5);
    for (auto& v : y) v = rng.next_gaussian();
    std::vector<double> x = y;
    for (std::size_t j = 4; j > 0; --j)
      std::swap(x[j], x[static_cast<std::size_t>(rng.next_unit() * (j + 1)) % (j + 1)]);
    REQUIRE(majorizes(SpectrumVector(x), SpectrumVector(y), 1e-12));
    CHECK(SpectrumVector(x).descending() == SpectrumVector(y).descending());

    // flipping one nonzero sign breaks the trace condition
    std::size_t k = 0;
    while (k < 5 && std::abs(y[k]) < 1e-6) ++k;
    if (k < 5) {
      std::vector<double> flipped = y;
      flipped[k] = -flipped[k];
      CHECK_FALSE(majorizes(SpectrumVector(flipped), SpectrumVector(y), 1e-9));
    }
  }
}

TEST_CASE("gnl_bounds: aligned diagonal cases") {
  const PositiveDefiniteMatrix a = pd_diag({4.0, 1.0});

  SUBCASE("A = B collapses lower and mid to zero") {
    const GnlBounds g = gnl_bounds(a, a);
    for (double v : g.lower.values()) CHECK(std::abs(v) < 1e-12);
    for (double v : g.mid.values()) CHECK(std::abs(v) < 1e-12);
    CHECK(g.upper.values()[0] == doctest::Approx(std::log(4.0)).epsilon(1e-12));
    CHECK(g.upper.values()[1] == doctest::Approx(-std::log(4.0)).epsilon(1e-12));
  }

  SUBCASE("commuting aligned pair") {
    const PositiveDefiniteMatrix b = pd_diag({9.0, 1.0});
    const GnlBounds g = gnl_bounds(a, b);
    CHECK(g.lower.values()[0] == doctest::Approx(std::log(2.25)).epsilon(1e-12));
    CHECK(g.lower.values()[1] == doctest::Approx(0.0));
    CHECK(g.mid.values()[0] == doctest::Approx(std::log(2.25)).epsilon(1e-12));
    CHECK(std::abs(g.mid.values()[1]) < 1e-12);
    CHECK(g.upper.values()[0] == doctest::Approx(std::log(9.0)).epsilon(1e-12));
    CHECK(g.upper.values()[1] == doctest::Approx(-std::log(4.0)).epsilon(1e-12));
  }
}

TEST_CASE("gnl chain holds on random pairs") {
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t d = 2 + (trial % 5);
    const PositiveDefiniteMatrix a = random_pd(d, derive_seed(11, 2 * trial), 80.0);
    const PositiveDefiniteMatrix b = random_pd(d, derive_seed(11, 2 * trial + 1), 80.0);
    const GnlBounds g = gnl_bounds(a, b);
    CHECK(majorizes(g.lower, g.mid, 1e-9));
    CHECK(majorizes(g.mid, g.upper, 1e-9));
  }
}

TEST_CASE("gnl_verify: gaps and flags") {
  const PositiveDefiniteMatrix a = pd_diag({4.0, 1.0, 0.5});
  const GnlReport same = gnl_verify(a, a);
  CHECK(same.left_holds);
  CHECK(same.right_holds);
  CHECK(same.left_gap < 1e-12);
  CHECK(same.right_gap > 0.1);  // A is not scalar

  const PositiveDefiniteMatrix b = pd_diag({10.0, 2.0, 0.25});
  const GnlReport aligned = gnl_verify(a, b);
  CHECK(aligned.left_gap < 1e-12);
  CHECK(aligned.right_gap > 0.1);
}

TEST_CASE("equality_gap: aligned, anti-aligned, and self") {
  const PositiveDefiniteMatrix a = pd_diag({4.0, 1.0});
  CHECK(equality_gap(a, pd_diag({9.0, 1.0})) < 1e-10);
  CHECK(equality_gap(a, a) < 1e-12);

  // anti-aligned: a = (log(9/4), 0) sorted, mid = (log 9, -log 4)
  const double gap = equality_gap(a, pd_diag({1.0, 9.0}));
  const double expect = std::hypot(std::log(2.25) - std::log(9.0), 0.0 + std::log(4.0));
  CHECK(gap == doctest::Approx(expect).epsilon(1e-10));
  CHECK(gap > 1.0);
}

TEST_CASE("mid spectrum agrees with a generalized-eigenproblem oracle") {
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 2 + (trial % 2);  // d <= 3
    const PositiveDefiniteMatrix a = random_pd(d, derive_seed(21, 2 * trial), 40.0);
    const PositiveDefiniteMatrix b = random_pd(d, derive_seed(21, 2 * trial + 1), 40.0);
    const GnlBounds g = gnl_bounds(a, b);
    const std::vector<double> ref = oracle::generalized_eigenvalues_desc(b.matrix(), a.matrix());
    for (std::size_t i = 0; i < d; ++i)
      CHECK(std::abs(std::exp(g.mid.values()[i]) - ref[i]) < 1e-8 * std::max(1.0, ref[i]));
  }
}
