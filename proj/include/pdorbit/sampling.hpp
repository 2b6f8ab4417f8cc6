#pragma once

#include <cstdint>
#include <utility>

#include "pdorbit/spectral.hpp"

namespace pdorbit {

/// splitmix64 stream. Fully specified arithmetic, so sequences are identical
/// across platforms and standard libraries.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  /// Uniform in [0, 1).
  double next_unit();
  /// Standard normal via Box-Muller (pairs cached).
  double next_gaussian();
  /// Standard complex Gaussian: E|z|^2 = 1.
  Complex next_complex_gaussian();

 private:
  std::uint64_t state_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

/// Counter-based seed splitting: every consumer derives an independent stream
/// from (master, stream-index), so parallel and serial runs agree.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// Haar-uniform unitary: QR of an i.i.d. complex Ginibre matrix with the
/// triangular diagonal kept real positive. Deterministic given the seed.
UnitaryMatrix haar_unitary(std::size_t d, std::uint64_t seed);

/// V D V* with V Haar and a log-uniform spectrum spanning exactly
/// cond_target, under a random overall scale.
PositiveDefiniteMatrix random_pd(std::size_t d, std::uint64_t seed, double cond_target);

/// Gaussian Hermitian matrix (GUE-like, unnormalized).
HermitianMatrix random_hermitian(std::size_t d, std::uint64_t seed);

/// Gaussian anti-Hermitian direction, unit Frobenius norm.
ComplexMatrix random_antihermitian_direction(std::size_t d, std::uint64_t seed);

}  // namespace pdorbit
