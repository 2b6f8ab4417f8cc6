#pragma once

#include <span>
#include <string>
#include <string_view>

#include "pdorbit/spectral.hpp"

namespace pdorbit {

/// A unitarily invariant norm given as a symmetric gauge on singular values:
/// Schatten-p (p >= 1), Ky Fan-k, or the spectral norm. Schatten-infinity is
/// canonicalized to the spectral kind at construction.
class NormSpec {
 public:
  enum class Kind { schatten, kyfan, spectral };

  static NormSpec schatten(double p);
  static NormSpec kyfan(std::size_t k);
  static NormSpec spectral() { return NormSpec(Kind::spectral, 0.0, 0); }
  /// CLI spelling: "schatten:p", "kyfan:k", "spectral".
  static NormSpec parse(std::string_view spec);

  Kind kind() const { return kind_; }
  double p() const { return p_; }
  std::size_t k() const { return k_; }
  std::string label() const;
  /// True exactly for Schatten p with 1 < p < infinity.
  bool is_strictly_convex() const { return kind_ == Kind::schatten && p_ > 1.0; }

 private:
  NormSpec(Kind kind, double p, std::size_t k) : kind_(kind), p_(p), k_(k) {}
  Kind kind_;
  double p_;
  std::size_t k_;
};

/// The symmetric gauge applied to |x|.
double vector_norm(const NormSpec& n, std::span<const double> x);

/// N(M) through singular values; Hermitian inputs go through eigh.
double evaluate(const NormSpec& n, const ComplexMatrix& m);
double evaluate(const NormSpec& n, const HermitianMatrix& m);

}  // namespace pdorbit
