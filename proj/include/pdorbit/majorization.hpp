#pragma once

#include <span>

#include "pdorbit/spectral.hpp"

namespace pdorbit {

enum class Ordering { unordered, non_increasing, non_decreasing };

/// Real vector with an ordering tag. Tagged vectors are validated against the
/// claimed monotonicity at construction.
class SpectrumVector {
 public:
  explicit SpectrumVector(std::vector<double> values, Ordering tag = Ordering::unordered);
  /// Sorts a copy descending and tags it.
  static SpectrumVector sorted_desc(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  Ordering ordering() const { return tag_; }
  std::size_t size() const { return values_.size(); }
  double total() const;
  /// Entries in non-increasing order (copy unless already tagged so).
  std::vector<double> descending() const;

 private:
  std::vector<double> values_;
  Ordering tag_;
};

/// x submajorized by y (x prec_w y): every partial sum of x sorted descending
/// stays within tol of the corresponding partial sum of y.
bool submajorizes(const SpectrumVector& x, const SpectrumVector& y,
                  double tol = defaults::tol_majorization);

/// x majorized by y: submajorized with equal totals (within tol * d).
bool majorizes(const SpectrumVector& x, const SpectrumVector& y,
               double tol = defaults::tol_majorization);

/// Largest partial-sum excess of x over y (0 when x prec_w y exactly), and
/// the total mismatch. Used for sweep reporting.
struct MajorizationSlack {
  double max_partial_excess;
  double total_mismatch;
};
MajorizationSlack majorization_slack(const SpectrumVector& x, const SpectrumVector& y);

/// The three vectors of the multiplicative eigenvalue-comparison chain for a
/// PD pair: lower = log lam_desc(B) - log lam_desc(A), mid = log lam(B A^-1),
/// upper = log lam_desc(B) - log lam_asc(A), with lower < mid < upper in the
/// majorization order. mid is computed through the Hermitian congruence
/// A^-1/2 B A^-1/2, which is similar to B A^-1 and keeps the spectrum real.
struct GnlBounds {
  SpectrumVector lower;
  SpectrumVector mid;
  SpectrumVector upper;
};
GnlBounds gnl_bounds(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b);

struct GnlReport {
  bool left_holds;
  bool right_holds;
  double left_gap;   // l2 distance between sorted lower and mid
  double right_gap;  // l2 distance between sorted mid and upper
};
GnlReport gnl_verify(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
                     double tol = defaults::tol_majorization);

/// l2 distance between (log lam(B) - log lam(A)) sorted descending and
/// log lam(B A^-1). Vanishes exactly when A and B are simultaneously
/// diagonalizable with both eigenvalue lists non-increasing in a common basis.
double equality_gap(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b);

}  // namespace pdorbit
