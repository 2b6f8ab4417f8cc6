#include "pdorbit/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pdorbit {

SpectrumVector::SpectrumVector(std::vector<double> values, Ordering tag)
    : values_(std::move(values)), tag_(tag) {
  for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
    if (tag_ == Ordering::non_increasing && values_[i] < values_[i + 1])
      throw ValidationError("vector tagged non-increasing ascends at index " + std::to_string(i));
    if (tag_ == Ordering::non_decreasing && values_[i] > values_[i + 1])
      throw ValidationError("vector tagged non-decreasing descends at index " + std::to_string(i));
  }
}

SpectrumVector SpectrumVector::sorted_desc(std::vector<double> values) {
  std::sort(values.begin(), values.end(), std::greater<double>());
  return SpectrumVector(std::move(values), Ordering::non_increasing);
}

double SpectrumVector::total() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

std::vector<double> SpectrumVector::descending() const {
  std::vector<double> v = values_;
  if (tag_ == Ordering::non_increasing) return v;
  if (tag_ == Ordering::non_decreasing) {
    std::reverse(v.begin(), v.end());
    return v;
  }
  std::sort(v.begin(), v.end(), std::greater<double>());
  return v;
}

namespace {
void require_same_size(const SpectrumVector& x, const SpectrumVector& y) {
  if (x.size() != y.size())
    throw DimensionError("majorization predicate: length mismatch (" + std::to_string(x.size()) +
                         " vs " + std::to_string(y.size()) + ")");
}
}  // namespace

bool submajorizes(const SpectrumVector& x, const SpectrumVector& y, double tol) {
  require_same_size(x, y);
  const std::vector<double> xd = x.descending();
  const std::vector<double> yd = y.descending();
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < xd.size(); ++i) {
    sx += xd[i];
    sy += yd[i];
    if (sx > sy + tol) return false;
  }
  return true;
}

bool majorizes(const SpectrumVector& x, const SpectrumVector& y, double tol) {
  require_same_size(x, y);
  if (!submajorizes(x, y, tol)) return false;
  return std::abs(x.total() - y.total()) <= tol * static_cast<double>(x.size());
}

MajorizationSlack majorization_slack(const SpectrumVector& x, const SpectrumVector& y) {
  require_same_size(x, y);
  const std::vector<double> xd = x.descending();
  const std::vector<double> yd = y.descending();
  double sx = 0.0, sy = 0.0, worst = 0.0;
  for (std::size_t i = 0; i < xd.size(); ++i) {
    sx += xd[i];
    sy += yd[i];
    worst = std::max(worst, sx - sy);
  }
  return MajorizationSlack{std::max(worst, 0.0), std::abs(x.total() - y.total())};
}

namespace {
std::vector<double> log_of(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = std::log(v[i]);
  return r;
}

// log of the eigenvalues of A^-1/2 B A^-1/2, non-increasing
std::vector<double> log_congruence_spectrum(const PositiveDefiniteMatrix& a,
                                            const PositiveDefiniteMatrix& b) {
  const ComplexMatrix r = a.apply(ScalarFunc::inv_sqrt).matrix();
  const HermitianMatrix m = HermitianMatrix::symmetrized(r * b.matrix() * r);
  const SpectralDecomposition s = eigh(m);
  std::vector<double> out(s.eigenvalues.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (s.eigenvalues[i] <= 0.0)
      throw SpectralDomainError("congruence A^-1/2 B A^-1/2 lost positivity; eigenvalue[" +
                                std::to_string(i) + "] = " + std::to_string(s.eigenvalues[i]));
    out[i] = std::log(s.eigenvalues[i]);
  }
  return out;
}

double l2_gap(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return std::sqrt(s);
}
}  // namespace

GnlBounds gnl_bounds(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b) {
  if (a.dim() != b.dim())
    throw DimensionError("gnl_bounds: dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()) + ")");
  const std::size_t d = a.dim();
  const std::vector<double> la = log_of(a.eigenvalues());  // non-increasing
  const std::vector<double> lb = log_of(b.eigenvalues());

  std::vector<double> lower(d), upper(d);
  for (std::size_t i = 0; i < d; ++i) {
    lower[i] = lb[i] - la[i];
    upper[i] = lb[i] - la[d - 1 - i];  // log lam_asc(A)
  }
  std::vector<double> mid = log_congruence_spectrum(a, b);

  return GnlBounds{SpectrumVector(std::move(lower), Ordering::unordered),
                   SpectrumVector(std::move(mid), Ordering::non_increasing),
                   SpectrumVector(std::move(upper), Ordering::non_increasing)};
}

GnlReport gnl_verify(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
                     double tol) {
  const GnlBounds g = gnl_bounds(a, b);
  GnlReport r;
  r.left_holds = majorizes(g.lower, g.mid, tol);
  r.right_holds = majorizes(g.mid, g.upper, tol);
  r.left_gap = l2_gap(g.lower.descending(), g.mid.descending());
  r.right_gap = l2_gap(g.mid.descending(), g.upper.descending());
  return r;
}

double equality_gap(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b) {
  if (a.dim() != b.dim())
    throw DimensionError("equality_gap: dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()) + ")");
  const std::size_t d = a.dim();
  std::vector<double> diff(d);
  for (std::size_t i = 0; i < d; ++i)
    diff[i] = std::log(b.eigenvalues()[i]) - std::log(a.eigenvalues()[i]);
  std::sort(diff.begin(), diff.end(), std::greater<double>());
  return l2_gap(diff, log_congruence_spectrum(a, b));
}

}  // namespace pdorbit
