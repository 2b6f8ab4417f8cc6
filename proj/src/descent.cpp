#include "pdorbit/descent.hpp"

#include <algorithm>
#include <cmath>

#include "pdorbit/commutant.hpp"

namespace pdorbit {

namespace {

std::vector<double> linspace_with_zero(double lo, double hi, int n) {
  if (n < 3) throw PreconditionError("curve sampling needs at least 3 t-samples");
  if (!(lo < hi) || lo > 0.0 || hi < 0.0)
    throw PreconditionError("t range must satisfy t_min <= 0 <= t_max with t_min < t_max");
  std::vector<double> t(n);
  const double h = (hi - lo) / static_cast<double>(n - 1);
  bool has_zero = false;
  for (int k = 0; k < n; ++k) {
    t[k] = lo + h * k;
    if (std::abs(t[k]) < 1e-14) {
      t[k] = 0.0;
      has_zero = true;
    }
  }
  if (!has_zero) throw PreconditionError("t grid must contain 0 (gamma(0) = I anchors the curve)");
  return t;
}

PositiveDefiniteMatrix moved_point(const PositiveDefiniteMatrix& c, const UnitaryMatrix& g) {
  return PositiveDefiniteMatrix(
      HermitianMatrix::symmetrized(g.matrix() * c.matrix() * adjoint(g.matrix())));
}

}  // namespace

CommonEigenbasis simultaneous_eigenbasis(const PositiveDefiniteMatrix& a,
                                         const PositiveDefiniteMatrix& c,
                                         bool descending_within_clusters) {
  if (a.dim() != c.dim()) throw DimensionError("simultaneous_eigenbasis: dimension mismatch");
  const std::size_t d = a.dim();
  const SpectralDecomposition& sa = a.spectrum();
  ComplexMatrix basis = sa.basis.matrix();
  ComplexMatrix m = adjoint(basis) * c.matrix() * basis;

  // Within each A-eigenvalue cluster the basis is free; rotate it so C's
  // block goes diagonal there, ordered as requested.
  const double gap = defaults::cluster_gap_rel * frobenius_norm(a.matrix());
  std::size_t lo = 0;
  while (lo < d) {
    std::size_t hi = lo + 1;
    while (hi < d && sa.eigenvalues[hi - 1] - sa.eigenvalues[hi] < gap) ++hi;
    const std::size_t w = hi - lo;
    if (w > 1) {
      ComplexMatrix block(w);
      for (std::size_t i = 0; i < w; ++i)
        for (std::size_t j = 0; j < w; ++j) block(i, j) = m(lo + i, lo + j);
      SpectralDecomposition sb = eigh(HermitianMatrix::symmetrized(block));
      // eigh sorts descending; flip for ascending order inside the cluster
      std::vector<std::size_t> ord(w);
      for (std::size_t j = 0; j < w; ++j) ord[j] = descending_within_clusters ? j : w - 1 - j;
      ComplexMatrix rotated(d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < w; ++j) {
          Complex z(0.0, 0.0);
          for (std::size_t k = 0; k < w; ++k) z += basis(i, lo + k) * sb.basis(k, ord[j]);
          rotated(i, j) = z;
        }
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < w; ++j) basis(i, lo + j) = rotated(i, j);
    }
    lo = hi;
  }

  m = adjoint(basis) * c.matrix() * basis;
  std::vector<double> beta(d);
  double off = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    beta[i] = m(i, i).real();
    for (std::size_t j = i + 1; j < d; ++j) off += 2.0 * std::norm(m(i, j));
  }
  return CommonEigenbasis{std::move(basis), a.eigenvalues(), std::move(beta), std::sqrt(off)};
}

DescentCurve commuting_descent_curve(const ProcrustesInstance& inst, const OrbitPoint& c,
                                     int t_samples) {
  const std::size_t d = inst.dim();
  const PositiveDefiniteMatrix& cm = c.matrix();
  const double comm_norm = frobenius_norm(commutator(inst.A().matrix(), cm.matrix()));
  const double comm_tol =
      defaults::tol_comm_rel * frobenius_norm(inst.A().matrix()) * frobenius_norm(cm.matrix());
  if (comm_norm > comm_tol)
    throw PreconditionError("commuting_descent_curve requires [A, C] = 0; ||[A,C]||_F = " +
                            std::to_string(comm_norm));

  const CommonEigenbasis eb = simultaneous_eigenbasis(inst.A(), cm, true);

  // adjacent pair with C ascending against A descending; take the one with
  // the largest first-order trace decrease
  std::size_t pick = d;
  double best_drop = 0.0;
  for (std::size_t i = 0; i + 1 < d; ++i) {
    if (eb.beta[i] < eb.beta[i + 1]) {
      const double drop = (eb.beta[i + 1] - eb.beta[i]) * (1.0 / eb.alpha[i + 1] - 1.0 / eb.alpha[i]);
      if (drop > best_drop) {
        best_drop = drop;
        pick = i;
      }
    }
  }
  if (pick == d)
    throw PreconditionError(
        "no ascending adjacent pair: C is already min-aligned with A in the common eigenbasis");

  const double a1 = eb.alpha[pick], a2 = eb.alpha[pick + 1];
  const double b1 = eb.beta[pick], b2 = eb.beta[pick + 1];

  if ((t_samples & 1) == 0) ++t_samples;  // keep t = 0 on the grid
  const double t_max = 0.5 * M_PI * (1.0 - 1.0 / static_cast<double>(t_samples));
  const std::vector<double> ts = linspace_with_zero(-t_max, t_max, t_samples);

  const double value0 = distance_fn(inst, cm);
  const double id_tol = 1e-12 * std::max(1.0, std::abs(b1 / a1) + std::abs(b2 / a2));

  DescentCurve curve;
  curve.kind = CurveKind::commuting_rotation;
  curve.t_range = {-t_max, t_max};
  curve.block = RotationBlock{pick, {a1, a2}, {b1, b2}};
  curve.samples.reserve(ts.size());

  for (double t : ts) {
    const double cs = std::cos(t), sn = std::sin(t);
    ComplexMatrix w = ComplexMatrix::identity(d);
    w(pick, pick) = Complex(cs, 0.0);
    w(pick, pick + 1) = Complex(sn, 0.0);
    w(pick + 1, pick) = Complex(-sn, 0.0);
    w(pick + 1, pick + 1) = Complex(cs, 0.0);
    const UnitaryMatrix gamma(eb.basis * w * adjoint(eb.basis));

    const double value = t == 0.0 ? value0 : distance_fn(inst, moved_point(cm, gamma));

    // exact identities on the 2x2 block, checked numerically
    const double r00 = cs * cs * b1 + sn * sn * b2;
    const double r01 = cs * sn * (b2 - b1);
    const double r11 = sn * sn * b1 + cs * cs * b2;
    const double tr_block = r00 / a1 + r11 / a2;
    const double det_block = (r00 * r11 - r01 * r01) / (a1 * a2);
    const double tr_claim = b1 / a1 + b2 / a2 + sn * sn * (b1 - b2) * (1.0 / a2 - 1.0 / a1);
    const double det_claim = b1 * b2 / (a1 * a2);
    if (std::abs(tr_block - tr_claim) > id_tol || std::abs(det_block - det_claim) > id_tol)
      throw ConvergenceError("commuting rotation block identity violated at t = " +
                                 std::to_string(t),
                             std::max(std::abs(tr_block - tr_claim), std::abs(det_block - det_claim)));

    curve.samples.push_back(CurveSample{t, gamma, value, 0.0});
  }
  return curve;
}

SpectralPath spectral_descent_path(const ProcrustesInstance& inst, const OrbitPoint& c,
                                   int t_samples, double t_min, double t_max) {
  const std::size_t d = inst.dim();
  const PositiveDefiniteMatrix& cm = c.matrix();
  const double gap = equality_gap(inst.A(), cm);
  const double gap_tol = defaults::certify_tol * static_cast<double>(d);
  if (gap <= gap_tol)
    throw PreconditionError("spectral_descent_path: point is already extremal (equality gap " +
                            std::to_string(gap) + " <= " + std::to_string(gap_tol) + ")");

  const ComplexMatrix& r = inst.a_inv_sqrt().matrix();
  const PositiveDefiniteMatrix m(HermitianMatrix::symmetrized(r * cm.matrix() * r));

  std::vector<double> b(d), a(d);
  for (std::size_t i = 0; i < d; ++i) {
    b[i] = std::log(m.eigenvalues()[i]);
    a[i] = std::log(cm.eigenvalues()[i]) - std::log(inst.A().eigenvalues()[i]);
  }
  std::sort(a.begin(), a.end(), std::greater<double>());

  const UnitaryMatrix& u = m.spectrum().basis;
  const double tau = std::exp(cm.log_det() - inst.A().log_det());

  SpectralPath path{SpectrumVector(a, Ordering::non_increasing),
                    SpectrumVector(b, Ordering::non_increasing),
                    tau,
                    u,
                    cm,
                    {}};

  const std::vector<double> ts = linspace_with_zero(t_min, t_max, t_samples);
  path.samples.reserve(ts.size());
  const ComplexMatrix& um = u.matrix();
  for (double t : ts) {
    const double w = std::abs(t);
    ComplexMatrix scaled(d);
    for (std::size_t i = 0; i < d; ++i) {
      const double rho = w * a[i] + (1.0 - w) * b[i];
      for (std::size_t row = 0; row < d; ++row) scaled(row, i) = um(row, i) * std::exp(rho);
    }
    path.samples.push_back(
        PathSample{t, PositiveDefiniteMatrix(HermitianMatrix::symmetrized(scaled * adjoint(um)))});
  }
  return path;
}

namespace {

// Orthonormal real basis of anti-Hermitian d x d matrices.
std::vector<ComplexMatrix> antihermitian_basis(std::size_t d) {
  std::vector<ComplexMatrix> basis;
  basis.reserve(d * d);
  for (std::size_t k = 0; k < d; ++k) {
    ComplexMatrix e(d);
    e(k, k) = Complex(0.0, 1.0);
    basis.push_back(std::move(e));
  }
  const double inv_sqrt2 = M_SQRT1_2;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      ComplexMatrix re(d);
      re(i, j) = Complex(inv_sqrt2, 0.0);
      re(j, i) = Complex(-inv_sqrt2, 0.0);
      basis.push_back(std::move(re));
      ComplexMatrix im(d);
      im(i, j) = Complex(0.0, inv_sqrt2);
      im(j, i) = Complex(0.0, inv_sqrt2);
      basis.push_back(std::move(im));
    }
  return basis;
}

// Isometric real coordinates of a Hermitian matrix.
void vectorize_hermitian(const ComplexMatrix& h, std::vector<double>& out) {
  const std::size_t d = h.dim();
  out.clear();
  for (std::size_t i = 0; i < d; ++i) out.push_back(h(i, i).real());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      out.push_back(M_SQRT2 * h(i, j).real());
      out.push_back(M_SQRT2 * h(i, j).imag());
    }
}

// Cholesky solve of the ridge-regularized normal equations.
std::vector<double> solve_spd(std::vector<std::vector<double>> g, std::vector<double> rhs) {
  const std::size_t n = rhs.size();
  double tr = 0.0;
  for (std::size_t i = 0; i < n; ++i) tr += g[i][i];
  const double ridge = 1e-10 * (tr / static_cast<double>(n)) + 1e-300;
  for (std::size_t i = 0; i < n; ++i) g[i][i] += ridge;
  // in-place Cholesky
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      double s = g[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= g[i][k] * g[j][k];
      g[i][j] = s / g[j][j];
    }
    double s = g[i][i];
    for (std::size_t k = 0; k < i; ++k) s -= g[i][k] * g[i][k];
    g[i][i] = std::sqrt(std::max(s, 1e-300));
  }
  for (std::size_t i = 0; i < n; ++i) {
    double s = rhs[i];
    for (std::size_t k = 0; k < i; ++k) s -= g[i][k] * rhs[k];
    rhs[i] = s / g[i][i];
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = rhs[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= g[k][ii] * rhs[k];
    rhs[ii] = s / g[ii][ii];
  }
  return rhs;
}

struct LiftState {
  ComplexMatrix u;
  ComplexMatrix v;
};

double lift_residual(const ComplexMatrix& asqi, const ComplexMatrix& cmat, const LiftState& st,
                     const ComplexMatrix& target, ComplexMatrix* gamma_out) {
  const ComplexMatrix s = st.u * asqi * adjoint(st.u);
  const ComplexMatrix t = st.v * cmat * adjoint(st.v);
  const ComplexMatrix g = s * t * s;
  if (gamma_out) *gamma_out = g;
  return frobenius_norm(g - target);
}

// One warm-started Gauss-Newton solve of Gamma(U, V) = target.
bool solve_lift_step(const ComplexMatrix& asqi, const ComplexMatrix& cmat,
                     const std::vector<ComplexMatrix>& tangent, LiftState& st,
                     const ComplexMatrix& target, double step, double tol, int max_iters) {
  const std::size_t d = asqi.dim();
  const std::size_t m = 2 * tangent.size();
  std::vector<std::vector<double>> jac(m);
  std::vector<double> rvec, col;

  for (int iter = 0; iter < max_iters; ++iter) {
    const ComplexMatrix s = st.u * asqi * adjoint(st.u);
    const ComplexMatrix t = st.v * cmat * adjoint(st.v);
    const ComplexMatrix g = s * t * s;
    const ComplexMatrix resid = target - g;
    const double r = frobenius_norm(resid);
    if (r <= tol) return true;

    const ComplexMatrix ts = t * s;
    const ComplexMatrix stm = s * t;
    vectorize_hermitian(resid, rvec);

    for (std::size_t k = 0; k < tangent.size(); ++k) {
      const ComplexMatrix ds = commutator(tangent[k], s);
      vectorize_hermitian(ds * ts + stm * ds, col);
      jac[k] = col;
      const ComplexMatrix dt = commutator(tangent[k], t);
      vectorize_hermitian(s * dt * s, col);
      jac[tangent.size() + k] = col;
    }

    std::vector<std::vector<double>> gram(m, std::vector<double>(m, 0.0));
    std::vector<double> rhs(m, 0.0);
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t q = p; q < m; ++q) {
        double sum = 0.0;
        for (std::size_t i = 0; i < rvec.size(); ++i) sum += jac[p][i] * jac[q][i];
        gram[p][q] = gram[q][p] = sum;
      }
      double sum = 0.0;
      for (std::size_t i = 0; i < rvec.size(); ++i) sum += jac[p][i] * rvec[i];
      rhs[p] = sum;
    }
    const std::vector<double> z = solve_spd(std::move(gram), std::move(rhs));

    ComplexMatrix x(d), y(d);
    for (std::size_t k = 0; k < tangent.size(); ++k) {
      for (std::size_t i = 0; i < d * d; ++i) {
        x.entries()[i] += z[k] * tangent[k].entries()[i];
        y.entries()[i] += z[tangent.size() + k] * tangent[k].entries()[i];
      }
    }

    bool accepted = false;
    double alpha = step;
    for (int bt = 0; bt < 30; ++bt) {
      LiftState trial{(unitary_exp(Complex(alpha, 0.0) * x).matrix()) * st.u,
                      (unitary_exp(Complex(alpha, 0.0) * y).matrix()) * st.v};
      const double rt = lift_residual(asqi, cmat, trial, target, nullptr);
      if (rt < r * (1.0 - 1e-4 * alpha)) {
        st = std::move(trial);
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) return lift_residual(asqi, cmat, st, target, nullptr) <= tol;
  }
  return lift_residual(asqi, cmat, st, target, nullptr) <= tol;
}

}  // namespace

DescentCurve lift_path(const ProcrustesInstance& inst, const SpectralPath& path, double step,
                       double residual_bound) {
  const std::size_t d = inst.dim();
  const std::size_t cdim =
      commutant_dimension(inst.A().hermitian(), path.base.hermitian());
  if (cdim != 1)
    throw PreconditionError("lift_path requires a trivial commutant {A, C}' (the map is not a "
                            "submersion otherwise); commutant dimension = " +
                            std::to_string(cdim));

  const ComplexMatrix& asqi = inst.a_inv_sqrt().matrix();
  const ComplexMatrix& cmat = path.base.matrix();
  const std::vector<ComplexMatrix> tangent = antihermitian_basis(d);
  // drive well below the deliverable bound so warm starts stay sharp
  const double solver_tol = 0.01 * residual_bound;

  std::size_t zero_idx = path.samples.size();
  for (std::size_t i = 0; i < path.samples.size(); ++i)
    if (path.samples[i].t == 0.0) zero_idx = i;
  if (zero_idx == path.samples.size())
    throw PreconditionError("lift_path: the spectral path has no t = 0 sample");

  DescentCurve curve;
  curve.kind = CurveKind::spectral_path_lifted;
  curve.t_range = {path.samples.front().t, path.samples.back().t};
  curve.complete = true;
  curve.last_good_t = 0.0;

  std::vector<CurveSample> side;
  auto run_side = [&](bool positive) {
    side.clear();
    LiftState st{ComplexMatrix::identity(d), ComplexMatrix::identity(d)};
    double last_good = 0.0;
    const std::ptrdiff_t begin = static_cast<std::ptrdiff_t>(zero_idx);
    const std::ptrdiff_t end = positive ? static_cast<std::ptrdiff_t>(path.samples.size()) : -1;
    const std::ptrdiff_t stride = positive ? 1 : -1;
    for (std::ptrdiff_t i = begin; i != end; i += stride) {
      const PathSample& ps = path.samples[static_cast<std::size_t>(i)];
      const bool ok = solve_lift_step(asqi, cmat, tangent, st, ps.l.matrix(), step, solver_tol, 60);
      const double res = lift_residual(asqi, cmat, st, ps.l.matrix(), nullptr);
      if (!ok && res > residual_bound) {
        curve.complete = false;
        break;
      }
      const UnitaryMatrix gamma(adjoint(st.u) * st.v);
      const double value = distance_fn(inst, moved_point(path.base, gamma));
      side.push_back(CurveSample{ps.t, gamma, value, res});
      last_good = ps.t;
    }
    curve.last_good_t = std::max(curve.last_good_t, std::abs(last_good));
    return side;
  };

  const std::vector<CurveSample> pos = run_side(true);
  std::vector<CurveSample> neg = zero_idx > 0 ? run_side(false) : std::vector<CurveSample>{};

  // negative side was walked outward; flip it and drop its duplicate t = 0
  std::reverse(neg.begin(), neg.end());
  if (!neg.empty()) neg.pop_back();
  curve.samples = std::move(neg);
  curve.samples.insert(curve.samples.end(), pos.begin(), pos.end());
  return curve;
}

}  // namespace pdorbit
