#include "pdorbit/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "pdorbit/commutant.hpp"
#include "pdorbit/extrema.hpp"
#include "pdorbit/io.hpp"
#include "pdorbit/sampling.hpp"

namespace pdorbit::acceptance {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

std::string fe(double v) { return fmt("%.3e", v); }

struct Ctx {
  const RunConfig& cfg;
  std::uint64_t item_seed;
};

PositiveDefiniteMatrix from_spectrum(const UnitaryMatrix& u, const std::vector<double>& vals) {
  const std::size_t d = u.dim();
  const ComplexMatrix& um = u.matrix();
  ComplexMatrix scaled(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) scaled(i, j) = um(i, j) * vals[j];
  return PositiveDefiniteMatrix(HermitianMatrix::symmetrized(scaled * adjoint(um)));
}

// independent determinant route: complex LU with partial pivoting
Complex lu_determinant(ComplexMatrix m) {
  const std::size_t n = m.dim();
  Complex det(1.0, 0.0);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = std::abs(m(col, col));
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m(r, col)) > best) {
        best = std::abs(m(r, col));
        piv = r;
      }
    if (best == 0.0) return Complex(0.0, 0.0);
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = m(r, col) / m(col, col);
      for (std::size_t j = col; j < n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return det;
}

double log_uniform(SplitMix64& rng, double lo, double hi) {
  return lo * std::exp(rng.next_unit() * std::log(hi / lo));
}

// ---- criterion 1: GNL chain ----

CriterionResult item_gnl_chain(const Ctx& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  const double tol_cfg = ctx.cfg.tolerances.majorization;
  constexpr double tol_pinned = 1e-9;

  std::size_t pairs = 0, fails_cfg = 0, fails_pinned = 0;
  double max_excess = 0.0, max_trace = 0.0;
  for (std::size_t d = 2; d <= 6; ++d) {
    for (int trial = 0; trial < 1000; ++trial) {
      const std::uint64_t s = derive_seed(ctx.item_seed, d * 1000003ull + trial);
      SplitMix64 rng(derive_seed(s, 0));
      const PositiveDefiniteMatrix a = random_pd(d, derive_seed(s, 1), log_uniform(rng, 1.0, 1e3));
      const PositiveDefiniteMatrix b = random_pd(d, derive_seed(s, 2), log_uniform(rng, 1.0, 1e3));
      const GnlBounds g = gnl_bounds(a, b);
      const bool ok_cfg = majorizes(g.lower, g.mid, tol_cfg) && majorizes(g.mid, g.upper, tol_cfg);
      const bool ok_pin =
          majorizes(g.lower, g.mid, tol_pinned) && majorizes(g.mid, g.upper, tol_pinned);
      if (!ok_cfg) ++fails_cfg;
      if (!ok_pin) ++fails_pinned;
      for (const auto& [x, y] : {std::pair{&g.lower, &g.mid}, std::pair{&g.mid, &g.upper}}) {
        const MajorizationSlack sl = majorization_slack(*x, *y);
        max_excess = std::max(max_excess, sl.max_partial_excess);
        max_trace = std::max(max_trace, sl.total_mismatch);
      }
      ++pairs;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::string metrics = std::to_string(pairs) + " pairs (d=2..6); max partial-sum excess " +
                        fe(max_excess) + "; max trace mismatch " + fe(max_trace) +
                        "; violations " + std::to_string(fails_cfg);
  if (fails_cfg > 0 && fails_pinned == 0)
    metrics += " (tolerance-induced: configured " + fe(tol_cfg) + " vs default " + fe(tol_pinned) + ")";
  const bool runtime_ok = secs < 30.0;
  if (!runtime_ok) metrics += "; RUNTIME OVER 30 s";
  return CriterionResult{1, "gnl-chain", fails_cfg == 0 && runtime_ok, metrics, secs};
}

// ---- criterion 2: equality characterization ----

CriterionResult item_equality(const Ctx& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  double max_aligned_gap = 0.0;
  double min_generic_gap = std::numeric_limits<double>::infinity();
  std::size_t commutant_failures = 0;

  for (int i = 0; i < 200; ++i) {
    const std::size_t d = 2 + (i % 5);
    const std::uint64_t s = derive_seed(ctx.item_seed, 500 + i);
    SplitMix64 rng(derive_seed(s, 0));
    const UnitaryMatrix u = haar_unitary(d, derive_seed(s, 1));
    std::vector<double> alpha(d), beta(d);
    for (std::size_t j = 0; j < d; ++j) alpha[j] = std::exp(1.2 * rng.next_gaussian());
    for (std::size_t j = 0; j < d; ++j) beta[j] = std::exp(1.2 * rng.next_gaussian());
    std::sort(alpha.begin(), alpha.end(), std::greater<double>());
    std::sort(beta.begin(), beta.end(), std::greater<double>());
    const PositiveDefiniteMatrix a = from_spectrum(u, alpha);
    const PositiveDefiniteMatrix b = from_spectrum(u, beta);
    max_aligned_gap = std::max(max_aligned_gap, equality_gap(a, b));
  }

  for (int i = 0; i < 200; ++i) {
    const std::size_t d = 2 + (i % 5);
    const std::uint64_t s = derive_seed(ctx.item_seed, 900 + i);
    SplitMix64 rng(derive_seed(s, 0));
    const PositiveDefiniteMatrix a = random_pd(d, derive_seed(s, 1), log_uniform(rng, 1.0, 100.0));
    const PositiveDefiniteMatrix b = random_pd(d, derive_seed(s, 2), log_uniform(rng, 1.0, 100.0));
    if (commutant_dimension(a.hermitian(), b.hermitian()) != 1) ++commutant_failures;
    min_generic_gap = std::min(min_generic_gap, equality_gap(a, b));
  }

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool pass =
      max_aligned_gap < 1e-8 && min_generic_gap > 1e-4 && commutant_failures == 0;
  const std::string metrics = "200 aligned pairs, max gap " + fe(max_aligned_gap) +
                              " (< 1e-08); 200 generic commutant-1 pairs, min gap " +
                              fe(min_generic_gap) + " (> 1e-04); commutant violations " +
                              std::to_string(commutant_failures);
  return CriterionResult{2, "equality-characterization", pass, metrics, secs};
}

// ---- criteria 3 and 4 share one instance stream ----

struct OracleInstance {
  PositiveDefiniteMatrix a;
  PositiveDefiniteMatrix b;
  std::uint64_t oracle_seed;
};

std::vector<OracleInstance> oracle_instances(std::uint64_t item3_seed) {
  std::vector<OracleInstance> out;
  for (int i = 0; i < 50; ++i) {
    const std::uint64_t s = derive_seed(item3_seed, 1000 + i);
    SplitMix64 rng(derive_seed(s, 0));
    out.push_back(OracleInstance{random_pd(2, derive_seed(s, 1), log_uniform(rng, 1.5, 30.0)),
                                 random_pd(2, derive_seed(s, 2), log_uniform(rng, 1.5, 30.0)),
                                 derive_seed(s, 3)});
  }
  for (int i = 0; i < 20; ++i) {
    const std::uint64_t s = derive_seed(item3_seed, 2000 + i);
    SplitMix64 rng(derive_seed(s, 0));
    out.push_back(OracleInstance{random_pd(3, derive_seed(s, 1), log_uniform(rng, 1.5, 30.0)),
                                 random_pd(3, derive_seed(s, 2), log_uniform(rng, 1.5, 30.0)),
                                 derive_seed(s, 3)});
  }
  return out;
}

CriterionResult item_oracle_agreement(const Ctx& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<OracleInstance> instances = oracle_instances(ctx.item_seed);
  double max_diff = 0.0;
  std::size_t comparisons = 0, failures = 0;
  const NormSpec norms[2] = {NormSpec::schatten(2.0), NormSpec::schatten(3.0)};
  for (const OracleInstance& oi : instances) {
    for (int ni = 0; ni < 2; ++ni) {
      const ProcrustesInstance inst(oi.a, oi.b, norms[ni]);
      for (OptMode mode : {OptMode::min, OptMode::max}) {
        const double closed = mode == OptMode::min ? global_minimizer(inst).value
                                                   : global_maximizer(inst).value;
        const BruteForceResult oracle = brute_force_extremum(
            inst, mode, 8, derive_seed(oi.oracle_seed, 2 * ni + (mode == OptMode::max)));
        const double diff = std::abs(closed - oracle.value);
        max_diff = std::max(max_diff, diff);
        if (diff >= 1e-4) ++failures;
        ++comparisons;
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::string metrics = std::to_string(comparisons) +
                        " comparisons (50 at d=2, 20 at d=3; schatten:2/3; min+max); max |closed - "
                        "oracle| " +
                        fe(max_diff) + "; failures " + std::to_string(failures);
  const bool runtime_ok = secs < 300.0;
  if (!runtime_ok) metrics += "; RUNTIME OVER 5 min";
  return CriterionResult{3, "closed-form-vs-brute-force", failures == 0 && runtime_ok, metrics,
                         secs};
}

CriterionResult item_spectral_norm_value(const Ctx& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  // same instance stream as criterion 3
  const std::vector<OracleInstance> instances =
      oracle_instances(derive_seed(ctx.cfg.seed, 0xA0 + 3));
  double max_diff = 0.0;
  std::size_t failures = 0;
  for (const OracleInstance& oi : instances) {
    const ProcrustesInstance inst(oi.a, oi.b, NormSpec::spectral());
    const double closed = global_minimizer(inst).value;
    const BruteForceResult oracle =
        brute_force_extremum(inst, OptMode::min, 8, derive_seed(oi.oracle_seed, 17));
    const double diff = std::abs(closed - oracle.value);
    max_diff = std::max(max_diff, diff);
    if (diff >= 1e-4) ++failures;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string metrics = "70 minimum-value comparisons under the spectral norm; max diff " +
                              fe(max_diff) + "; failures " + std::to_string(failures);
  return CriterionResult{4, "spectral-norm-min-value", failures == 0, metrics, secs};
}

// ---- criteria 5 and 8(b) share the commuting misordered construction ----

struct CommutingCase {
  ProcrustesInstance inst;
  OrbitPoint point;
};

CommutingCase commuting_misordered_case(std::uint64_t seed, std::size_t d) {
  SplitMix64 rng(derive_seed(seed, 0));
  const UnitaryMatrix u = haar_unitary(d, derive_seed(seed, 1));
  std::vector<double> alpha(d), beta(d);
  // modest scale keeps the exact block identities testable at 1e-12 absolute
  for (std::size_t j = 0; j < d; ++j) alpha[j] = log_uniform(rng, 1.0 / 3.0, 3.0);
  for (std::size_t j = 0; j < d; ++j) beta[j] = log_uniform(rng, 1.0 / 3.0, 3.0);
  std::sort(alpha.begin(), alpha.end(), std::greater<double>());
  // random arrangement of beta; force at least one ascending adjacent pair
  for (std::size_t j = d; j-- > 1;) {
    const std::size_t k = static_cast<std::size_t>(rng.next_unit() * (j + 1));
    std::swap(beta[j], beta[std::min(k, j)]);
  }
  bool ascending_pair = false;
  for (std::size_t j = 0; j + 1 < d; ++j)
    if (beta[j] < beta[j + 1]) ascending_pair = true;
  if (!ascending_pair) {
    std::size_t j = 0;
    while (j + 1 < d && beta[j] == beta[j + 1]) ++j;
    if (beta[j] > beta[std::min(j + 1, d - 1)]) std::swap(beta[j], beta[j + 1]);
  }
  const PositiveDefiniteMatrix a = from_spectrum(u, alpha);
  const PositiveDefiniteMatrix c = from_spectrum(u, beta);
  ProcrustesInstance inst(a, c, NormSpec::schatten(2.0));
  OrbitPoint op = OrbitPoint::from_witness(inst.B(), UnitaryMatrix::identity(d));
  return CommutingCase{std::move(inst), std::move(op)};
}

CriterionResult item_commuting_identities(const Ctx& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  double max_identity_residual = 0.0;
  double min_decrease_margin = std::numeric_limits<double>::infinity();
  std::size_t failures = 0, samples_checked = 0;

  for (int i = 0; i < 100; ++i) {
    const std::size_t d = 2 + (i % 4);
    const CommutingCase cc = commuting_misordered_case(derive_seed(ctx.item_seed, 100 + i), d);
    const DescentCurve curve = commuting_descent_curve(cc.inst, cc.point, 41);
    const RotationBlock& blk = *curve.block;
    const long double a1 = blk.alpha[0], a2 = blk.alpha[1];
    const long double b1 = blk.beta[0], b2 = blk.beta[1];

    double value0 = 0.0;
    for (const CurveSample& smp : curve.samples)
      if (smp.t == 0.0) value0 = smp.value;

    bool ok = curve.samples.size() == 41;
    for (const CurveSample& smp : curve.samples) {
      // block product recomputed in extended precision, independent route
      const long double cs = std::cos((long double)smp.t), sn = std::sin((long double)smp.t);
      const long double r00 = cs * cs * b1 + sn * sn * b2;
      const long double r01 = cs * sn * (b2 - b1);
      const long double r11 = sn * sn * b1 + cs * cs * b2;
      const long double tr_num = r00 / a1 + r11 / a2;
      const long double det_num = (r00 / a1) * (r11 / a2) - (r01 / a1) * (r01 / a2);
      const long double tr_claim =
          b1 / a1 + b2 / a2 + sn * sn * (b1 - b2) * (1.0L / a2 - 1.0L / a1);
      const long double det_claim = (b1 * b2) / (a1 * a2);
      const double resid = std::max(std::abs((double)(tr_num - tr_claim)),
                                    std::abs((double)(det_num - det_claim)));
      max_identity_residual = std::max(max_identity_residual, resid);
      if (resid > 1e-12) ok = false;
      if (smp.t != 0.0) {
        min_decrease_margin = std::min(min_decrease_margin, value0 - smp.value);
        if (!(smp.value < value0)) ok = false;
      }
      ++samples_checked;
    }
    if (!ok) ++failures;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string metrics =
      "100 commuting misordered instances, " + std::to_string(samples_checked) +
      " samples; max block-identity residual " + fe(max_identity_residual) +
      " (<= 1e-12); min strict-decrease margin " + fe(min_decrease_margin) + "; failures " +
      std::to_string(failures);
  return CriterionResult{5, "commuting-rotation-identities", failures == 0, metrics, secs};
}

// ---- criterion 6: spectral path laws ----

CriterionResult item_path_laws(const Ctx& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  const double tol_major = ctx.cfg.tolerances.majorization;
  double max_det_rel = 0.0, max_endpoint_diff = 0.0;
  std::size_t failures = 0;

  for (int i = 0; i < 100; ++i) {
    const std::size_t d = 2 + (i % 4);
    const std::uint64_t s = derive_seed(ctx.item_seed, 300 + i);
    SplitMix64 rng(derive_seed(s, 0));
    const PositiveDefiniteMatrix a = random_pd(d, derive_seed(s, 1), log_uniform(rng, 1.5, 50.0));
    const PositiveDefiniteMatrix b = random_pd(d, derive_seed(s, 2), log_uniform(rng, 1.5, 50.0));
    const ProcrustesInstance inst(a, b, NormSpec::schatten(2.0));
    const OrbitPoint op = OrbitPoint::from_witness(inst.B(), UnitaryMatrix::identity(d));
    const SpectralPath path = spectral_descent_path(inst, op, 41, -1.0, 1.0);
    const double min_value = global_minimizer(inst).value;

    std::vector<double> logs0;
    double f0 = 0.0;
    bool ok = true;
    for (const PathSample& ps : path.samples) {
      std::vector<double> logs(d);
      for (std::size_t j = 0; j < d; ++j) logs[j] = std::log(ps.l.eigenvalues()[j]);
      const double f = vector_norm(inst.norm(), logs);
      if (ps.t == 0.0) {
        logs0 = logs;
        f0 = f;
      }
    }
    for (const PathSample& ps : path.samples) {
      const double det_rel = std::abs(lu_determinant(ps.l.matrix()) - Complex(path.tau, 0.0)) /
                             std::abs(path.tau);
      max_det_rel = std::max(max_det_rel, det_rel);
      if (det_rel > 1e-8) ok = false;

      std::vector<double> logs(d);
      for (std::size_t j = 0; j < d; ++j) logs[j] = std::log(ps.l.eigenvalues()[j]);
      if (!majorizes(SpectrumVector(logs), SpectrumVector(logs0), tol_major)) ok = false;

      const double f = vector_norm(inst.norm(), logs);
      if (ps.t != 0.0 && !(f < f0)) ok = false;
      if (std::abs(std::abs(ps.t) - 1.0) < 1e-15) {
        const double endpoint_diff = std::abs(f - min_value);
        max_endpoint_diff = std::max(max_endpoint_diff, endpoint_diff);
        if (endpoint_diff > 1e-9) ok = false;
      }
    }
    if (!ok) ++failures;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string metrics = "100 paths, 41 samples each; max relative det drift " +
                              fe(max_det_rel) + " (<= 1e-08); max endpoint-vs-minimum diff " +
                              fe(max_endpoint_diff) + " (<= 1e-09); failures " +
                              std::to_string(failures);
  return CriterionResult{6, "spectral-path-laws", failures == 0, metrics, secs};
}

// ---- criterion 7: numerical lifting ----

CriterionResult item_lifting(const Ctx& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  double max_residual = 0.0;
  std::size_t failures = 0;

  for (int i = 0; i < 20; ++i) {
    const std::size_t d = 2 + (i % 2);
    const std::uint64_t s = derive_seed(ctx.item_seed, 700 + i);
    SplitMix64 rng(derive_seed(s, 0));
    const PositiveDefiniteMatrix a = random_pd(d, derive_seed(s, 1), log_uniform(rng, 1.5, 20.0));
    const PositiveDefiniteMatrix b = random_pd(d, derive_seed(s, 2), log_uniform(rng, 1.5, 20.0));
    const ProcrustesInstance inst(a, b, NormSpec::schatten(2.0));
    const OrbitPoint op = OrbitPoint::from_witness(inst.B(), UnitaryMatrix::identity(d));
    bool ok = commutant_dimension(a.hermitian(), b.hermitian()) == 1;
    if (ok) {
      const SpectralPath path = spectral_descent_path(inst, op, 21, 0.0, 0.2);
      const DescentCurve curve = lift_path(inst, path, 1.0, 1e-6);
      ok = curve.complete && curve.samples.size() == 21;
      double v0 = 0.0, vend = 0.0;
      for (const CurveSample& smp : curve.samples) {
        max_residual = std::max(max_residual, smp.residual);
        if (smp.residual >= 1e-6) ok = false;
        if (smp.t == 0.0) v0 = smp.value;
        if (std::abs(smp.t - 0.2) < 1e-12) vend = smp.value;
      }
      if (!(vend < v0)) ok = false;
    }
    if (!ok) ++failures;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string metrics =
      "20 instances (d = 2, 3), t in [0, 0.2] over 21 steps; max lifting residual " +
      fe(max_residual) + " (< 1e-06); failures " + std::to_string(failures);
  return CriterionResult{7, "numerical-lifting", failures == 0, metrics, secs};
}

// ---- criterion 8: local minimality probe ----

CriterionResult item_probe(const Ctx& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  double worst_min_delta = 0.0;  // most negative probe delta at certified minimizers
  double min_curve_decrease = std::numeric_limits<double>::infinity();
  std::size_t failures = 0;

  for (int i = 0; i < 12; ++i) {
    const std::size_t d = 2 + (i % 3);
    const std::uint64_t s = derive_seed(ctx.item_seed, 800 + i);
    SplitMix64 rng(derive_seed(s, 0));
    const PositiveDefiniteMatrix a = random_pd(d, derive_seed(s, 1), log_uniform(rng, 1.5, 40.0));
    const PositiveDefiniteMatrix b = random_pd(d, derive_seed(s, 2), log_uniform(rng, 1.5, 40.0));
    const ProcrustesInstance inst(a, b, NormSpec::schatten(2.0));
    const Extremizer ext = global_minimizer(inst);
    bool ok = certify(inst, ext.point, ctx.cfg.tolerances.certify).verdict == Verdict::global_min;
    for (double eps : {1e-2, 1e-3}) {
      const ProbeReport rep = local_probe(inst, ext.point, eps, 500, derive_seed(s, 9),
                                          ctx.cfg.tolerances.probe);
      worst_min_delta = std::min(worst_min_delta, rep.min_delta);
      if (rep.min_delta < -1e-8) ok = false;
    }
    if (!ok) ++failures;
  }

  // the not-extremal points of criterion 5 must exhibit a usable decrease
  const std::uint64_t item5_seed = derive_seed(ctx.cfg.seed, 0xA0 + 5);
  for (int i = 0; i < 100; ++i) {
    const std::size_t d = 2 + (i % 4);
    const CommutingCase cc = commuting_misordered_case(derive_seed(item5_seed, 100 + i), d);
    const DescentCurve curve = commuting_descent_curve(cc.inst, cc.point, 41);
    double value0 = 0.0, best = std::numeric_limits<double>::infinity();
    for (const CurveSample& smp : curve.samples) {
      if (smp.t == 0.0) value0 = smp.value;
      best = std::min(best, smp.value);
    }
    const double decrease = value0 - best;
    min_curve_decrease = std::min(min_curve_decrease, decrease);
    if (decrease < 1e-6) ++failures;
  }

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string metrics =
      "12 certified minimizers; 500 directions at eps = 1e-2, 1e-3; most negative probe delta " +
      fe(worst_min_delta) + " (>= -1e-08); min curve decrease at 100 not-extremal points " +
      fe(min_curve_decrease) + " (>= 1e-06); failures " + std::to_string(failures);
  return CriterionResult{8, "local-minimality-probe", failures == 0, metrics, secs};
}

// ---- criterion 9: infrastructure ----

using ItemFn = CriterionResult (*)(const Ctx&);

CriterionResult run_item(ItemFn fn, const RunConfig& cfg, int id) {
  const Ctx ctx{cfg, derive_seed(cfg.seed, 0xA0 + static_cast<std::uint64_t>(id))};
  return fn(ctx);
}

constexpr ItemFn kItems1to8[] = {item_gnl_chain,  item_equality, item_oracle_agreement,
                                 item_spectral_norm_value, item_commuting_identities,
                                 item_path_laws,  item_lifting,  item_probe};

CriterionResult item_infrastructure(const Ctx& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  std::string metrics;

  // eigh reconstruction on 1000 random Hermitian matrices, d <= 10
  double max_recon = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t d = 1 + (i % 10);
    const HermitianMatrix h = random_hermitian(d, derive_seed(ctx.item_seed, 4000 + i));
    const SpectralDecomposition s = eigh(h);
    const double ratio =
        frobenius_norm(s.reconstruct().matrix() - h.matrix()) / frobenius_norm(h.matrix());
    max_recon = std::max(max_recon, ratio);
  }
  if (max_recon >= ctx.cfg.tolerances.recon_rel) pass = false;
  metrics += "1000 eigh reconstructions (d <= 10), max residual ratio " + fe(max_recon) +
             " (< " + fe(ctx.cfg.tolerances.recon_rel) + ")";

  // unitary invariance of every implemented norm family
  double max_inv = 0.0;
  for (int i = 0; i < 60; ++i) {
    const std::size_t d = 2 + (i % 5);
    const std::uint64_t s = derive_seed(ctx.item_seed, 5000 + i);
    SplitMix64 rng(derive_seed(s, 0));
    ComplexMatrix m(d);
    for (Complex& z : m.entries()) z = rng.next_complex_gaussian();
    const UnitaryMatrix u = haar_unitary(d, derive_seed(s, 1));
    const UnitaryMatrix v = haar_unitary(d, derive_seed(s, 2));
    const ComplexMatrix moved = u.matrix() * m * v.matrix();
    std::vector<NormSpec> norms = {NormSpec::schatten(1.0), NormSpec::schatten(1.5),
                                   NormSpec::schatten(2.0), NormSpec::schatten(3.0),
                                   NormSpec::spectral(),    NormSpec::kyfan(1)};
    if (d >= 2) norms.push_back(NormSpec::kyfan(2));
    if (d >= 3) norms.push_back(NormSpec::kyfan(3));
    for (const NormSpec& n : norms)
      max_inv = std::max(max_inv, std::abs(evaluate(n, moved) - evaluate(n, m)));
  }
  if (max_inv >= 1e-10) pass = false;
  metrics += "; max unitary-invariance defect " + fe(max_inv) + " (< 1e-10)";

  // matrix file round-trip, bit-exact
  bool roundtrip_ok = true;
  for (int i = 0; i < 20 && roundtrip_ok; ++i) {
    const std::size_t d = 1 + (i % 6);
    SplitMix64 rng(derive_seed(ctx.item_seed, 6000 + i));
    ComplexMatrix m(d);
    for (Complex& z : m.entries())
      z = Complex(rng.next_gaussian() * std::exp(30.0 * (rng.next_unit() - 0.5)),
                  rng.next_gaussian() / 3.0);
    std::stringstream ss;
    write_matrix(ss, m);
    const std::string once = ss.str();
    const ComplexMatrix back = read_matrix(ss, "roundtrip");
    for (std::size_t j = 0; j < m.entries().size(); ++j) {
      if (std::bit_cast<std::uint64_t>(m.entries()[j].real()) !=
              std::bit_cast<std::uint64_t>(back.entries()[j].real()) ||
          std::bit_cast<std::uint64_t>(m.entries()[j].imag()) !=
              std::bit_cast<std::uint64_t>(back.entries()[j].imag()))
        roundtrip_ok = false;
    }
    std::stringstream ss2;
    write_matrix(ss2, back);
    if (ss2.str() != once) roundtrip_ok = false;
  }
  if (!roundtrip_ok) pass = false;
  metrics += std::string("; file round-trip ") + (roundtrip_ok ? "bit-exact" : "NOT bit-exact");

  // determinism: rerun criteria 1-8 and compare the measured values
  bool deterministic = true;
  for (int id = 1; id <= 8; ++id) {
    const CriterionResult r1 = run_item(kItems1to8[id - 1], ctx.cfg, id);
    const CriterionResult r2 = run_item(kItems1to8[id - 1], ctx.cfg, id);
    if (r1.metrics != r2.metrics || r1.pass != r2.pass) deterministic = false;
  }
  if (!deterministic) pass = false;
  metrics += std::string("; suite rerun ") + (deterministic ? "byte-identical" : "DIVERGED");

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return CriterionResult{9, "infrastructure", pass, metrics, secs};
}

}  // namespace

SuiteReport run_suite(const RunConfig& cfg, std::ostream* progress) {
  SuiteReport report;
  report.all_pass = true;
  for (int id = 1; id <= 8; ++id) {
    CriterionResult r = run_item(kItems1to8[id - 1], cfg, id);
    if (progress)
      (*progress) << "[" << r.id << "/9] " << (r.pass ? "PASS" : "FAIL") << " " << r.name << ": "
                  << r.metrics << " (" << fmt("%.1f", r.seconds) << " s)" << std::endl;
    report.all_pass = report.all_pass && r.pass;
    report.items.push_back(std::move(r));
  }
  {
    CriterionResult r = run_item(item_infrastructure, cfg, 9);
    if (progress)
      (*progress) << "[" << r.id << "/9] " << (r.pass ? "PASS" : "FAIL") << " " << r.name << ": "
                  << r.metrics << " (" << fmt("%.1f", r.seconds) << " s)" << std::endl;
    report.all_pass = report.all_pass && r.pass;
    report.items.push_back(std::move(r));
  }
  return report;
}

std::string render_text(const SuiteReport& report) {
  std::ostringstream out;
  for (const CriterionResult& r : report.items)
    out << "[" << r.id << "/9] " << (r.pass ? "PASS" : "FAIL") << " " << r.name << ": " << r.metrics
        << " (" << fmt("%.1f", r.seconds) << " s)\n";
  out << (report.all_pass ? "suite: ALL PASS\n" : "suite: FAILURES PRESENT\n");
  return out.str();
}

std::string render_json(const SuiteReport& report, const RunConfig& cfg) {
  nlohmann::json doc;
  doc["seed"] = cfg.seed;
  doc["all_pass"] = report.all_pass;
  nlohmann::json items = nlohmann::json::array();
  for (const CriterionResult& r : report.items) {
    nlohmann::json item;
    item["id"] = r.id;
    item["name"] = r.name;
    item["pass"] = r.pass;
    item["metrics"] = r.metrics;
    items.push_back(std::move(item));
  }
  doc["criteria"] = std::move(items);
  return doc.dump(2) + "\n";
}

}  // namespace pdorbit::acceptance
