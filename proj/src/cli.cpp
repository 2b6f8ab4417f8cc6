#include "pdorbit/cli.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "pdorbit/acceptance.hpp"
#include "pdorbit/commutant.hpp"
#include "pdorbit/extrema.hpp"
#include "pdorbit/io.hpp"
#include "pdorbit/sampling.hpp"

namespace pdorbit::cli {

namespace {

using nlohmann::json;

std::string sig12(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

PositiveDefiniteMatrix load_pd(const std::string& path, const Tolerances& tol) {
  const ComplexMatrix m = read_matrix_file(path);
  try {
    return PositiveDefiniteMatrix(m, tol.herm, tol.eps_pd);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void emit_record(const json& record, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << record.dump(2) << "\n";
  } else {
    std::ofstream f(path);
    if (!f) throw ParseError(path + ": cannot open file for writing");
    f << record.dump(2) << "\n";
  }
}

struct CliError {
  int code;
  std::string message;
};

// shared error mapping: parse problems -> 2, invariant failures -> 3
template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kNotPositive;
  } catch (const CliError& e) {
    err << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace

int run_dist(const DistArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    const NormSpec norm = NormSpec::parse(args.norm);
    const PositiveDefiniteMatrix a = load_pd(args.a_file, args.config.tolerances);
    const PositiveDefiniteMatrix c = load_pd(args.c_file, args.config.tolerances);
    if (a.dim() != c.dim())
      throw ParseError("dimension mismatch: " + args.a_file + " is " + std::to_string(a.dim()) +
                       "x" + std::to_string(a.dim()) + ", " + args.c_file + " is " +
                       std::to_string(c.dim()) + "x" + std::to_string(c.dim()));
    const ProcrustesInstance inst(a, c, norm);
    out << "F_N(" << norm.label() << ") = " << sig12(distance_fn(inst, c)) << "\n";
    out << "F_2 = " << sig12(distance_f2(inst, c)) << "\n";
    return kOk;
  });
}

int run_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    const NormSpec norm = NormSpec::parse(args.norm);
    if (args.mode != "min" && args.mode != "max")
      throw ParseError("--mode must be 'min' or 'max', got '" + args.mode + "'");
    const PositiveDefiniteMatrix a = load_pd(args.a_file, args.config.tolerances);
    const PositiveDefiniteMatrix b = load_pd(args.b_file, args.config.tolerances);
    if (a.dim() != b.dim()) throw ParseError("dimension mismatch between A and B");
    const ProcrustesInstance inst(a, b, norm);
    const Extremizer ext = args.mode == "min" ? global_minimizer(inst) : global_maximizer(inst);
    write_matrix_file(args.out_matrix, ext.point.matrix().matrix());
    json record;
    record["command"] = "solve";
    record["norm"] = norm.label();
    record["mode"] = args.mode;
    record["value"] = ext.value;
    record["degenerate_spectrum"] = ext.degenerate_spectrum;
    record["matrix_file"] = args.out_matrix;
    emit_record(record, args.report_path, out);
    if (!args.report_path.empty())
      out << args.mode << " value = " << sig12(ext.value) << " -> " << args.out_matrix << "\n";
    return kOk;
  });
}

namespace {
const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::global_min: return "global_min";
    case Verdict::global_max: return "global_max";
    case Verdict::not_extremal: return "not_extremal";
  }
  return "?";
}
}  // namespace

int run_certify(const CertifyArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    const NormSpec norm = NormSpec::parse(args.norm);
    const PositiveDefiniteMatrix a = load_pd(args.a_file, args.config.tolerances);
    const PositiveDefiniteMatrix b = load_pd(args.b_file, args.config.tolerances);
    const PositiveDefiniteMatrix c = load_pd(args.c_file, args.config.tolerances);
    if (a.dim() != b.dim() || a.dim() != c.dim())
      throw ParseError("dimension mismatch among A, B, C");
    const ProcrustesInstance inst(a, b, norm);

    OrbitPoint point = [&]() {
      try {
        return OrbitPoint::from_matrix(b, c, args.config.tolerances.orbit);
      } catch (const ValidationError& e) {
        throw CliError{kNotOnOrbit, std::string(e.what())};
      }
    }();

    const double tol = args.tol > 0.0 ? args.tol : args.config.tolerances.certify;
    const ExtremumCertificate cert = certify(inst, point, tol);

    json record;
    record["command"] = "certify";
    record["norm"] = norm.label();
    record["verdict"] = verdict_name(cert.verdict);
    record["gap_min"] = cert.gap_min;
    record["gap_max"] = cert.gap_max;
    record["degenerate_spectrum"] = cert.degenerate_spectrum;
    if (cert.descent) {
      write_curve_csv_file(args.curve_out, *cert.descent);
      record["descent_curve"] = args.curve_out;
      record["descent_kind"] = cert.descent->kind == CurveKind::commuting_rotation
                                   ? "commuting_rotation"
                                   : "probe_direction";
    }
    emit_record(record, args.report_path, out);
    if (!args.report_path.empty())
      out << "verdict = " << verdict_name(cert.verdict) << " (gap_min = " << sig12(cert.gap_min)
          << ", gap_max = " << sig12(cert.gap_max) << ")\n";
    return cert.verdict == Verdict::not_extremal ? kNotExtremal : kOk;
  });
}

int run_descend(const DescendArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    const NormSpec norm = NormSpec::parse(args.norm);
    const PositiveDefiniteMatrix a = load_pd(args.a_file, args.config.tolerances);
    const PositiveDefiniteMatrix b = load_pd(args.b_file, args.config.tolerances);
    const PositiveDefiniteMatrix c = load_pd(args.c_file, args.config.tolerances);
    if (a.dim() != b.dim() || a.dim() != c.dim())
      throw ParseError("dimension mismatch among A, B, C");
    const ProcrustesInstance inst(a, b, norm);

    OrbitPoint point = [&]() {
      try {
        return OrbitPoint::from_matrix(b, c, args.config.tolerances.orbit);
      } catch (const ValidationError& e) {
        throw CliError{kNotOnOrbit, std::string(e.what())};
      }
    }();

    const GnlReport gaps = gnl_verify(a, point.matrix());
    const double tol_eff = args.config.tolerances.certify * static_cast<double>(a.dim());
    if (gaps.left_gap <= tol_eff || gaps.right_gap <= tol_eff)
      throw CliError{kNotExtremal, "point is already extremal (gap_min = " + sig12(gaps.left_gap) +
                                       ", gap_max = " + sig12(gaps.right_gap) +
                                       "); no descent curve exists"};

    const double comm = frobenius_norm(commutator(a.matrix(), c.matrix()));
    const double comm_tol =
        args.config.tolerances.comm_rel * frobenius_norm(a.matrix()) * frobenius_norm(c.matrix());

    DescentCurve curve = [&]() {
      if (comm <= comm_tol) {
        out << "mechanism: commuting rotation (exact 2x2 construction)\n";
        return commuting_descent_curve(inst, point, args.samples);
      }
      if (commutant_dimension(a.hermitian(), c.hermitian(), args.config.tolerances.null_rel) == 1) {
        out << "mechanism: spectral path + numerical lifting\n";
        const SpectralPath path = spectral_descent_path(inst, point, args.samples, -1.0, 1.0);
        return lift_path(inst, path, args.step);
      }
      out << "mechanism: probe direction (nontrivial commutant blocks the lifting)\n";
      const ExtremumCertificate cert = certify(inst, point, args.config.tolerances.certify);
      if (!cert.descent) throw CliError{kFailure, "no descent curve could be constructed"};
      return *cert.descent;
    }();

    write_curve_csv_file(args.curve_out, curve);
    double v0 = 0.0, vbest = std::numeric_limits<double>::infinity();
    for (const CurveSample& s : curve.samples) {
      if (s.t == 0.0) v0 = s.value;
      vbest = std::min(vbest, s.value);
    }
    out << "samples = " << curve.samples.size() << ", F at 0 = " << sig12(v0)
        << ", best F on curve = " << sig12(vbest) << " -> " << args.curve_out << "\n";
    if (!curve.complete) {
      out << "warning: curve incomplete, last good |t| = " << sig12(curve.last_good_t) << "\n";
      return kFailure;
    }
    return kOk;
  });
}

int run_gnl(const GnlArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    const std::vector<std::size_t> dims = args.dims.empty() ? args.config.dims : args.dims;
    const std::size_t trials = args.trials > 0 ? args.trials : args.config.trials;
    const std::uint64_t seed = args.seed > 0 ? args.seed : args.config.seed;
    const double tol = args.config.tolerances.majorization;

    std::ofstream per_trial;
    if (!args.per_trial_out.empty()) {
      per_trial.open(args.per_trial_out);
      if (!per_trial) throw ParseError(args.per_trial_out + ": cannot open file for writing");
      per_trial << "d,trial,left_gap,right_gap,left_excess,right_excess,left_holds,right_holds\n";
    }

    std::size_t violations = 0, count = 0;
    double max_excess = 0.0;
    for (std::size_t d : dims) {
      for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::uint64_t s = derive_seed(seed, d * 1000003ull + trial);
        SplitMix64 rng(derive_seed(s, 0));
        const double ca = std::exp(rng.next_unit() * std::log(1e3));
        const double cb = std::exp(rng.next_unit() * std::log(1e3));
        const PositiveDefiniteMatrix a = random_pd(d, derive_seed(s, 1), ca);
        const PositiveDefiniteMatrix b = random_pd(d, derive_seed(s, 2), cb);
        const GnlBounds g = gnl_bounds(a, b);
        const GnlReport rep = gnl_verify(a, b, tol);
        const MajorizationSlack left = majorization_slack(g.lower, g.mid);
        const MajorizationSlack right = majorization_slack(g.mid, g.upper);
        max_excess = std::max({max_excess, left.max_partial_excess, right.max_partial_excess});
        if (!rep.left_holds || !rep.right_holds) ++violations;
        if (per_trial.is_open()) {
          char buf[160];
          std::snprintf(buf, sizeof(buf), "%zu,%zu,%.17g,%.17g,%.17g,%.17g,%d,%d\n", d, trial,
                        rep.left_gap, rep.right_gap, left.max_partial_excess,
                        right.max_partial_excess, rep.left_holds ? 1 : 0, rep.right_holds ? 1 : 0);
          per_trial << buf;
        }
        ++count;
      }
    }

    json summary;
    summary["command"] = "gnl";
    summary["dims"] = dims;
    summary["trials_per_dim"] = trials;
    summary["seed"] = seed;
    summary["pairs"] = count;
    summary["violations"] = violations;
    summary["max_partial_sum_excess"] = max_excess;
    summary["tolerance"] = tol;
    out << summary.dump(2) << "\n";
    return violations == 0 ? kOk : kFailure;
  });
}

int run_oracle(const OracleArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    const NormSpec norm = NormSpec::parse(args.norm);
    if (args.mode != "min" && args.mode != "max")
      throw ParseError("--mode must be 'min' or 'max', got '" + args.mode + "'");
    const PositiveDefiniteMatrix a = load_pd(args.a_file, args.config.tolerances);
    const PositiveDefiniteMatrix b = load_pd(args.b_file, args.config.tolerances);
    if (a.dim() != b.dim()) throw ParseError("dimension mismatch between A and B");
    const ProcrustesInstance inst(a, b, norm);
    const std::uint64_t seed = args.seed > 0 ? args.seed : args.config.seed;
    const BruteForceResult res = brute_force_extremum(
        inst, args.mode == "min" ? OptMode::min : OptMode::max, args.budget, seed);
    json record;
    record["command"] = "oracle";
    record["norm"] = norm.label();
    record["mode"] = args.mode;
    record["budget"] = args.budget;
    record["seed"] = seed;
    record["value"] = res.value;
    if (!args.out_matrix.empty()) {
      write_matrix_file(args.out_matrix, res.point.matrix().matrix());
      record["matrix_file"] = args.out_matrix;
    }
    out << record.dump(2) << "\n";
    return kOk;
  });
}

int run_suite(const SuiteArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    const acceptance::SuiteReport report = acceptance::run_suite(args.config, &out);
    const std::string machine = acceptance::render_json(report, args.config);
    if (args.report_path.empty()) {
      out << machine;
    } else {
      std::ofstream f(args.report_path);
      if (!f) throw ParseError(args.report_path + ": cannot open file for writing");
      f << machine;
      out << (report.all_pass ? "ALL PASS" : "FAILURES PRESENT") << " -> " << args.report_path
          << "\n";
    }
    return report.all_pass ? kOk : kFailure;
  });
}

}  // namespace pdorbit::cli
