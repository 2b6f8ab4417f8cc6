#pragma once

#include <iosfwd>

#include "pdorbit/config.hpp"

namespace pdorbit::cli {

// exit-code contract, stable across versions
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;        // internal error or sweep violation
inline constexpr int kParseError = 2;     // unreadable input, bad flags, dimension mismatch
inline constexpr int kNotPositive = 3;    // input matrix fails the PD (or Hermitian) invariant
inline constexpr int kNotOnOrbit = 4;     // C fails orbit membership against B
inline constexpr int kNotExtremal = 10;   // certify: point is not an extremum

struct DistArgs {
  std::string a_file, c_file;
  std::string norm = "schatten:2";
  RunConfig config;
};
int run_dist(const DistArgs& args, std::ostream& out, std::ostream& err);

struct SolveArgs {
  std::string a_file, b_file;
  std::string norm = "schatten:2";
  std::string mode = "min";
  std::string out_matrix = "extremizer.json";
  std::string report_path;  // empty: report record to stdout
  RunConfig config;
};
int run_solve(const SolveArgs& args, std::ostream& out, std::ostream& err);

struct CertifyArgs {
  std::string a_file, b_file, c_file;
  std::string norm = "schatten:2";
  double tol = 0.0;  // 0: use config certify tolerance
  std::string curve_out = "descent_curve.csv";
  std::string report_path;
  RunConfig config;
};
int run_certify(const CertifyArgs& args, std::ostream& out, std::ostream& err);

struct DescendArgs {
  std::string a_file, b_file, c_file;
  std::string norm = "schatten:2";
  int samples = 41;
  double step = 1.0;
  std::string curve_out = "descent_curve.csv";
  RunConfig config;
};
int run_descend(const DescendArgs& args, std::ostream& out, std::ostream& err);

struct GnlArgs {
  std::vector<std::size_t> dims;  // empty: from config
  std::size_t trials = 0;         // 0: from config
  std::uint64_t seed = 0;         // 0: from config
  std::string per_trial_out;      // empty: summary only
  RunConfig config;
};
int run_gnl(const GnlArgs& args, std::ostream& out, std::ostream& err);

struct OracleArgs {
  std::string a_file, b_file;
  std::string norm = "schatten:2";
  std::string mode = "min";
  int budget = 8;
  std::uint64_t seed = 0;  // 0: from config
  std::string out_matrix;  // empty: no witness file
  RunConfig config;
};
int run_oracle(const OracleArgs& args, std::ostream& out, std::ostream& err);

struct SuiteArgs {
  std::string report_path;  // empty: machine report to stdout after the text lines
  RunConfig config;
};
int run_suite(const SuiteArgs& args, std::ostream& out, std::ostream& err);

}  // namespace pdorbit::cli
