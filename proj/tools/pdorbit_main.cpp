#include <iostream>

#include <CLI11.hpp>

#include "pdorbit/cli.hpp"

namespace {

// --dims accepts "2,3,4" or "2..6"
std::vector<std::size_t> parse_dims(const std::string& spec) {
  std::vector<std::size_t> dims;
  const auto dots = spec.find("..");
  if (dots != std::string::npos) {
    const std::size_t lo = std::stoul(spec.substr(0, dots));
    const std::size_t hi = std::stoul(spec.substr(dots + 2));
    for (std::size_t d = lo; d <= hi; ++d) dims.push_back(d);
    return dims;
  }
  std::size_t pos = 0;
  while (pos < spec.size()) {
    const auto comma = spec.find(',', pos);
    dims.push_back(std::stoul(spec.substr(pos, comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return dims;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Procrustes distances and extrema on the unitary orbit of positive definite "
               "matrices"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path,
                 "config file (JSON); defaults to $PDORBIT_CONFIG when set");

  pdorbit::cli::DistArgs dist;
  auto* cmd_dist = app.add_subcommand("dist", "print F_N and F_2 between two PD matrices");
  cmd_dist->add_option("A", dist.a_file, "matrix file for A")->required();
  cmd_dist->add_option("C", dist.c_file, "matrix file for C")->required();
  cmd_dist->add_option("--norm", dist.norm, "schatten:p | kyfan:k | spectral");

  pdorbit::cli::SolveArgs solve;
  auto* cmd_solve = app.add_subcommand("solve", "closed-form orbit extremizer of F_N");
  cmd_solve->add_option("A", solve.a_file)->required();
  cmd_solve->add_option("B", solve.b_file)->required();
  cmd_solve->add_option("--norm", solve.norm);
  cmd_solve->add_option("--mode", solve.mode, "min | max");
  cmd_solve->add_option("--out", solve.out_matrix, "extremizer matrix file");
  cmd_solve->add_option("--report", solve.report_path, "report record file (default stdout)");

  pdorbit::cli::CertifyArgs certify;
  auto* cmd_certify = app.add_subcommand("certify", "classify an orbit point as extremum or not");
  cmd_certify->add_option("A", certify.a_file)->required();
  cmd_certify->add_option("B", certify.b_file)->required();
  cmd_certify->add_option("C", certify.c_file)->required();
  cmd_certify->add_option("--norm", certify.norm);
  cmd_certify->add_option("--tol", certify.tol, "certification tolerance (scaled by d)");
  cmd_certify->add_option("--curve-out", certify.curve_out, "descent curve CSV when not extremal");
  cmd_certify->add_option("--report", certify.report_path);

  pdorbit::cli::DescendArgs descend;
  auto* cmd_descend = app.add_subcommand("descend", "construct a descent curve from an orbit point");
  cmd_descend->add_option("A", descend.a_file)->required();
  cmd_descend->add_option("B", descend.b_file)->required();
  cmd_descend->add_option("C", descend.c_file)->required();
  cmd_descend->add_option("--norm", descend.norm);
  cmd_descend->add_option("--samples", descend.samples, "t samples on the curve");
  cmd_descend->add_option("--step", descend.step, "initial step for the lifting solver");
  cmd_descend->add_option("--out", descend.curve_out, "curve CSV path");

  pdorbit::cli::GnlArgs gnl;
  std::string gnl_dims;
  auto* cmd_gnl = app.add_subcommand("gnl", "seeded sweep of the eigenvalue comparison chain");
  cmd_gnl->add_option("--dims", gnl_dims, "dimensions, e.g. 2..6 or 2,3,4");
  cmd_gnl->add_option("--trials", gnl.trials, "trials per dimension");
  cmd_gnl->add_option("--seed", gnl.seed);
  cmd_gnl->add_option("--out", gnl.per_trial_out, "per-trial CSV path");

  pdorbit::cli::OracleArgs oracle;
  auto* cmd_oracle = app.add_subcommand("oracle", "brute-force orbit extremum (d <= 4)");
  cmd_oracle->add_option("A", oracle.a_file)->required();
  cmd_oracle->add_option("B", oracle.b_file)->required();
  cmd_oracle->add_option("--norm", oracle.norm);
  cmd_oracle->add_option("--mode", oracle.mode, "min | max");
  cmd_oracle->add_option("--budget", oracle.budget, "restarts at d = 3, 4");
  cmd_oracle->add_option("--seed", oracle.seed);
  cmd_oracle->add_option("--out", oracle.out_matrix, "witness matrix file");

  pdorbit::cli::SuiteArgs suite;
  auto* cmd_suite = app.add_subcommand("suite", "run the full acceptance suite");
  cmd_suite->add_option("--report", suite.report_path, "machine report file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  pdorbit::RunConfig config;
  try {
    config = config_path.empty() ? pdorbit::RunConfig::from_environment()
                                 : pdorbit::RunConfig::from_file(config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pdorbit::cli::kParseError;
  }

  if (cmd_dist->parsed()) {
    dist.config = config;
    return pdorbit::cli::run_dist(dist, std::cout, std::cerr);
  }
  if (cmd_solve->parsed()) {
    solve.config = config;
    return pdorbit::cli::run_solve(solve, std::cout, std::cerr);
  }
  if (cmd_certify->parsed()) {
    certify.config = config;
    return pdorbit::cli::run_certify(certify, std::cout, std::cerr);
  }
  if (cmd_descend->parsed()) {
    descend.config = config;
    return pdorbit::cli::run_descend(descend, std::cout, std::cerr);
  }
  if (cmd_gnl->parsed()) {
    gnl.config = config;
    if (!gnl_dims.empty()) {
      try {
        gnl.dims = parse_dims(gnl_dims);
      } catch (const std::exception&) {
        std::cerr << "error: cannot parse --dims '" << gnl_dims << "'\n";
        return pdorbit::cli::kParseError;
      }
    }
    return pdorbit::cli::run_gnl(gnl, std::cout, std::cerr);
  }
  if (cmd_oracle->parsed()) {
    oracle.config = config;
    return pdorbit::cli::run_oracle(oracle, std::cout, std::cerr);
  }
  if (cmd_suite->parsed()) {
    suite.config = config;
    return pdorbit::cli::run_suite(suite, std::cout, std::cerr);
  }
  return pdorbit::cli::kParseError;
}
