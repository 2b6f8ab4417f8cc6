#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "pdorbit/matrix.hpp"

namespace pdorbit {

/// Every named tolerance, with the documented defaults.
struct Tolerances {
  double herm = defaults::tol_herm;
  double unitary = defaults::tol_unitary;
  double recon_rel = defaults::tol_recon_rel;
  double eps_pd = defaults::eps_pd;
  double null_rel = defaults::tol_null_rel;
  double majorization = defaults::tol_majorization;
  double comm_rel = defaults::tol_comm_rel;
  double probe = defaults::probe_tol;
  double certify = defaults::certify_tol;
  double orbit = defaults::orbit_tol;
  double jacobi_conv_rel = defaults::jacobi_conv_rel;
  double cluster_gap_rel = defaults::cluster_gap_rel;
  int max_sweeps = defaults::max_sweeps;
};

enum class OutputFormat { structured_text, csv };

struct OutputSpec {
  std::string path;  // empty: stdout
  OutputFormat format = OutputFormat::structured_text;
};

/// Run configuration, loadable from a JSON file. Unknown keys are rejected.
/// All randomness flows from `seed` through counter-based splitting.
struct RunConfig {
  std::uint64_t seed = 1;
  Tolerances tolerances;
  std::string norm = "schatten:2";
  OutputSpec output;
  std::vector<std::size_t> dims = {2, 3, 4, 5, 6};
  std::size_t trials = 1000;

  static RunConfig from_json_text(const std::string& text, const std::string& source_name);
  static RunConfig from_file(const std::filesystem::path& path);
  /// File named by the PDORBIT_CONFIG environment variable, or defaults.
  static RunConfig from_environment();
};

}  // namespace pdorbit
