#include "pdorbit/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pdorbit/io.hpp"

namespace pdorbit {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* k : known)
      if (key == k) ok = true;
    if (!ok) throw ParseError(where + ": unknown key '" + key + "'");
  }
}

double get_number(const json& obj, const char* key, double fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) throw ParseError(where + ": '" + std::string(key) + "' must be a number");
  return obj[key].get<double>();
}

}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text, const std::string& source_name) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source_name + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError(source_name + ": config must be a JSON object");
  reject_unknown(doc, {"seed", "tolerances", "norm", "output", "dims", "trials"}, source_name);

  RunConfig cfg;
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_integer() || doc["seed"].get<long long>() < 0)
      throw ParseError(source_name + ": 'seed' must be a nonnegative integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("norm")) {
    if (!doc["norm"].is_string()) throw ParseError(source_name + ": 'norm' must be a string");
    cfg.norm = doc["norm"].get<std::string>();
  }
  if (doc.contains("trials")) {
    if (!doc["trials"].is_number_integer() || doc["trials"].get<long long>() < 0)
      throw ParseError(source_name + ": 'trials' must be a nonnegative integer");
    cfg.trials = doc["trials"].get<std::size_t>();
  }
  if (doc.contains("dims")) {
    if (!doc["dims"].is_array()) throw ParseError(source_name + ": 'dims' must be an array");
    cfg.dims.clear();
    for (const json& v : doc["dims"]) {
      if (!v.is_number_integer() || v.get<long long>() < 1)
        throw ParseError(source_name + ": 'dims' entries must be positive integers");
      cfg.dims.push_back(v.get<std::size_t>());
    }
  }
  if (doc.contains("output")) {
    const json& out = doc["output"];
    if (!out.is_object()) throw ParseError(source_name + ": 'output' must be an object");
    reject_unknown(out, {"path", "format"}, source_name + ".output");
    if (out.contains("path")) cfg.output.path = out["path"].get<std::string>();
    if (out.contains("format")) {
      const std::string f = out["format"].get<std::string>();
      if (f == "structured-text")
        cfg.output.format = OutputFormat::structured_text;
      else if (f == "csv")
        cfg.output.format = OutputFormat::csv;
      else
        throw ParseError(source_name + ": output.format must be 'structured-text' or 'csv'");
    }
  }
  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    if (!t.is_object()) throw ParseError(source_name + ": 'tolerances' must be an object");
    const std::string where = source_name + ".tolerances";
    reject_unknown(t,
                   {"herm", "unitary", "recon_rel", "eps_pd", "null_rel", "majorization",
                    "comm_rel", "probe", "certify", "orbit", "jacobi_conv_rel",
                    "cluster_gap_rel", "max_sweeps"},
                   where);
    Tolerances& tl = cfg.tolerances;
    tl.herm = get_number(t, "herm", tl.herm, where);
    tl.unitary = get_number(t, "unitary", tl.unitary, where);
    tl.recon_rel = get_number(t, "recon_rel", tl.recon_rel, where);
    tl.eps_pd = get_number(t, "eps_pd", tl.eps_pd, where);
    tl.null_rel = get_number(t, "null_rel", tl.null_rel, where);
    tl.majorization = get_number(t, "majorization", tl.majorization, where);
    tl.comm_rel = get_number(t, "comm_rel", tl.comm_rel, where);
    tl.probe = get_number(t, "probe", tl.probe, where);
    tl.certify = get_number(t, "certify", tl.certify, where);
    tl.orbit = get_number(t, "orbit", tl.orbit, where);
    tl.jacobi_conv_rel = get_number(t, "jacobi_conv_rel", tl.jacobi_conv_rel, where);
    tl.cluster_gap_rel = get_number(t, "cluster_gap_rel", tl.cluster_gap_rel, where);
    tl.max_sweeps = static_cast<int>(get_number(t, "max_sweeps", tl.max_sweeps, where));
  }
  return cfg;
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str(), path.string());
}

RunConfig RunConfig::from_environment() {
  const char* p = std::getenv("PDORBIT_CONFIG");
  if (p == nullptr || *p == '\0') return RunConfig{};
  return from_file(p);
}

}  // namespace pdorbit
