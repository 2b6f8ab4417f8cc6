#include "pdorbit/io.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

namespace pdorbit {

using nlohmann::json;

ComplexMatrix read_matrix(std::istream& in, const std::string& source_name) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(source_name + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("d") || !doc.contains("entries"))
    throw ParseError(source_name + ": matrix file needs fields 'd' and 'entries'");
  for (const auto& [key, _] : doc.items())
    if (key != "d" && key != "entries")
      throw ParseError(source_name + ": unknown field '" + key + "'");
  if (!doc["d"].is_number_integer() || doc["d"].get<long long>() < 1)
    throw ParseError(source_name + ": field 'd' must be a positive integer");
  const std::size_t d = doc["d"].get<std::size_t>();
  const json& ent = doc["entries"];
  if (!ent.is_array() || ent.size() != d * d)
    throw ParseError(source_name + ": 'entries' must hold exactly d*d = " +
                     std::to_string(d * d) + " pairs, found " +
                     std::to_string(ent.is_array() ? ent.size() : 0));
  std::vector<Complex> values;
  values.reserve(d * d);
  for (std::size_t i = 0; i < ent.size(); ++i) {
    const json& pair = ent[i];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
      throw ParseError(source_name + ": entry " + std::to_string(i) +
                       " must be a [re, im] pair of numbers");
    const double re = pair[0].get<double>();
    const double im = pair[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im))
      throw ParseError(source_name + ": entry " + std::to_string(i) + " is not finite");
    values.emplace_back(re, im);
  }
  return ComplexMatrix(d, std::move(values));
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  return read_matrix(in, path.string());
}

void write_matrix(std::ostream& out, const ComplexMatrix& m) {
  json doc;
  doc["d"] = m.dim();
  json ent = json::array();
  for (const Complex& z : m.entries()) ent.push_back(json::array({z.real(), z.imag()}));
  doc["entries"] = std::move(ent);
  out << doc.dump(2) << '\n';
}

void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m) {
  std::ofstream out(path);
  if (!out) throw ParseError(path.string() + ": cannot open file for writing");
  write_matrix(out, m);
}

void write_curve_csv(std::ostream& out, const DescentCurve& curve) {
  out << "t,value,residual\n";
  char buf[96];
  for (const CurveSample& s : curve.samples) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", s.t, s.value, s.residual);
    out << buf;
  }
}

void write_curve_csv_file(const std::filesystem::path& path, const DescentCurve& curve) {
  std::ofstream out(path);
  if (!out) throw ParseError(path.string() + ": cannot open file for writing");
  write_curve_csv(out, curve);
}

}  // namespace pdorbit
