#pragma once

#include <filesystem>
#include <iosfwd>

#include "pdorbit/descent.hpp"

namespace pdorbit {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Matrix file: JSON with fields `d` (integer) and `entries` (row-major list
/// of [re, im] pairs). Doubles are written with shortest round-trip
/// representation, so write-then-read reproduces entries bit-exactly.
ComplexMatrix read_matrix(std::istream& in, const std::string& source_name = "<stream>");
ComplexMatrix read_matrix_file(const std::filesystem::path& path);
void write_matrix(std::ostream& out, const ComplexMatrix& m);
void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m);

/// Curve CSV: header t,value,residual followed by one row per sample.
void write_curve_csv(std::ostream& out, const DescentCurve& curve);
void write_curve_csv_file(const std::filesystem::path& path, const DescentCurve& curve);

}  // namespace pdorbit
