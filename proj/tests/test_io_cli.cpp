#include <doctest.h>

#include <bit>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pdorbit/cli.hpp"
#include "pdorbit/extrema.hpp"
#include "pdorbit/io.hpp"
#include "pdorbit/sampling.hpp"

using namespace pdorbit;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("pdorbit_test_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
  static inline int counter = 0;
};

void write_diag(const std::string& path, std::initializer_list<double> vals) {
  ComplexMatrix m(vals.size());
  std::size_t i = 0;
  for (double v : vals) m(i, i) = Complex(v, 0.0), ++i;
  write_matrix_file(path, m);
}

bool bit_equal(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    if (std::bit_cast<std::uint64_t>(a.entries()[i].real()) !=
            std::bit_cast<std::uint64_t>(b.entries()[i].real()) ||
        std::bit_cast<std::uint64_t>(a.entries()[i].imag()) !=
            std::bit_cast<std::uint64_t>(b.entries()[i].imag()))
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("matrix files round-trip bit-exactly") {
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t d = 1 + (trial % 5);
    SplitMix64 rng(derive_seed(900, trial));
    ComplexMatrix m(d);
    for (Complex& z : m.entries())
      z = Complex(rng.next_gaussian() * std::exp(20.0 * (rng.next_unit() - 0.5)),
                  rng.next_gaussian() / 3.0);
    std::stringstream ss;
    write_matrix(ss, m);
    const std::string first = ss.str();
    const ComplexMatrix back = read_matrix(ss, "mem");
    CHECK(bit_equal(m, back));
    std::stringstream ss2;
    write_matrix(ss2, back);
    CHECK(ss2.str() == first);
  }
}

TEST_CASE("matrix parser rejects malformed documents") {
  auto parse = [](const std::string& text) {
    std::stringstream ss(text);
    return read_matrix(ss, "doc");
  };
  CHECK_THROWS_AS(parse("not json"), ParseError);
  CHECK_THROWS_AS(parse(R"({"d": 2})"), ParseError);
  CHECK_THROWS_AS(parse(R"({"d": 2, "entries": [[1,0],[0,0],[0,0]]})"), ParseError);  // wrong length
  CHECK_THROWS_AS(parse(R"({"d": 0, "entries": []})"), ParseError);
  CHECK_THROWS_AS(parse(R"({"d": 1, "entries": [[1,0]], "extra": 1})"), ParseError);
  CHECK_THROWS_AS(parse(R"({"d": 1, "entries": [[1]]})"), ParseError);
  CHECK_NOTHROW(parse(R"({"d": 1, "entries": [[1, 0]]})"));
}

TEST_CASE("dist command: values, 12 significant digits, exit codes") {
  TempDir tmp;
  write_diag(tmp.file("a.json"), {4.0, 1.0});
  write_diag(tmp.file("c.json"), {9.0, 1.0});

  SUBCASE("value printed to 12 significant digits") {
    std::ostringstream out, err;
    cli::DistArgs args{tmp.file("a.json"), tmp.file("c.json"), "schatten:2", {}};
    CHECK(cli::run_dist(args, out, err) == cli::kOk);
    CHECK(out.str().find("0.810930216216") != std::string::npos);
  }

  SUBCASE("identical inputs give zero") {
    std::ostringstream out, err;
    cli::DistArgs args{tmp.file("a.json"), tmp.file("a.json"), "schatten:2", {}};
    CHECK(cli::run_dist(args, out, err) == cli::kOk);
    CHECK(out.str().find("F_N(schatten:2) = 0\n") != std::string::npos);
  }

  SUBCASE("dimension mismatch exits 2") {
    write_diag(tmp.file("c3.json"), {1.0, 2.0, 3.0});
    std::ostringstream out, err;
    cli::DistArgs args{tmp.file("a.json"), tmp.file("c3.json"), "schatten:2", {}};
    CHECK(cli::run_dist(args, out, err) == cli::kParseError);
  }

  SUBCASE("parse failure exits 2 with diagnostics") {
    std::ofstream(tmp.file("bad.json")) << "{ nope";
    std::ostringstream out, err;
    cli::DistArgs args{tmp.file("bad.json"), tmp.file("a.json"), "schatten:2", {}};
    CHECK(cli::run_dist(args, out, err) == cli::kParseError);
    CHECK(err.str().find("bad.json") != std::string::npos);
  }

  SUBCASE("non-PD input exits 3") {
    write_diag(tmp.file("neg.json"), {1.0, -1.0});
    std::ostringstream out, err;
    cli::DistArgs args{tmp.file("neg.json"), tmp.file("a.json"), "schatten:2", {}};
    CHECK(cli::run_dist(args, out, err) == cli::kNotPositive);
  }
}

TEST_CASE("solve command writes the extremizer and its report record") {
  TempDir tmp;
  write_diag(tmp.file("a.json"), {4.0, 1.0});
  write_diag(tmp.file("b.json"), {1.0, 9.0});

  std::ostringstream out, err;
  cli::SolveArgs args;
  args.a_file = tmp.file("a.json");
  args.b_file = tmp.file("b.json");
  args.out_matrix = tmp.file("cstar.json");
  CHECK(cli::run_solve(args, out, err) == cli::kOk);
  CHECK(out.str().find("\"value\"") != std::string::npos);

  const ComplexMatrix cstar = read_matrix_file(tmp.file("cstar.json"));
  CHECK(cstar(0, 0).real() == doctest::Approx(9.0).epsilon(1e-10));
  CHECK(cstar(1, 1).real() == doctest::Approx(1.0).epsilon(1e-10));

  std::ostringstream out2, err2;
  args.mode = "max";
  args.out_matrix = tmp.file("cdag.json");
  CHECK(cli::run_solve(args, out2, err2) == cli::kOk);
  const ComplexMatrix cdag = read_matrix_file(tmp.file("cdag.json"));
  CHECK(cdag(0, 0).real() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(cdag(1, 1).real() == doctest::Approx(9.0).epsilon(1e-10));
}

TEST_CASE("certify command: exit-code contract and curve emission") {
  TempDir tmp;
  write_diag(tmp.file("a.json"), {3.0, 2.0, 1.0});
  write_diag(tmp.file("b.json"), {4.0, 2.0, 1.0});

  SUBCASE("solved minimizer certifies clean, exit 0") {
    std::ostringstream out, err;
    cli::SolveArgs solve;
    solve.a_file = tmp.file("a.json");
    solve.b_file = tmp.file("b.json");
    solve.out_matrix = tmp.file("cstar.json");
    REQUIRE(cli::run_solve(solve, out, err) == cli::kOk);

    cli::CertifyArgs args;
    args.a_file = tmp.file("a.json");
    args.b_file = tmp.file("b.json");
    args.c_file = tmp.file("cstar.json");
    args.curve_out = tmp.file("curve.csv");
    std::ostringstream out2, err2;
    CHECK(cli::run_certify(args, out2, err2) == cli::kOk);
    CHECK(out2.str().find("global_min") != std::string::npos);
    CHECK_FALSE(fs::exists(tmp.file("curve.csv")));
  }

  SUBCASE("misordered diagonal exits 10 and writes the curve CSV") {
    write_diag(tmp.file("c.json"), {2.0, 4.0, 1.0});
    cli::CertifyArgs args;
    args.a_file = tmp.file("a.json");
    args.b_file = tmp.file("b.json");
    args.c_file = tmp.file("c.json");
    args.curve_out = tmp.file("curve.csv");
    std::ostringstream out, err;
    CHECK(cli::run_certify(args, out, err) == cli::kNotExtremal);
    REQUIRE(fs::exists(tmp.file("curve.csv")));
    std::ifstream csv(tmp.file("curve.csv"));
    std::string header;
    std::getline(csv, header);
    CHECK(header == "t,value,residual");
    int rows = 0;
    for (std::string line; std::getline(csv, line);)
      if (!line.empty()) ++rows;
    CHECK(rows == 41);
  }

  SUBCASE("spectrum off the orbit exits 4") {
    write_diag(tmp.file("c.json"), {4.1, 2.0, 1.0});
    cli::CertifyArgs args;
    args.a_file = tmp.file("a.json");
    args.b_file = tmp.file("b.json");
    args.c_file = tmp.file("c.json");
    std::ostringstream out, err;
    CHECK(cli::run_certify(args, out, err) == cli::kNotOnOrbit);
  }
}

TEST_CASE("descend command produces a decreasing curve file") {
  TempDir tmp;
  write_diag(tmp.file("a.json"), {3.0, 2.0, 1.0});
  write_diag(tmp.file("b.json"), {4.0, 2.0, 1.0});
  write_diag(tmp.file("c.json"), {2.0, 4.0, 1.0});
  cli::DescendArgs args;
  args.a_file = tmp.file("a.json");
  args.b_file = tmp.file("b.json");
  args.c_file = tmp.file("c.json");
  args.curve_out = tmp.file("curve.csv");
  std::ostringstream out, err;
  CHECK(cli::run_descend(args, out, err) == cli::kOk);
  CHECK(out.str().find("commuting rotation") != std::string::npos);
  CHECK(fs::exists(tmp.file("curve.csv")));

  // an extremal point is refused with exit 10
  std::ostringstream out2, err2;
  cli::SolveArgs solve;
  solve.a_file = tmp.file("a.json");
  solve.b_file = tmp.file("b.json");
  solve.out_matrix = tmp.file("cstar.json");
  REQUIRE(cli::run_solve(solve, out2, err2) == cli::kOk);
  args.c_file = tmp.file("cstar.json");
  std::ostringstream out3, err3;
  CHECK(cli::run_descend(args, out3, err3) == cli::kNotExtremal);
}

TEST_CASE("gnl command: empty sweep, clean sweep, determinism") {
  SUBCASE("zero trials exits 0 with an empty summary") {
    cli::GnlArgs args;
    args.dims = {2, 3};
    args.trials = 0;
    args.config.trials = 0;
    std::ostringstream out, err;
    CHECK(cli::run_gnl(args, out, err) == cli::kOk);
    CHECK(out.str().find("\"pairs\": 0") != std::string::npos);
    CHECK(out.str().find("\"violations\": 0") != std::string::npos);
  }

  SUBCASE("small sweep has no violations and reruns byte-identically") {
    cli::GnlArgs args;
    args.dims = {2, 3, 4};
    args.trials = 25;
    args.seed = 31;
    std::ostringstream out1, err1, out2, err2;
    CHECK(cli::run_gnl(args, out1, err1) == cli::kOk);
    CHECK(cli::run_gnl(args, out2, err2) == cli::kOk);
    CHECK(out1.str() == out2.str());
    CHECK(out1.str().find("\"violations\": 0") != std::string::npos);
  }

  SUBCASE("per-trial CSV is written when requested") {
    TempDir tmp;
    cli::GnlArgs args;
    args.dims = {2};
    args.trials = 5;
    args.seed = 7;
    args.per_trial_out = tmp.file("trials.csv");
    std::ostringstream out, err;
    CHECK(cli::run_gnl(args, out, err) == cli::kOk);
    std::ifstream csv(tmp.file("trials.csv"));
    std::string header;
    std::getline(csv, header);
    CHECK(header ==
          "d,trial,left_gap,right_gap,left_excess,right_excess,left_holds,right_holds");
  }
}

TEST_CASE("oracle command matches the closed form") {
  TempDir tmp;
  write_diag(tmp.file("a.json"), {4.0, 1.0});
  write_diag(tmp.file("b.json"), {1.0, 9.0});
  cli::OracleArgs args;
  args.a_file = tmp.file("a.json");
  args.b_file = tmp.file("b.json");
  args.seed = 3;
  std::ostringstream out, err;
  CHECK(cli::run_oracle(args, out, err) == cli::kOk);
  const auto pos = out.str().find("\"value\": ");
  REQUIRE(pos != std::string::npos);
  const double value = std::stod(out.str().substr(pos + 9));
  CHECK(std::abs(value - std::log(2.25)) < 1e-4);
}

TEST_CASE("config parsing: defaults, overrides, rejection of unknown keys") {
  const RunConfig def = RunConfig::from_json_text("{}", "cfg");
  CHECK(def.seed == 1);
  CHECK(def.norm == "schatten:2");
  CHECK(def.tolerances.majorization == doctest::Approx(1e-9));
  CHECK(def.dims == std::vector<std::size_t>{2, 3, 4, 5, 6});
  CHECK(def.trials == 1000);

  const RunConfig cfg = RunConfig::from_json_text(
      R"({"seed": 9, "norm": "kyfan:2", "trials": 10, "dims": [2, 3],
          "tolerances": {"majorization": 1e-12, "certify": 1e-6},
          "output": {"path": "out.json", "format": "csv"}})",
      "cfg");
  CHECK(cfg.seed == 9);
  CHECK(cfg.norm == "kyfan:2");
  CHECK(cfg.trials == 10);
  CHECK(cfg.tolerances.majorization == doctest::Approx(1e-12));
  CHECK(cfg.tolerances.certify == doctest::Approx(1e-6));
  CHECK(cfg.tolerances.herm == doctest::Approx(1e-10));  // untouched default
  CHECK(cfg.output.format == OutputFormat::csv);

  CHECK_THROWS_AS(RunConfig::from_json_text(R"({"sed": 1})", "cfg"), ParseError);
  CHECK_THROWS_AS(RunConfig::from_json_text(R"({"tolerances": {"majorisation": 1e-9}})", "cfg"),
                  ParseError);
  CHECK_THROWS_AS(RunConfig::from_json_text(R"({"output": {"format": "xml"}})", "cfg"),
                  ParseError);
}
