// ellcoh: cohomology of the elliptic tangent bundle from stratified Betti data.
//
// Exit codes: 0 success, 1 parse/usage error, 2 validation failure or bound
// exceeded, 3 underdetermined or inconsistent sequence data, 4 local map not
// bijective.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "ellcoh/io.hpp"

namespace {

using namespace ellcoh;

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::UnknownPreset:
      return 1;
    case ErrorCode::Underdetermined:
    case ErrorCode::Inconsistent:
      return 3;
    default:
      return 2;
  }
}

std::string read_file(const std::string& path) {
  namespace fs = std::filesystem;
  std::string resolved = path;
  if (!fs::exists(resolved) && fs::exists(resolved + ".json")) resolved += ".json";
  std::ifstream in(resolved);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct ComputeOptions {
  std::string path;
  std::string format = "table";
  bool dim4 = false;
  bool check = false;
  bool complex_log = false;
};

int run_compute(const ComputeOptions& opt) {
  const auto spec = io::parse_divisor(read_file(opt.path));
  const auto diagnostics = validate(spec);
  if (has_errors(diagnostics)) {
    for (const auto& d : diagnostics)
      if (d.severity == Severity::Error) std::cerr << "validation error [" << d.invariant << "]: " << d.message << '\n';
    return 2;
  }
  const auto report = opt.dim4 ? assemble_dim4(spec) : assemble(spec);
  const auto route = opt.dim4 ? io::Route::Dim4 : io::Route::General;

  if (opt.format == "json") {
    std::cout << io::report_to_json(report, spec.field, route).dump(2) << '\n';
  } else if (opt.format == "csv") {
    std::cout << io::format_csv(report, opt.check);
  } else if (opt.complex_log) {
    std::cout << io::format_complex_log_table(report);
    if (opt.check) std::cout << io::format_checks(report.checks);
  } else {
    std::cout << io::format_table(report, opt.check);
  }
  return 0;
}

int run_verify_local(int l, int bound, const std::string& format) {
  const auto report = local::verify_local_isomorphism(l, bound);
  if (format == "json") std::cout << io::verify_local_to_json(report).dump(2) << '\n';
  else std::cout << io::format_verify_local(report);
  return report.bijective() ? 0 : 4;
}

int run_gysin(const std::string& path, const std::string& format) {
  const auto input = io::parse_gysin(read_file(path));
  const auto total = gysin_circle(input.base_betti, input.cup_e_ranks);
  if (format == "json") {
    io::Json doc{{"version", std::string(io::kVersion)}, {"total_space_betti", total.dims}};
    std::cout << doc.dump(2) << '\n';
    return 0;
  }
  std::cout << "H^k(P) for the circle bundle over base " << to_string(input.base_betti) << '\n';
  for (std::size_t k = 0; k < total.dims.size(); ++k) std::cout << "  k = " << k << ": " << total.dims[k] << '\n';
  return 0;
}

int run_solve_seq(const std::string& path) {
  const auto spec = io::parse_sequence(read_file(path));
  const auto sol = solve_exact(spec);
  std::cout << io::format_solution(spec, sol);
  return sol.complete() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie algebroid cohomology of elliptic tangent bundles"};
  app.require_subcommand(1);

  ComputeOptions compute;
  auto* cmd_compute = app.add_subcommand("compute", "Assemble H(A_|D|) from a divisor document");
  cmd_compute->add_option("file", compute.path, "Divisor document (JSON)")->required();
  cmd_compute->add_flag("--dim4", compute.dim4, "Use the four-manifold formula");
  cmd_compute->add_option("--format", compute.format, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  cmd_compute->add_flag("--check", compute.check, "Append consistency checks");
  cmd_compute->add_flag("--complex-log", compute.complex_log, "Show the complex log tangent bundle cohomology");

  std::string preset_name;
  auto* cmd_preset = app.add_subcommand("preset", "Print a built-in divisor document");
  cmd_preset->add_option("name", preset_name, "cp2-three-lines | cp2-cubic-paper | cp2-cubic-derived | lefschetz-n<k>")
      ->required();

  int chart = 0;
  int bound = local::kDefaultVerifyBound;
  std::string verify_format = "table";
  auto* cmd_verify = app.add_subcommand("verify-local", "Check the local decomposition map is bijective");
  cmd_verify->add_option("--l", chart, "Intersection number of the chart")->required();
  cmd_verify->add_option("--bound", bound, "Largest accepted chart number");
  cmd_verify->add_option("--format", verify_format)->check(CLI::IsMember({"table", "json"}));

  std::string gysin_path;
  std::string gysin_format = "table";
  auto* cmd_gysin = app.add_subcommand("gysin", "Betti numbers of a circle bundle via Thom-Gysin");
  cmd_gysin->add_option("file", gysin_path, "JSON with base_betti and cup_e_ranks")->required();
  cmd_gysin->add_option("--format", gysin_format)->check(CLI::IsMember({"table", "json"}));

  std::string seq_path;
  auto* cmd_seq = app.add_subcommand("solve-seq", "Solve a finite exact sequence");
  cmd_seq->add_option("file", seq_path, "JSON with terms and ranks")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*cmd_compute) return run_compute(compute);
    if (*cmd_preset) {
      std::cout << io::dump_divisor(io::preset(preset_name));
      return 0;
    }
    if (*cmd_verify) return run_verify_local(chart, bound, verify_format);
    if (*cmd_gysin) return run_gysin(gysin_path, gysin_format);
    if (*cmd_seq) return run_solve_seq(seq_path);
  } catch (const Error& e) {
    std::cerr << "ellcoh: " << e.what() << '\n';
    return exit_code(e.code());
  }
  return 1;
}
