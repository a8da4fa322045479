// cubix command line: batch solving (JSON-lines records), double-root
// criterion checks, method benchmarks and the formula audit.
//
// Exit codes: 0 success, 1 parse/usage error, 2 internal error.

#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "cubix/batch.hpp"

namespace {

std::istream& open_input(const std::string& path, std::ifstream& file) {
  if (path == "-") return std::cin;
  file.open(path);
  if (!file) throw cubix::ParseError(0, "cannot open input file: " + path);
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uniform closed-form cubic roots, 3x3 complex spectra, formula audit"};
  app.require_subcommand(1);

  std::string method_str = "uniform";
  std::string input_path = "-";
  double tol = 1e-12;
  long count = 0;
  std::uint64_t seed = 1;
  std::string dist_str = "root-annulus";
  std::string out_path;
  bool printed_forms = false, printed_branches = false, o_negative = false,
       inject_e2 = false;

  auto* solve = app.add_subcommand("solve", "solve cubics or 3x3 matrices from a stream");
  solve->add_option("--method", method_str, "uniform|cardano|oracle|eigen3")->required();
  solve->add_option("--input", input_path, "input file or - for stdin");
  solve->add_option("--tol", tol, "zero-band factor in (0,1)")
      ->envname("CUBIX_TOL")
      ->check(CLI::Range(std::nextafter(0.0, 1.0), 1.0));

  auto* check = app.add_subcommand("check", "double-root criterion on each input cubic");
  bool criterion_flag = false;
  check->add_flag("--criterion", criterion_flag, "evaluate the double-root criterion")
      ->required();
  check->add_option("--input", input_path, "input file or - for stdin");
  check->add_option("--tol", tol, "zero-band factor in (0,1)")
      ->envname("CUBIX_TOL")
      ->check(CLI::Range(std::nextafter(0.0, 1.0), 1.0));

  auto* bench = app.add_subcommand("bench", "time uniform vs cardano vs oracle");
  bench->add_option("--count", count, "ensemble size")->required()->check(CLI::PositiveNumber);
  bench->add_option("--seed", seed, "ensemble seed");
  bench->add_option("--dist", dist_str, "root-annulus|coeff-disk")
      ->check(CLI::IsMember({"root-annulus", "coeff-disk"}));

  auto* audit = app.add_subcommand("audit", "identity audit over random instances");
  audit->add_option("--count", count, "number of (matrix, a) pairs and cubics")
      ->required()
      ->check(CLI::PositiveNumber);
  audit->add_option("--seed", seed, "ensemble seed");
  audit->add_option("--out", out_path, "report file (JSON)")->required();
  audit->add_flag("--printed-forms", printed_forms,
                  "evaluate the published coefficient forms instead of the corrected ones");
  audit->add_flag("--printed-branches", printed_branches,
                  "independent principal sqrt(-delta_o) instead of the paired branch");
  audit->add_flag("--o-negative-sign", o_negative, "negative sign branch of the o formula");
  audit->add_flag("--inject-e2-sign-flip", inject_e2,
                  "sanity check: flip one sign in e2 and watch the audit flag it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    cubix::BatchOptions opt;
    opt.band_tol = tol;
    if (solve->parsed()) {
      const auto method = cubix::parse_method(method_str);
      if (!method) throw cubix::ParseError(0, "unknown method: " + method_str);
      std::ifstream file;
      cubix::run_batch(open_input(input_path, file), *method, opt, std::cout);
    } else if (check->parsed()) {
      std::ifstream file;
      cubix::run_check(open_input(input_path, file), opt, std::cout);
    } else if (bench->parsed()) {
      const auto dist = dist_str == "coeff-disk" ? cubix::BenchDistribution::coeff_disk
                                                 : cubix::BenchDistribution::root_annulus;
      const auto rep = cubix::run_bench(count, seed, dist, opt);
      std::cout << cubix::bench_to_json(rep).dump(2) << "\n";
    } else if (audit->parsed()) {
      cubix::AuditOptions<double> aopt;
      aopt.band_tol = tol;
      aopt.chain.form = printed_forms ? cubix::FormulaForm::printed
                                      : cubix::FormulaForm::corrected;
      aopt.chain.inject_e2_sign_flip = inject_e2;
      aopt.inv.printed_branches = printed_branches;
      aopt.inv.o_negative_sign = o_negative;
      cubix::AuditRunStats stats;
      const auto rep = cubix::run_audit(count, seed, aopt, &stats);
      const auto j = cubix::audit_to_json(rep, &stats);
      std::ofstream out(out_path);
      if (!out) throw cubix::ParseError(0, "cannot open output file: " + out_path);
      out << j.dump(2) << "\n";
      std::cout << "audit: " << rep.instances << " instances, "
                << (rep.all_pass() ? "all equations pass" : "FAILURES flagged")
                << "; report written to " << out_path << "\n";
      for (const auto& name : rep.errata_candidates())
        std::cout << "errata candidate: " << name << "\n";
    }
  } catch (const cubix::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
