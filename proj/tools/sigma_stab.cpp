// sigma-stab: analyze the diagonally scaled family M_sigma of a matrix.
//
//   sigma-stab analyze <input> [--tol T] [--theorem-tol T] [--format json|text] [--output PATH]
//   sigma-stab sweep <input> --sigma-min A --sigma-max B [--steps K] [--output PATH]

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sigstab/matrix_io.hpp"
#include "sigstab/report.hpp"
#include "sigstab/stability.hpp"

namespace {

void emit(const std::string& text, const std::string& output) {
  if (output.empty() || output == "-") {
    std::cout << text;
  } else {
    sigstab::write_file_atomic(output, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diagonal-scaling (sigma) stability analysis of real square matrices"};
  app.require_subcommand(1);

  std::string input;
  std::string output;

  auto* analyze = app.add_subcommand("analyze", "Full stability report for one matrix");
  double tol = sigstab::kDefaultSigmaTol;
  double theorem_tol = sigstab::kDefaultTheoremTol;
  std::string format = "json";
  std::optional<double> sigma_lo;
  std::optional<double> sigma_hi;
  analyze->add_option("input", input, "Matrix file (.csv or .json)")->required();
  analyze->add_option("--tol", tol, "Bisection width for sigma*")->check(CLI::PositiveNumber);
  analyze->add_option("--theorem-tol", theorem_tol, "Relative tolerance for theorem verdicts")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
  analyze->add_option("--output", output, "Output path (default: stdout)");
  analyze->add_option("--sigma-lo", sigma_lo, "Bracket start for sigma* (needed without a negative diagonal)");
  analyze->add_option("--sigma-hi", sigma_hi, "Bracket end for sigma*");

  auto* sweep = app.add_subcommand("sweep", "Abscissa and coefficient values on a sigma grid, as CSV");
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  int steps = 200;
  sweep->add_option("input", input, "Matrix file (.csv or .json)")->required();
  sweep->add_option("--sigma-min", sigma_min, "First grid point")->required();
  sweep->add_option("--sigma-max", sigma_max, "Last grid point")->required();
  sweep->add_option("--steps", steps, "Number of grid points (>= 2)");
  sweep->add_option("--output", output, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return sigstab::kExitError;
  }

  try {
    const sigstab::Matrix m = sigstab::load_matrix(input);

    if (analyze->parsed()) {
      sigstab::AnalyzeOptions opts;
      opts.tol = tol;
      opts.theorem_tol = theorem_tol;
      if (sigma_lo.has_value() != sigma_hi.has_value()) {
        std::cerr << "error: --sigma-lo and --sigma-hi must be given together\n";
        return sigstab::kExitError;
      }
      if (sigma_lo) opts.bracket = std::make_pair(*sigma_lo, *sigma_hi);
      const sigstab::StabilityReport rep = sigstab::analyze(m, opts);
      if (format == "text") {
        emit(sigstab::report_to_text(rep, input), output);
      } else {
        emit(sigstab::report_to_json(rep, m, input).dump(2) + "\n", output);
      }
      for (const auto& err : rep.errors) std::cerr << "error: " << err << "\n";
      return sigstab::exit_code_for(rep);
    }

    if (!(sigma_min < sigma_max)) {
      std::cerr << "error: --sigma-min must be less than --sigma-max\n";
      return sigstab::kExitError;
    }
    if (steps < 2) {
      std::cerr << "error: --steps must be at least 2\n";
      return sigstab::kExitError;
    }
    const auto rows = sigstab::sweep(m, sigma_min, sigma_max, steps);
    emit(sigstab::sweep_to_csv(rows, m.n()), output);
    return sigstab::kExitOk;
  } catch (const sigstab::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return sigstab::kExitError;
}
