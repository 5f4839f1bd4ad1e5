// Batch front-end: reads one problem file, runs a check suite and writes a
// JSON report. Exit codes: 0 all passed, 1 some check failed, 2 only
// inconclusive outcomes, 3 bad input.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "raamkit/problem.hpp"

int main(int argc, char** argv) {
  CLI::App app{"raamkit: checks for right-angled Artin monoid representations"};
  app.require_subcommand(1, 1);

  std::string input;
  std::string output;
  double suite_tol = 0.0;
  int truncation = -1;
  bool quiet = false;

  for (const char* name : {"graph", "identities", "brehmer", "property-p",
                           "cauchy", "poisson", "fixtures", "all"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--input", input, "problem file (JSON)")->required();
    sub->add_option("--out", output, "write the JSON report here instead of stdout");
    sub->add_option("--suite-tol", suite_tol, "base tolerance override")
        ->check(CLI::PositiveNumber);
    sub->add_option("--truncation", truncation, "truncation level M override")
        ->check(CLI::NonNegativeNumber);
    sub->add_flag("-q,--quiet", quiet, "no human-readable summary on stderr");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 3;
  }

  try {
    const auto suite = raamkit::parse_suite(app.get_subcommands().front()->get_name());
    auto spec = raamkit::parse_problem_file(input);
    if (auto g = raamkit::guard_from_env()) spec.options.guard = *g;
    if (suite_tol > 0.0) spec.options.tol = suite_tol;
    if (truncation >= 0) spec.options.truncation = truncation;

    const auto report = raamkit::run_report(spec, suite);
    const std::string body = report.to_json().dump(2) + "\n";
    if (output.empty()) {
      std::cout << body;
    } else {
      std::ofstream out(output);
      if (!out) {
        std::cerr << "error: cannot write " << output << '\n';
        return 3;
      }
      out << body;
    }
    if (!quiet) std::cerr << report.to_text();
    return report.exit_code();
  } catch (const raamkit::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
