/*
   Copyright 2026 The hilbmod Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// hilbmod: scenario checks, the built-in gallery and the seeded fuzzer.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hilbmod/cli.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace hilbmod;

  CLI::App app{"Modular operators and polar decomposition on Hilbert C*-modules"};
  app.require_subcommand(1);

  double tol = default_tolerance().eps();
  int grid = fn::kDefaultGrid;
  std::string format = "human";
  bool fail_fast = false;
  app.add_option("--tol", tol, "Relative tolerance (default from HILBMOD_TOL, else 1e-9)")->check(CLI::NonNegativeNumber);
  app.add_option("--grid", grid, "Grid points on [0, 1] for the function backend")->check(CLI::Range(2, 1 << 20));
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "machine"}));
  app.add_flag("--fail-fast", fail_fast, "Stop at the first failing request");

  std::string file;
  auto* check = app.add_subcommand("check", "Run every request of a scenario file");
  check->add_option("file", file, "Scenario file")->required();
  auto* polar = app.add_subcommand("polar", "Polar decomposition of every operator in a scenario file");
  polar->add_option("file", file, "Scenario file")->required();
  auto* invariants = app.add_subcommand("invariants", "Kernel invariants of every operator in a scenario file");
  invariants->add_option("file", file, "Scenario file")->required();
  auto* gallery = app.add_subcommand("gallery", "Run the built-in scenarios");
  auto* fuzz = app.add_subcommand("fuzz", "Random operators cross-checked against the adjoint");
  cli::FuzzOptions fo;
  fuzz->add_option("--seed", fo.seed, "Seed")->required();
  fuzz->add_option("--count", fo.count, "Number of operators")->check(CLI::NonNegativeNumber);
  fuzz->add_option("--algebra", fo.algebra, "Block sizes of B, e.g. 1,2")->delimiter(',')->check(CLI::PositiveNumber);
  fuzz->add_option("--rank", fo.rank, "Rank of the free module")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  const cli::RunOptions opt{Tolerance(tol), grid, fail_fast};
  const auto fmt = format == "machine" ? cli::Format::kMachine : cli::Format::kHuman;
  try {
    cli::Report report;
    if (*gallery) {
      report = cli::gallery(opt);
    } else if (*fuzz) {
      report = cli::fuzz(fo, opt);
    } else {
      const auto scenario = cli::parse_scenario(read_file(file));
      if (*check) report = cli::run(scenario, opt);
      else report = cli::run_all(scenario, *polar ? "polar" : "invariants", opt);
    }
    std::cout << cli::render(report, fmt);
    return report.passed() ? EXIT_SUCCESS : EXIT_FAILURE;
  } catch (const std::exception& e) {
    std::cerr << "hilbmod: " << e.what() << "\n";
    return 2;
  }
}
