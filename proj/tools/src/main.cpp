#include <iostream>

#include "canonq/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const canonq::cli::RunReport report = canonq::cli::run_cli(args);
  (report.exit_code == 2 && !report.json ? std::cerr : std::cout) << report.output();
  return report.exit_code;
}
