#pragma once

// Command-line front end. run_cli takes the arguments after the program name
// and returns both renderings of the result; main() prints one of them.
//
// Exit codes: 0 success, 1 a check failed, 2 usage or parse error.

#include <string>
#include <vector>

#include "json.hpp"

namespace canonq::cli {

using Json = nlohmann::ordered_json;

struct RunReport {
  Json record;       ///< {command, status, result, diagnostics}
  std::string text;  ///< human-readable rendering
  int exit_code = 0;
  bool json = false;  ///< --format json was requested

  const std::string& output() const;

 private:
  mutable std::string rendered_;
};

RunReport run_cli(const std::vector<std::string>& args);

/// Every subcommand path accepted by run_cli, e.g. "sl2 probe".
std::vector<std::string> subcommands();

}  // namespace canonq::cli
