#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "canonq/cli.hpp"

using canonq::cli::run_cli;
using canonq::cli::RunReport;

namespace {

RunReport run(std::vector<std::string> args) { return run_cli(args); }

RunReport run_json(std::vector<std::string> args) {
  args.insert(args.begin(), {"--format", "json"});
  return run_cli(args);
}

// One representative invocation per subcommand path.
const std::map<std::string, std::vector<std::string>>& invocations() {
  static const std::map<std::string, std::vector<std::string>> table{
      {"pb", {"pb", "q", "p"}},
      {"quantise", {"quantise", "--map", "prequant", "q^2"}},
      {"gvh demo", {"gvh", "demo"}},
      {"axioms", {"axioms", "--map", "schrodinger", "--cases", "20"}},
      {"flow", {"flow", "--f", "q*p", "--z0", "1,1", "--tmax", "1"}},
      {"monodromy", {"monodromy", "--E", "2"}},
      {"scan", {"scan", "--emin", "-1.2", "--emax", "1.2"}},
      {"constraints", {"constraints", "--phi", "p1", "--test", "q2", "--n", "2"}},
      {"sl2 basis", {"sl2", "basis"}},
      {"sl2 probe", {"sl2", "probe", "--x", "1,1,0"}},
      {"sl2 repcheck", {"sl2", "repcheck", "--file", CANONQ_TEST_DATA "/zero_rep.txt"}},
      {"sl2 triple", {"sl2", "triple"}},
      {"uncertainty", {"uncertainty", "--trials", "50"}},
      {"props", {"props", "--suite", "weyl", "--cases", "20"}},
      {"expand", {"expand", "(q + p)^2"}},
      {"eval", {"eval", "q*p", "--at", "1,2"}},
      {"deriv", {"deriv", "q^2*p", "--var", "q"}},
      {"field", {"field", "(1/2)*q^2"}},
      {"member", {"member", "q*p", "--class", "POL2"}},
      {"op", {"op", "Dq*q"}},
      {"commutator", {"commutator", "q", "Dq"}},
      {"adjoint", {"adjoint", "q*Dq"}},
      {"symmetrise", {"symmetrise", "q*Dq"}},
      {"squaring", {"squaring", "--k", "3", "--law", "1"}},
      {"hom", {"hom", "--map", "quadratic", "q^2", "p^2"}},
  };
  return table;
}

}  // namespace

TEST(Cli, EverySubcommandIsExercised) {
  const auto paths = canonq::cli::subcommands();
  EXPECT_EQ(std::set<std::string>(paths.begin(), paths.end()).size(), paths.size());
  for (const auto& path : paths) {
    auto it = invocations().find(path);
    ASSERT_NE(it, invocations().end()) << path;
    const RunReport r = run_json(it->second);
    EXPECT_EQ(r.exit_code, 0) << path << "\n" << r.output();
    EXPECT_EQ(r.record["command"], path);
    EXPECT_EQ(r.record["status"], "ok") << path;
    EXPECT_TRUE(r.record["diagnostics"].is_array());
    EXPECT_TRUE(r.record.contains("result"));
    EXPECT_EQ(run(it->second).exit_code, 0) << path;
  }
  EXPECT_EQ(invocations().size(), paths.size());
}

TEST(Cli, GvhDemo) {
  const RunReport r = run({"gvh", "demo"});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.output().find("route_a     = q^2*p^2 - 2*i*hbar*q*p - (2/3)*hbar^2"), std::string::npos);
  EXPECT_NE(r.output().find("route_b     = q^2*p^2 - 2*i*hbar*q*p - (1/3)*hbar^2"), std::string::npos);
  EXPECT_NE(r.output().find("discrepancy = -(1/3)*hbar^2"), std::string::npos);
  const RunReport j = run_json({"gvh", "demo"});
  EXPECT_EQ(j.record["result"]["discrepancy"], "-(1/3)*hbar^2");
  EXPECT_EQ(j.record["result"]["discrepancy_is_scalar"], true);
}

TEST(Cli, CubicIsOutsideQuadraticDomain) {
  const RunReport r = run({"quantise", "--map", "quadratic", "q^3"});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.output().find("outside the domain POL2"), std::string::npos) << r.output();
  EXPECT_EQ(run_json({"quantise", "--map", "quadratic", "q^3"}).record["status"], "domain-violation");
}

TEST(Cli, PoissonBracket) {
  const RunReport r = run({"pb", "q", "p"});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.output(), "1\n");
  EXPECT_EQ(run({"pb", "p", "q"}).output(), "-1\n");
  EXPECT_EQ(run({"pb", "q1*p2", "p1", "--n", "2"}).output(), "p2\n");
}

TEST(Cli, CheckFailuresExitOne) {
  EXPECT_EQ(run({"axioms", "--map", "prequant", "--cases", "20"}).exit_code, 1);
  EXPECT_EQ(run({"constraints", "--phi", "q1", "--phi", "p1", "--n", "2"}).exit_code, 1);
  EXPECT_EQ(run({"constraints", "--phi", "q^2 + p^2 + 1"}).exit_code, 1);
  EXPECT_EQ(run_json({"constraints", "--phi", "q^2 + p^2 + 1"}).record["status"], "no-points-found");
  EXPECT_EQ(run({"sl2", "repcheck", "--file", CANONQ_TEST_DATA "/naive_basis.txt"}).exit_code, 1);
  EXPECT_EQ(run({"member", "q^3", "--class", "POL2"}).exit_code, 1);
}

TEST(Cli, UsageAndParseErrorsExitTwo) {
  EXPECT_EQ(run({}).exit_code, 2);
  EXPECT_EQ(run({"nonsense"}).exit_code, 2);
  EXPECT_EQ(run({"pb", "q"}).exit_code, 2);
  EXPECT_EQ(run({"pb", "q^-1", "p"}).exit_code, 2);
  EXPECT_EQ(run_json({"pb", "q^-1", "p"}).record["status"], "parse-error");
  EXPECT_EQ(run({"quantise", "--map", "weyl", "q"}).exit_code, 2);
  EXPECT_EQ(run({"pb", "q1", "p", "--n", "2"}).exit_code, 2);
  EXPECT_EQ(run({"flow", "--f", "q*p", "--z0", "1", "--tmax", "1"}).exit_code, 2);
  EXPECT_EQ(run({"sl2", "repcheck", "--file", "/nonexistent/rep.txt"}).exit_code, 2);
}

TEST(Cli, HelpExitsZero) {
  const RunReport r = run({"--help"});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.output().find("pb"), std::string::npos);
}

TEST(Cli, DeterministicOutput) {
  for (const auto& [path, args] : invocations()) {
    EXPECT_EQ(run(args).output(), run(args).output()) << path;
    EXPECT_EQ(run_json(args).output(), run_json(args).output()) << path;
  }
}

TEST(Cli, RepcheckFromTemporaryFile) {
  const auto path = std::filesystem::temp_directory_path() / "canonq_rep_test.txt";
  {
    std::ofstream out(path);
    out << "1\n0 0\n0 0\n0 0\n";
  }
  const RunReport r = run_json({"sl2", "repcheck", "--file", path.string()});
  std::filesystem::remove(path);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.record["result"]["verdict"], "VALID_REP");
}

TEST(Cli, QuantiseExamples) {
  EXPECT_EQ(run({"quantise", "--map", "prequant", "q^2"}).output(), "q^2 + 2*i*hbar*q*Dp\n");
  EXPECT_EQ(run({"quantise", "--map", "quadratic", "--style", "momentum", "q*p"}).output(),
            "q*p - (1/2)*i*hbar\n");
  EXPECT_EQ(run({"quantise", "--map", "schrodinger", "q^2*p"}).output(), "-i*hbar*q^2*Dq - i*hbar*q\n");
  EXPECT_EQ(run({"quantise", "--map", "schrodinger", "--style", "momentum", "q^2*p"}).output(),
            "q^2*p - i*hbar*q\n");
}
