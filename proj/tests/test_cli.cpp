#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "test_support.hpp"

namespace {

using pairtab::test::cli_bin;
using pairtab::test::data_dir;

struct CmdResult {
  int exit_code;
  std::string out;
};

CmdResult run_cli(const std::string& args) {
  const std::string cmd = cli_bin() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string table_arg() { return data_dir() + "/lymphocyte_etca.csv"; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("fit emits a report and exits cleanly") {
  const CmdResult r = run_cli("fit " + table_arg());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"command\": \"fit\"") != std::string::npos);
  CHECK(r.out.find("\"converged\": true") != std::string::npos);

  const CmdResult tsv = run_cli("fit " + table_arg() + " --format tsv --digits 2");
  CHECK(tsv.exit_code == 0);
  CHECK(tsv.out.find("chr_a\tchr_b\tobserved\tfitted") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("gof " + table_arg() + " --samples 0").exit_code == 2);
  CHECK(run_cli("wibble").exit_code == 2);
  CHECK(run_cli("fit /nonexistent.csv").exit_code == 2);
  CHECK(run_cli("fit " + table_arg() + " --model pair:0").exit_code == 2);
}

TEST_CASE("boundary fits exit with code 3") {
  // the bundled table has f(19,21) = 0, so that fixed cell is on the boundary
  const CmdResult r = run_cli("fit " + table_arg() + " --model pair:19,21");
  CHECK(r.exit_code == 3);
  CHECK(r.out.find("\"type\": \"boundary\"") != std::string::npos);
}

TEST_CASE("enumeration cap exits with code 4") {
  const CmdResult r = run_cli("gof " + table_arg() + " --exact --cap 10");
  CHECK(r.exit_code == 4);
  CHECK(r.out.find("\"type\": \"cap\"") != std::string::npos);
}

TEST_CASE("exact gof on a tiny table") {
  const std::string tiny = data_dir() + "/../tests/data/tiny_doubled.csv";
  const CmdResult r = run_cli("gof " + tiny + " --exact");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"method\": \"exact\"") != std::string::npos);
  CHECK(r.out.find("\"p_value\": 0.2") != std::string::npos);
}

TEST_CASE("identical seeds give byte-identical reports") {
  const std::string args = "gof " + table_arg() + " --seed 7 --thin 50 --samples 100";
  const CmdResult a = run_cli(args);
  const CmdResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);

  const CmdResult c = run_cli("gof " + table_arg() + " --seed 8 --thin 50 --samples 100");
  CHECK(a.out != c.out);
}

TEST_CASE("scan reports the boundary row and supports filtering") {
  const CmdResult r = run_cli("scan " + table_arg() + " --pair 19,21 --diagnostics");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"boundary\": true") != std::string::npos);
}

TEST_CASE("normal-form reports steps") {
  const CmdResult r = run_cli("normal-form " + table_arg());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"steps\": 11264") != std::string::npos);
}

TEST_CASE("estimate composes the magnitude blocks") {
  const CmdResult r = run_cli("estimate " + table_arg() + " --counts " + data_dir() +
                              "/subtable_counts.txt --r2 346.63 --binom 27706,30 --floor 300 " +
                              "--upper-log10 293.26");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"subtable_lower_bound_log10\": 214.78") != std::string::npos);
  CHECK(r.out.find("\"ratio_log10\": -6.7") != std::string::npos);
}

}  // TEST_SUITE
