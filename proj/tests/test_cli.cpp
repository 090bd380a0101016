// Drives the installed command-line binary end to end. ctest appends the
// binary path as the last argument; everything runs in a scratch directory
// under the test's working directory.
#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string g_cli;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_cli(const std::string& args, std::string* output = nullptr) {
  std::filesystem::create_directories("cli_work");
  const std::string capture = "cli_work/last_output.txt";
  const std::string cmd = "\"" + g_cli + "\" " + args + " > " + capture + " 2>&1";
  const int status = std::system(cmd.c_str());
  if (output) *output = slurp(capture);
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return -1;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) out.push_back(field);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) return 99;
  g_cli = argv[argc - 1];
  doctest::Context ctx(argc - 1, argv);
  return ctx.run();
}

TEST_CASE("identical invocations give identical files") {
  const std::string flags =
      "phase1 --p 0.25 --strategy buffer --trials 100 --seed 7";
  CHECK(run_cli(flags + " --out cli_work/a") == 0);
  CHECK(run_cli(flags + " --out cli_work/b") == 0);
  const std::string a = slurp("cli_work/a.csv");
  const std::string b = slurp("cli_work/b.csv");
  REQUIRE(!a.empty());
  CHECK(a == b);
  CHECK(slurp("cli_work/a_summary.csv") == slurp("cli_work/b_summary.csv"));

  const std::string header = a.substr(0, a.find('\n'));
  CHECK(header ==
        "trial_id,phase,p_s,strategy,steps,final_size,age_oldest,"
        "max_error_weight,z_measurements,diameter,success");
}

TEST_CASE("oracle verification reports its tally") {
  std::string output;
  CHECK(run_cli("verify-oracle --max-n 3 --out cli_work/v", &output) == 0);
  CHECK(output.find("oracle checks: 30") != std::string::npos);
  CHECK(output.find("oracle mismatches: 0") != std::string::npos);
}

TEST_CASE("bad invocations exit with the config-error code") {
  CHECK(run_cli("") == 1);                        // missing subcommand
  CHECK(run_cli("melt") == 1);                    // unknown subcommand
  CHECK(run_cli("phase1 --frobnicate 1") == 1);   // unknown flag
  CHECK(run_cli("phase1 --p 0 --out cli_work/x") == 1);
  CHECK(run_cli("phase1 --p 0.5 --trials 0 --out cli_work/x") == 1);
  CHECK(run_cli("phase1 --config cli_work/never_written.cfg") == 1);
  std::string help;
  CHECK(run_cli("--help", &help) == 0);
  CHECK(help.find("phase1") != std::string::npos);
}

TEST_CASE("flags override the config file") {
  std::filesystem::create_directories("cli_work");
  {
    std::ofstream cfg("cli_work/base.cfg");
    cfg << "p = 0.5\ntrials = 5\nseed = 1\n";
  }
  CHECK(run_cli("phase1 --config cli_work/base.cfg --trials 7 "
                "--out cli_work/c") == 0);
  const std::string csv = slurp("cli_work/c.csv");
  int rows = -1;  // header does not count
  for (char ch : csv) rows += ch == '\n';
  CHECK(rows == 7);
}

TEST_CASE("sweep surfaces the age slope in its summary") {
  CHECK(run_cli("sweep --p 0.5,0.25,0.125 --trials 80 --seed 2 --metric age "
                "--out cli_work/s") == 0);
  const std::string summary = slurp("cli_work/s_summary.csv");
  std::istringstream in(summary);
  std::string line;
  double slope = -1.0;
  while (std::getline(in, line)) {
    const auto f = fields_of(line);
    if (f.size() >= 5 && f[0] == "all" && f[2] == "fit_slope")
      slope = std::stod(f[4]);
  }
  REQUIRE(slope >= 0.0);
  CHECK(slope > 0.8);
  CHECK(slope < 1.25);
}

TEST_CASE("svg lands next to the csv when requested") {
  CHECK(run_cli("lattice --p 0.639 --width 10 --height 10 --size 4 "
                "--trials 20 --seed 3 --svg --out cli_work/l") == 0);
  const std::string svg = slurp("cli_work/l.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
}
