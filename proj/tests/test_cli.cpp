#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include "parahyp/io.hpp"

using namespace parahyp;

namespace {

const std::string kScratch = "cli_scratch";

std::string scratch() {
  static bool cleaned = false;
  if (!cleaned) {
    std::filesystem::remove_all(kScratch);
    cleaned = true;
  }
  ensure_directory(kScratch);
  return kScratch;
}

// Exit code of the CLI binary; -1 on abnormal termination.
int run_cli(const std::string& args) {
  const std::string cmd = std::string(PARAHYP_CLI_PATH) + " " + args +
                          " >" + kScratch + "/stdout.txt 2>" + kScratch +
                          "/stderr.txt";
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("help exits zero") {
  scratch();
  CHECK(run_cli("--help") == 0);
  CHECK(slurp(kScratch + "/stdout.txt").find("--system") != std::string::npos);
}

TEST_CASE("configuration errors exit 2 with a diagnostic") {
  scratch();
  CHECK(run_cli("--definitely-not-a-flag") == 2);

  CHECK(run_cli("frobnicate --out " + kScratch + "/x1") == 2);

  CHECK(run_cli("solve --profile bogus --out " + kScratch + "/x2") == 2);
  CHECK(slurp(kScratch + "/stderr.txt").find("profile") != std::string::npos);

  CHECK(run_cli("solve --system unknown --out " + kScratch + "/x3") == 2);

  std::ofstream bad(kScratch + "/bad.cfg");
  bad << "command = solve\nn = not-a-number\n";
  bad.close();
  CHECK(run_cli("--config " + kScratch + "/bad.cfg") == 2);
  const std::string err = slurp(kScratch + "/stderr.txt");
  CHECK(err.find("bad.cfg:2") != std::string::npos);
  CHECK(err.find("n") != std::string::npos);

  std::ofstream unk(kScratch + "/unk.cfg");
  unk << "no_such_key = 3\n";
  unk.close();
  CHECK(run_cli("--config " + kScratch + "/unk.cfg") == 2);

  CHECK(run_cli("--config " + kScratch + "/absent.cfg") == 2);
}

TEST_CASE("solve writes artifacts and exits zero") {
  scratch();
  const std::string out = kScratch + "/solve1";
  CHECK(run_cli("solve --n 32 --T 0.05 --out " + out) == 0);
  CHECK(std::filesystem::exists(out + "/config.txt"));
  CHECK(std::filesystem::exists(out + "/trajectory.csv"));
  CHECK(std::filesystem::exists(out + "/states.bin"));

  const CsvData traj = read_csv(out + "/trajectory.csv");
  CHECK(traj.columns[0] == "t");
  CHECK(traj.rows.size() > 2);
  const StateDump dump = read_state_dump(out + "/states.bin");
  CHECK(dump.grid.n == 32);
  CHECK(dump.times.back() == doctest::Approx(0.05).epsilon(1e-12));

  // The echoed config names every resolved value.
  const std::string echo = slurp(out + "/config.txt");
  CHECK(echo.find("command = solve") != std::string::npos);
  CHECK(echo.find("n = 32") != std::string::npos);
  CHECK(echo.find("seed = 42") != std::string::npos);
}

TEST_CASE("echoed config reruns to identical bytes") {
  scratch();
  const std::string out1 = kScratch + "/rt1";
  const std::string out2 = kScratch + "/rt2";
  REQUIRE(run_cli("solve --n 32 --T 0.04 --scheme galerkin --h-cut 9 --out " +
                  out1) == 0);
  REQUIRE(run_cli("--config " + out1 + "/config.txt --out " + out2) == 0);
  CHECK(slurp(out1 + "/trajectory.csv") == slurp(out2 + "/trajectory.csv"));
  CHECK(slurp(out1 + "/states.bin") == slurp(out2 + "/states.bin"));
}

TEST_CASE("flags override config file values") {
  scratch();
  std::ofstream cfg(kScratch + "/base.cfg");
  cfg << "command = envelope\n"
      << "n = 64\n"
      << "datum = rough\n";
  cfg.close();
  const std::string out = kScratch + "/ovr";
  CHECK(run_cli("--config " + kScratch + "/base.cfg --n 128 --out " + out) ==
        0);
  const std::string echo = slurp(out + "/config.txt");
  CHECK(echo.find("n = 128") != std::string::npos);
  CHECK(echo.find("datum = rough") != std::string::npos);
  const CsvData env = read_csv(out + "/envelope.csv");
  CHECK(env.columns == std::vector<std::string>{"k", "a_k", "c_k"});
  CHECK(env.rows.size() == 6);  // envelope_top(128) + 1
}

TEST_CASE("blowup run exits one") {
  scratch();
  CHECK(run_cli("solve --n 32 --T 0.5 --blowup-factor 1.05 --out " + kScratch +
                "/blow") == 1);
}
