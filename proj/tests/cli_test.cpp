#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Runs the CLI with stderr silenced; stdout comes back for inspection.
RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(EXM_CLI_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) res.out.append(buf, n);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string tmp_path(const std::string& name) {
  return std::string("cli_test_") + name;
}

}  // namespace

TEST_CASE("dist prints exact rationals") {
  auto res = run_cli("dist --space cobweb v:0 v:1");
  CHECK(res.exit_code == 0);
  CHECK(res.out == "2/1\n");

  res = run_cli("dist --space cobweb v:3 v:3");
  CHECK(res.exit_code == 0);
  CHECK(res.out == "0/1\n");

  res = run_cli("dist --space hedgehog 1:1/2 2:7/10");
  CHECK(res.out == "6/5\n");

  res = run_cli("dist --space zcon star:0/1:2/1 toward:1/2:0/1:3/2");
  CHECK(res.out == "1/2\n");

  res = run_cli("dist --space extremal up:1/2:1/1 tu:3/4:1/2:3/4");
  CHECK(res.out == "1/4\n");
}

TEST_CASE("dist exit codes distinguish parse and validation failures") {
  CHECK(run_cli("dist --space cobweb v:0 banana").exit_code == 2);
  CHECK(run_cli("dist --space cobweb v:0 v:99").exit_code == 3);     // not in universe
  CHECK(run_cli("dist --space zcon star:0/1:9/1 star:0/1:0/1").exit_code == 3);  // t out of range
  CHECK(run_cli("dist --space nowhere 0 1").exit_code == 2);
  CHECK(run_cli("dist v:0 v:1").exit_code == 2);  // no space given
}

TEST_CASE("dist witness certificates are printed as JSON") {
  const auto res = run_cli("dist --space cobweb --witness i:0:1:19/10 i:0:2:19/10");
  CHECK(res.exit_code == 0);
  CHECK(res.out == "11/5\n[\"i:0:1:19/10\",\"v:1\",\"v:2\",\"i:0:2:19/10\"]\n");
}

TEST_CASE("audit writes a deterministic report and sets the exit code") {
  const auto out1 = tmp_path("a1.json");
  const auto out2 = tmp_path("a2.json");
  auto res = run_cli("audit --space hedgehog --audit metric --n 500 --seed 7 --out " + out1);
  CHECK(res.exit_code == 0);
  res = run_cli("audit --space hedgehog --audit metric --n 500 --seed 7 --workers 4 --out " + out2);
  CHECK(res.exit_code == 0);
  const auto bytes1 = slurp(out1);
  CHECK(!bytes1.empty());
  CHECK(bytes1 == slurp(out2));

  // Violations flip the exit code to 1 and land in the report.
  res = run_cli("audit --space unit_interval --audit ultrametric --n 500 --out " + out1);
  CHECK(res.exit_code == 1);
  CHECK(slurp(out1).find("\"violations\"") != std::string::npos);

  CHECK(run_cli("audit --space hedgehog --audit nonsense --out " + out1).exit_code == 2);
}

TEST_CASE("reports embed a config that reproduces them") {
  const auto out1 = tmp_path("r1.json");
  const auto out2 = tmp_path("r2.json");
  auto res = run_cli("audit --space zcon --audit lipschitz --n 400 --seed 3 --out " + out1);
  CHECK(res.exit_code == 0);
  res = run_cli("audit --from-report " + out1 + " --out " + out2);
  CHECK(res.exit_code == 0);
  CHECK(slurp(out1) == slurp(out2));
}

TEST_CASE("the environment seed is a default, not an override") {
  const auto out1 = tmp_path("e1.json");
  const auto out2 = tmp_path("e2.json");
  const auto out3 = tmp_path("e3.json");
  run_cli("audit --space hedgehog --audit metric --n 200 --seed 5 --out " + out1);
  const std::string env_cmd = std::string("EXOTIC_METRICS_SEED=5 ") + EXM_CLI_BIN +
                              " audit --space hedgehog --audit metric --n 200 --out " + out2 +
                              " 2>/dev/null";
  REQUIRE(std::system(env_cmd.c_str()) == 0);
  CHECK(slurp(out1) == slurp(out2));
  // An explicit flag wins over the environment.
  const std::string flag_cmd = std::string("EXOTIC_METRICS_SEED=9 ") + EXM_CLI_BIN +
                               " audit --space hedgehog --audit metric --n 200 --seed 5 --out " +
                               out3 + " 2>/dev/null";
  REQUIRE(std::system(flag_cmd.c_str()) == 0);
  CHECK(slurp(out1) == slurp(out3));
}

TEST_CASE("spaces load from config files") {
  const auto cfg = tmp_path("cw.cfg");
  {
    std::ofstream out(cfg);
    out << "# three vortices, short threads\n"
        << "kind = cobweb\n"
        << "vortices = 0, 1, 2\n"
        << "eps = 1/1\n";
  }
  auto res = run_cli("dist --config " + cfg + " v:0 v:2");
  CHECK(res.exit_code == 0);
  CHECK(res.out == "1/1\n");
  // The kind flag must agree with the config when both appear.
  CHECK(run_cli("dist --config " + cfg + " --space cobweb v:0 v:2").exit_code == 0);
  CHECK(run_cli("dist --config " + cfg + " --space hedgehog v:0 v:2").exit_code == 2);
  CHECK(run_cli("dist --config no_such_file.cfg v:0 v:1").exit_code == 2);
}

TEST_CASE("unwritable report paths exit with the I/O code") {
  const auto res =
      run_cli("audit --space hedgehog --audit metric --n 50 --out /no/such/dir/report.json");
  CHECK(res.exit_code == 4);
}

TEST_CASE("suite lists criteria and reports corruption") {
  const auto listed = run_cli("suite --list");
  CHECK(listed.exit_code == 0);
  CHECK(listed.out.find("01-cobweb-oracle") != std::string::npos);
  CHECK(listed.out.find("11-determinism") != std::string::npos);

  const auto one = run_cli("suite --only 01-cobweb-oracle");
  CHECK(one.exit_code == 0);
  CHECK(one.out.find("[PASS] 01-cobweb-oracle") != std::string::npos);

  const auto corrupted = run_cli("suite --only 02-metric-axioms --inject-corruption");
  CHECK(corrupted.exit_code == 1);
  CHECK(corrupted.out.find("[FAIL]") != std::string::npos);

  CHECK(run_cli("suite --only 99-unknown").exit_code == 2);
}
