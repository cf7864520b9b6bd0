#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "json.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run(const std::string& args) {
  static int counter = 0;
  const std::string path =
      "/tmp/hecke_cli_test_" + std::to_string(counter++) + ".out";
  const std::string cmd =
      std::string(HECKE_CLI_PATH) + " " + args + " > " + path + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(path);
  std::remove(path.c_str());
  return r;
}

}  // namespace

TEST_CASE("cli sieve") {
  const auto r = run("sieve --limit 30");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["subcommand"] == "sieve");
  REQUIRE(j["rows"].size() == 10);
  CHECK(j["rows"][0]["p"] == "2");
  CHECK(j["rows"][9]["p"] == "29");
}

TEST_CASE("cli tau") {
  const auto r = run("tau --limit 100");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["rows"].size() == 25);
  CHECK(j["rows"][0]["p"] == "2");
  CHECK(j["rows"][0]["tau_p"] == "-24");
  CHECK(j["rows"][1]["tau_p"] == "252");
}

TEST_CASE("cli solve defaults") {
  const auto r = run("solve");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["rows"].size() == 1);
  CHECK(std::stod(j["rows"][0]["d"].get<std::string>()) ==
        Catch::Approx(1.2581).margin(1e-3));
  CHECK(std::stod(j["rows"][0]["beta"].get<std::string>()) ==
        Catch::Approx(0.4957).margin(1e-3));
  CHECK(std::stod(j["rows"][0]["threshold_c"].get<std::string>()) ==
        Catch::Approx(0.7785).margin(5e-4));
  for (const auto& v : j["verdicts"]) CHECK(v["pass"] == true);
}

TEST_CASE("cli solve csv format") {
  const auto r = run("solve --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("d,beta,alpha,threshold_c") != std::string::npos);
  CHECK(r.out.find("# verdict,dichotomy,pass") != std::string::npos);
}

TEST_CASE("cli validate synthetic sequence") {
  const auto r = run("validate --source sato_tate --count 2000 --seed 5");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdicts"][0]["name"] == "kim_sarnak");
  CHECK(j["verdicts"][0]["pass"] == true);
}

TEST_CASE("cli identities") {
  const auto r = run("identities --samples 500 --seed 3");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["rows"].size() == 4);
  CHECK(j["verdicts"][0]["name"] == "clebsch_gordan");
  CHECK(j["verdicts"][0]["pass"] == true);
}

TEST_CASE("cli theorem verdict pass and fail") {
  const auto pass = run(
      "theorem --source sato_tate --count 200000 --seed 8 "
      "--threshold 0.7785 --delta 0.01");
  CHECK(pass.exit_code == 0);

  const auto fail = run(
      "theorem --source sato_tate --count 200000 --seed 8 "
      "--threshold 1.99 --delta 0.5");
  CHECK(fail.exit_code == 1);
  const auto j = nlohmann::json::parse(fail.out);
  CHECK(j["verdicts"][0]["pass"] == false);
}

TEST_CASE("cli density delta verdict") {
  const auto r = run(
      "density --source sato_tate --count 200000 --seed 8 "
      "--threshold 0.7785 --delta 0.01");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::stod(j["config"]["density_estimate"].get<std::string>()) > 0.01);
}

TEST_CASE("cli usage errors exit 2") {
  CHECK(run("sieve").exit_code == 2);                       // missing --limit
  CHECK(run("no-such-subcommand").exit_code == 2);
  CHECK(run("sample --source bogus").exit_code == 2);
  CHECK(run("sample --source csv").exit_code == 2);         // missing --input
  CHECK(run("sample --source csv --input /nonexistent.csv").exit_code == 2);
  CHECK(run("solve --delta 0.9").exit_code == 2);           // infeasible
  CHECK(run("--help").exit_code == 0);
}

TEST_CASE("cli output is byte-deterministic") {
  const std::string a = "/tmp/hecke_cli_det_a.json";
  const std::string b = "/tmp/hecke_cli_det_b.json";
  REQUIRE(run("solve --out " + a).exit_code == 0);
  REQUIRE(run("solve --out " + b).exit_code == 0);
  CHECK(slurp(a) == slurp(b));
  std::remove(a.c_str());
  std::remove(b.c_str());

  const auto r1 = run("sample --source dihedral --count 100 --seed 9");
  const auto r2 = run("sample --source dihedral --count 100 --seed 9");
  CHECK(r1.out == r2.out);
}

TEST_CASE("cli sweep handles infeasible deltas") {
  const auto r = run("sweep --deltas 0.01,0.3");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["rows"].size() == 2);
  CHECK(j["rows"][0]["feasible"] == "yes");
  CHECK(j["rows"][1]["feasible"] == "no");
  CHECK(j["rows"][1]["error"] != "");
}
