#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

#ifndef ROTORBIT_CLI_PATH
#error "ROTORBIT_CLI_PATH must point at the built binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(ROTORBIT_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buffer{};
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t n;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) r.output.append(buffer.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json json_of(const std::string& args) {
  RunResult r = run_cli(args + " --json");
  INFO(r.output);
  REQUIRE(r.exit_code == 0);
  return nlohmann::json::parse(r.output);
}

}  // namespace

TEST_CASE("pair reports the published trace") {
  auto j = json_of("pair --tx 1/2 --ty 2/3 --phi 'sqrt(2/3)'");
  CHECK(j["result"]["trace_exact"] == "1/2 - sqrt(2)");
  CHECK(j["result"]["traces_agree"] == true);
  CHECK(j["result"]["axes_independent"] == true);
  double tn = j["result"]["trace_numeric"].get<double>();
  CHECK(std::fabs(tn - (-0.9142135623730951)) < 1e-12);
  // JSON round-trip: parse(emit(x)) reproduces the document
  CHECK(nlohmann::json::parse(j.dump()) == j);
}

TEST_CASE("pair accepts numeric triplets") {
  auto j = json_of("pair --tx 1.0 --ty 1.0 --phi 0 --numeric");
  CHECK(j["inputs"]["triplet"]["mode"] == "numeric");
  CHECK(std::isfinite(j["result"]["trace_numeric"].get<double>()));
}

TEST_CASE("verdict certifies both directions") {
  auto inf = json_of("verdict --tx 1/2 --ty 2/3 --phi 'sqrt(2/3)'");
  CHECK(inf["result"]["verdict"] == "InfiniteCertified");
  auto fin = json_of("verdict --tx 1 --ty 2/5 --phi phi25_2");
  CHECK(fin["result"]["verdict"] == "FiniteCandidate");
  CHECK(fin["result"]["root_of_unity_order"] == 5);
  CHECK(fin["result"]["min_poly"]["degree"] == 4);
}

TEST_CASE("exit codes distinguish failure classes") {
  // usage / parse problems -> 2
  CHECK(run_cli("pair --tx 0 --ty 1/2 --phi 0").exit_code == 2);
  CHECK(run_cli("pair --tx 3/2 --ty 1/2 --phi 0").exit_code == 2);
  CHECK(run_cli("pair --tx 1/2 --ty 1/2 --phi bogus(").exit_code == 2);
  CHECK(run_cli("verdict --tx 1/2 --ty 1/2").exit_code != 0);
  CHECK(run_cli("density --tx 1/2 --ty 2/3 --phi 0").exit_code == 2);  // missing --seed
  // exact-arithmetic domain error -> 3
  CHECK(run_cli("pair --tx 2/7 --ty 1/2 --phi 0").exit_code == 3);
  // consistency failure -> 4
  CHECK(run_cli("tables --golden /dev/null").exit_code == 4);
  // verdict handles unsupported angles as a result, not an error
  auto r = run_cli("verdict --tx 2/7 --ty 1/2 --phi 0");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("Inconclusive") != std::string::npos);
}

TEST_CASE("tables regenerates with zero diffs") {
  auto j = json_of("tables");
  CHECK(j["result"]["pass"] == true);
  CHECK(j["result"]["diffs"].empty());
  CHECK(j["result"]["rows"].size() == 35);
}

TEST_CASE("catalog verifies every entry") {
  auto j = json_of("catalog");
  CHECK(j["result"]["entries"] == 108);
  CHECK(j["result"]["failures"] == 0);
}

TEST_CASE("minpoly pipeline output") {
  auto j = json_of("minpoly --n 5");
  CHECK(j["result"]["delta"] == 2);
  CHECK(j["result"]["verdict"] == "NotRootOfUnity");
  CHECK(j["result"]["eigenvalue_min_poly"]["text"] ==
        "x^4 + 5/2*x^3 + 13/4*x^2 + 5/2*x + 1");
  CHECK(run_cli("minpoly --n 4").exit_code == 3);
}

TEST_CASE("orbit closure output") {
  auto j = json_of("orbit --tx 1 --ty 2/3 --phi 'sqrt(1/3)'");
  CHECK(j["result"]["status"] == "Complete");
  CHECK(j["result"]["order"] == 12);
  CHECK(j["result"]["label"] == "A4");
  auto infinite = json_of("orbit --tx 1/2 --ty 2/3 --phi 'sqrt(2/3)' --cap 500");
  CHECK(infinite["result"]["status"] == "CapExceeded");
}

TEST_CASE("density reports are deterministic given a seed") {
  std::string args =
      "density --tx 1/2 --ty 2/3 --phi 'sqrt(2/3)' --mode random --count 2000 --max-length 24 "
      "--seed 7";
  auto a = json_of(args);
  auto b = json_of(args);
  CHECK(a["result"]["coverage"] == b["result"]["coverage"]);
  auto cov = a["result"]["coverage"];
  CHECK(cov["seed"] == 7);
  CHECK(cov["max_word_length"] == 24);
  CHECK(cov["points_generated"] == 2001);
  CHECK(cov["cells_total"].get<int>() > 1500);
  // exactly the documented field set
  CHECK(cov.size() == 7);
}

TEST_CASE("transport command cross-checks the word product") {
  auto j = json_of("transport --tx 1/2 --ty 2/5 --phi phi25_1 --curve x+1,y+2,x-1");
  CHECK(j["result"]["max_deviation"].get<double>() < 1e-9);
  auto twisted = json_of(
      "transport --tx 1/2 --ty 2/5 --phi phi25_1 --curve x+1,y+1 --bx 0,1,0,0 --by 0.5,0.5,0.5,0.5");
  CHECK(twisted["result"]["max_deviation"].get<double>() < 1e-9);
  CHECK(run_cli("transport --tx 1/2 --ty 2/5 --phi phi25_1 --curve z+1").exit_code == 2);
}
