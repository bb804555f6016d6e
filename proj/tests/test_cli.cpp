#include <array>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

namespace {

struct RunResult {
  int exit_code;
  std::string output;  // stdout only
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(CLI_BINARY_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("parametrix command prints the order-0 symbol") {
  auto r = run_cli("parametrix --order 0 --channels 0");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("2/(w-2)(w-3)") != std::string::npos);
}

TEST_CASE("parametrix table covers the low-order closed forms") {
  auto r = run_cli("parametrix --order 2 --channels 0..2");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("(-4)(Z)/(w-2)(w-3)(w-3)(w-4)") != std::string::npos);
  CHECK(r.output.find("channel l = 2") != std::string::npos);
}

TEST_CASE("usage errors exit with status 1") {
  CHECK(run_cli("parametrix --order -1 --channels 0").exit_code == 1);
  CHECK(run_cli("parametrix --channels 2..0").exit_code == 1);
  CHECK(run_cli("bogus-subcommand").exit_code == 1);
  CHECK(run_cli("").exit_code == 1);
  CHECK(run_cli("green --format yaml").exit_code == 1);
}

TEST_CASE("green command prints the grouped channel-0 series") {
  auto r = run_cli("green --order 2 --channels 0..2 --gamma 1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("[1] r^0") != std::string::npos);
  CHECK(r.output.find("(1/3)(Z^2 - E)") != std::string::npos);
  CHECK(r.output.find("rank-1 ok") != std::string::npos);
}

TEST_CASE("green with bound-state energy shows the Z^3/8 coefficient") {
  auto r = run_cli("green --order 3 --channels 0..3 --gamma 1 --n 2");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("(1/8)(Z^3)") != std::string::npos);
}

TEST_CASE("inadmissible weight exits with status 2") {
  CHECK(run_cli("green --order 1 --channels 0 --gamma 0.5").exit_code == 2);
  CHECK(run_cli("green --order 1 --channels 0 --gamma 2").exit_code == 2);
}

TEST_CASE("structured output is one json record per line") {
  auto r = run_cli("green --order 2 --channels 0..2 --gamma 1 --format json-lines");
  CHECK(r.exit_code == 0);
  std::istringstream in(r.output);
  std::string line;
  int records = 0;
  bool found_gi_row = false;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line);
    ++records;
    for (const char* key :
         {"channel", "r_power", "log_power", "coefficient", "marker"})
      REQUIRE(j.contains(key));
    // the G_I i=0 row: channel 0, r^0, coefficient -2Z at point 1
    if (j["channel"] == 0 && j["r_power"] == 0 &&
        j["marker"]["point"] == 1 && j["coefficient"].size() == 1 &&
        j["coefficient"][0]["zdeg"] == 1 &&
        j["coefficient"][0]["coeff"]["num"] == "-2")
      found_gi_row = true;
  }
  CHECK(records > 20);
  CHECK(found_gi_row);
}

TEST_CASE("verify command passes on the built engine") {
  auto r = run_cli("verify --order 4 --channels 0..3 --gamma 1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("FAIL") == std::string::npos);
  CHECK(r.output.find("PASS") != std::string::npos);
}

TEST_CASE("verify reports the printed-sign discrepancy") {
  auto r = run_cli("verify --order 2 --channels 0..1 --gamma 1 --n 1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("discrepant") != std::string::npos);
  CHECK(r.output.find("bound-state termination") != std::string::npos);
}

TEST_CASE("qcheck validates quantum numbers") {
  CHECK(run_cli("qcheck --n 1 --l 1").exit_code == 1);
  CHECK(run_cli("qcheck --n 1 --l 2").exit_code == 1);
}

TEST_CASE("qcheck reproduces Q_0 = -1 on the ground state") {
  auto r = run_cli("qcheck --n 1 --Z 1 --l 0");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("-1.0000") != std::string::npos);
}

TEST_CASE("qcheck reproduces Q_1 = -1 on the 2p state") {
  auto r = run_cli("qcheck --n 2 --Z 1 --l 1 --format json-lines");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(std::abs(j["q_values"][0].get<double>() + 1.0) < 1e-5);
  CHECK(j["spread"].get<double>() < 1e-5);
  CHECK(j["converged"].get<bool>());
}
