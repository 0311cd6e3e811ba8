#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;

const std::string kCli = EPATLAS_CLI_PATH;
const std::string kConfigs = EPATLAS_CONFIG_DIR;

int run(const std::string& args, const std::string& stdout_path = "") {
  std::string cmd = kCli + " " + args;
  if (!stdout_path.empty()) cmd += " > " + stdout_path;
  cmd += " 2> /dev/null";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json load(const std::string& path) { return json::parse(slurp(path)); }

}  // namespace

TEST_CASE("bands over a grid, file and stdout routes agree") {
  REQUIRE(run("bands --config " + kConfigs + "/kitaev.json"
              " --grid k_x=-3.14:3.14:9 --out cli_bands.json") == 0);
  json rep = load("cli_bands.json");
  CHECK(rep["schema"] == 1);
  CHECK(rep["command"] == "bands");
  REQUIRE(rep["rows"].size() == 9);
  // columns: momentum + re/im per band
  CHECK(rep["columns"].size() == 1 + 2 * 2);

  REQUIRE(run("bands --config " + kConfigs + "/kitaev.json"
              " --grid k_x=-3.14:3.14:9", "cli_bands_stdout.json") == 0);
  CHECK(load("cli_bands_stdout.json") == rep);
}

TEST_CASE("csv output") {
  REQUIRE(run("bands --config " + kConfigs + "/kitaev.json"
              " --grid k_x=0:1:5 --out cli_bands.csv") == 0);
  std::string csv = slurp("cli_bands.csv");
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header.find("k_x") == 0);
  int rows = 0;
  std::string line;
  while (std::getline(lines, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 5);
}

TEST_CASE("repeated runs are byte-identical") {
  for (const char* sub : {"scan", "bands"}) {
    std::string base = std::string("cli_det_") + sub;
    std::string args = std::string(sub) + " --config " + kConfigs +
                       "/kitaev.json --grid k_x=-3.14159:3.14159:41";
    REQUIRE(run(args + " --out " + base + "_1.json") == 0);
    REQUIRE(run(args + " --out " + base + "_2.json") == 0);
    CHECK(slurp(base + "_1.json") == slurp(base + "_2.json"));
  }
}

TEST_CASE("scan finds the critical-coupling degeneracy") {
  REQUIRE(run("scan --config " + kConfigs + "/kitaev.json"
              " --out cli_scan.json") == 0);
  json rep = load("cli_scan.json");
  CHECK(rep["command"] == "scan");
  REQUIRE(!rep["candidates"].empty());
  const json& top = rep["candidates"][0];
  CHECK(top["order"] == 2);
  CHECK(std::abs(top["k"][0].get<double>()) < 1e-8);
  CHECK(top["defective"] == true);
}

TEST_CASE("scan with model shorthand and parameter override") {
  // gamma_l gamma_g far below critical: eta has no zero anywhere.
  REQUIRE(run("scan --model kitaev --param gamma_l=0.01"
              " --grid k_x=-3.14:3.14:41 --out cli_scan_none.json") == 0);
  json rep = load("cli_scan_none.json");
  CHECK(rep["candidates"].empty());
}

TEST_CASE("classify reports the dispersion class") {
  REQUIRE(run("classify --config " + kConfigs + "/threefold.json"
              " --out cli_classify.json") == 0);
  json rep = load("cli_classify.json");
  CHECK(rep["command"] == "classify");
  CHECK(rep["order"] == 3);
  CHECK(rep["label"] == "EP3-I");
  CHECK(rep["scaling"]["bands"].size() == 3);
}

TEST_CASE("symcheck validates configured symmetries") {
  REQUIRE(run("symcheck --config " + kConfigs + "/kitaev.json"
              " --out cli_sym.json") == 0);
  json rep = load("cli_sym.json");
  REQUIRE(rep["symmetries"].size() == 3);
  for (const json& entry : rep["symmetries"]) {
    CHECK(entry["residual"].get<double>() < 1e-12);
    CHECK(entry["unitarity"].get<double>() < 1e-13);
  }
}

TEST_CASE("tablecheck filter") {
  REQUIRE(run("tablecheck --kind psH --n 2", "cli_table.txt") == 0);
  std::string out = slurp("cli_table.txt");
  CHECK(out.find("PASS") != std::string::npos);
  CHECK(out.find("FAIL") == std::string::npos);
}

TEST_CASE("bad invocations use distinct exit codes") {
  CHECK(run("bands") == 2);  // neither --config nor --model
  CHECK(run("nonsense") == 2);
  {
    std::ofstream bad("cli_bad.json");
    bad << "{ not json";
  }
  CHECK(run("bands --config cli_bad.json") == 2);
  {
    std::ofstream bad("cli_bad2.json");
    bad << R"({"schema": 1, "hamiltonian": {"model": "bogus"}})";
  }
  CHECK(run("bands --config cli_bad2.json") == 2);
}
