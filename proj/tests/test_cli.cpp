#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

using nlohmann::json;

namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const std::string& args) {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() / "sigstab_cli_test";
  fs::create_directories(dir);
  const fs::path out = dir / ("out" + std::to_string(counter) + ".txt");
  const fs::path err = dir / ("err" + std::to_string(counter++) + ".txt");
  const std::string cmd = std::string(SIGSTAB_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

const std::string kFixtures = SIGSTAB_FIXTURES;

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("analyze fixture A") {
  const Run r = run("analyze " + kFixtures + "/fixture_a.csv");
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(std::abs(doc["sigma_star"].get<double>() - 2.0) <= 1e-8);
  CHECK(doc["crossing"] == "RealCrossing");
  CHECK(doc["theorem2"]["residual"].get<double>() <= 1e-8);
  CHECK(doc["gershgorin"] == 2.0);
}

TEST_CASE("analyze fixtures B and C") {
  Run r = run("analyze " + kFixtures + "/fixture_b.json");
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(std::abs(doc["sigma_star"].get<double>()) <= 1e-8);
  CHECK(doc["crossing"] == "ComplexPairCrossing");
  CHECK(doc["corollary"]["holds"] == true);

  r = run("analyze " + kFixtures + "/fixture_c.json");
  REQUIRE(r.code == 0);
  doc = json::parse(r.out);
  CHECK(std::abs(doc["sigma_star"].get<double>()) <= 1e-8);
  CHECK(doc["theorem2"]["holds"] == true);
}

TEST_CASE("analyze input errors exit 1") {
  Run r = run("analyze " + kFixtures + "/ragged.csv");
  CHECK(r.code == 1);
  CHECK(r.err.find("row 2") != std::string::npos);

  r = run("analyze " + kFixtures + "/missing.csv");
  CHECK(r.code == 1);
  CHECK(r.err.find("not found") != std::string::npos);

  CHECK(run("analyze").code == 1);
  CHECK(run("analyze " + kFixtures + "/fixture_a.csv --format yaml").code == 1);
  CHECK(run("frobnicate").code == 1);
}

TEST_CASE("analyze theorem failure exits 2") {
  const Run r = run("analyze " + kFixtures + "/fixture_a.csv --tol 1e-3 --theorem-tol 1e-30");
  CHECK(r.code == 2);
  CHECK(json::parse(r.out)["theorem2"]["holds"] == false);
}

TEST_CASE("analyze text format and output file") {
  Run r = run("analyze " + kFixtures + "/fixture_a.csv --format text");
  CHECK(r.code == 0);
  CHECK(r.out.find("RealCrossing") != std::string::npos);

  const fs::path out = fs::temp_directory_path() / "sigstab_cli_test" / "report.json";
  r = run("analyze " + kFixtures + "/fixture_b.json --output " + out.string());
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(json::parse(slurp(out))["crossing"] == "ComplexPairCrossing");
}

TEST_CASE("analyze output is deterministic apart from timings") {
  json a = json::parse(run("analyze " + kFixtures + "/corollary_strict_slack.json").out);
  json b = json::parse(run("analyze " + kFixtures + "/corollary_strict_slack.json").out);
  a.erase("timings_ms");
  b.erase("timings_ms");
  CHECK(a == b);
  CHECK(a["corollary"]["slack"].get<double>() > 1e-3);
}

TEST_CASE("analyze with a zero diagonal reports scaling unavailable") {
  const Run r = run("analyze " + kFixtures + "/zero_diagonal.csv --sigma-lo -1 --sigma-hi 5");
  const json doc = json::parse(r.out);
  CHECK(doc["scaling"].is_null());
  CHECK(doc["gershgorin"].is_null());
  CHECK_FALSE(doc["warnings"].empty());
  CHECK(run("analyze " + kFixtures + "/zero_diagonal.csv --sigma-lo -1").code == 1);
}

TEST_CASE("sweep fixture A") {
  const Run r = run("sweep " + kFixtures + "/fixture_a.csv --sigma-min 0 --sigma-max 4 --steps 5");
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == std::vector<std::string>{"sigma", "abscissa", "p_0", "p_1", "sign_0", "sign_1"});
  const double absc[] = {2, 1, 0, -1, -2};
  const double p0[] = {-4, -3, 0, 5, 12};
  for (int k = 0; k < 5; ++k) {
    const auto& row = rows[k + 1];
    CHECK(std::stod(row[0]) == k);
    CHECK(std::abs(std::stod(row[1]) - absc[k]) <= 1e-9);
    CHECK(std::abs(std::stod(row[2]) - p0[k]) <= 1e-9);
  }
}

TEST_CASE("sweep diagonal fixture") {
  const Run r = run("sweep " + kFixtures + "/fixture_c.json --sigma-min 0 --sigma-max 1 --steps 2");
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(std::stod(rows[1][2 + i]) == 0.0);
}

TEST_CASE("sweep usage errors exit 1") {
  CHECK(run("sweep " + kFixtures + "/fixture_a.csv --sigma-min 4 --sigma-max 0").code == 1);
  CHECK(run("sweep " + kFixtures + "/fixture_a.csv --sigma-min 1 --sigma-max 1").code == 1);
  CHECK(run("sweep " + kFixtures + "/fixture_a.csv --sigma-min 0 --sigma-max 1 --steps 1").code == 1);
  CHECK(run("sweep " + kFixtures + "/fixture_a.csv --sigma-min 0").code == 1);
  CHECK(run("sweep " + kFixtures + "/ragged.csv --sigma-min 0 --sigma-max 1").code == 1);
}
