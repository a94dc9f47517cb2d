#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "logdef/cli.hpp"

using namespace logdef;
using namespace th;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kScenarios = LOGDEF_SCENARIO_DIR;

}  // namespace

TEST_CASE("canonical dump") {
  json j = {{"b", 0.1}, {"a", {1, 2}}, {"c", {{"z", 1e-300}, {"y", true}}}};
  std::string s = dump_canonical(j);
  CHECK(s.find("\"a\"") < s.find("\"b\""));
  CHECK(s.find("0.10000000000000001") != std::string::npos);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", 1e-300);
  CHECK(s.find(buf) != std::string::npos);
  CHECK(json::parse(s) == j);
}

TEST_CASE("coefficient tables round trip and fill conjugates") {
  auto f = table_from_json(json::parse("[[1, 0, 0, -0.5], [0, 2, 0.25, 0.125]]"), band(2, 2));
  CHECK(f.coeff(-1, 0) == cd(0, 0.5));
  CHECK(f.coeff(0, -2) == cd(0.25, -0.125));
  CHECK(hermitian_defect(f) == 0.0);
  auto g = table_from_json(table_to_json(f), band(2, 2));
  CHECK(max_abs_diff(f, g) == 0.0);
  CHECK_THROWS_AS(table_from_json(json::parse("[[3, 0, 1, 0]]"), band(2, 2)), Error);
  CHECK_THROWS_AS(table_from_json(json::parse("[[1, 0, 1, 0], [-1, 0, 2, 0]]"), band(2, 2)), Error);
  CHECK_THROWS_AS(table_from_json(json::parse("[[0, 0, 1, 1]]"), band(2, 2)), Error);
  CHECK_THROWS_AS(table_from_json(json::parse("[[0, 0, 1]]"), band(2, 2)), Error);
}

TEST_CASE("models and lambdas parse") {
  auto m = model_from_json(json::parse(R"({"foliation":{"kind":"kronecker","lambda":{"mode":"quadratic","a":1,"b":1,"c":2,"d":5}},
                                          "X":{"kind":"constant","C":1},"K":1})"),
                           band(4, 4));
  CHECK(m.foliation.is_kronecker());
  CHECK(std::abs(m.foliation.lambda->approx() - 1.6180339887498949) < 1e-15);
  auto again = model_from_json(model_to_json(m), band(4, 4));
  CHECK(again.K == 1.0);
  CHECK(lambda_from_json(lambda_to_json(LambdaValue::liouville_constant())).mode() ==
        LambdaValue::Mode::LiouvilleConstant);
  // gx with a zero is not a valid transversal field
  CHECK_THROWS_AS(model_from_json(json::parse(R"({"foliation":{"kind":"fibration"},
                                                 "X":{"kind":"theta1","coeffs":[[1,0,0.5,0]]}})"),
                                  band(2, 2)),
                  Error);
  CHECK_THROWS_AS(lambda_from_json(json::parse(R"({"mode":"cubic"})")), Error);
}

TEST_CASE("scenario validation") {
  CHECK_THROWS_AS(scenario_from_json(json::parse(R"({"truncation":{"N":2,"M":2}})")), Error);
  CHECK_THROWS_AS(scenario_from_json(json::parse(R"({"model":{"foliation":{"kind":"fibration"},
      "X":{"kind":"constant","C":1}},"tolerances":{"residual":-1}})")),
                  Error);
  auto sc = load_scenario(kScenarios + "/fibration_flat.json");
  CHECK(sc.sections.size() >= 5);
  CHECK_THROWS_AS(sc.section("nope"), Error);
}

TEST_CASE("reports are byte-identical across runs") {
  namespace fs = std::filesystem;
  fs::path tmp = fs::temp_directory_path() / "logdef_io_test";
  fs::remove_all(tmp);
  for (const char* run : {"a", "b"}) {
    int code = run_cli({"kuranishi", kScenarios + "/fibration_flat.json", "obstructed", "--out", (tmp / run).string()});
    CHECK(code == 1);
  }
  CHECK(slurp(tmp / "a" / "report.json") == slurp(tmp / "b" / "report.json"));
  CHECK(slurp(tmp / "a" / "curves" / "obstruction_integral.csv") ==
        slurp(tmp / "b" / "curves" / "obstruction_integral.csv"));
  auto rep = json::parse(slurp(tmp / "a" / "report.json"));
  CHECK(rep["verdict"] == "obstructed");
  CHECK(run_cli({"check-mc", kScenarios + "/fibration_flat.json", "zero", "--out", (tmp / "c").string()}) == 0);
  CHECK(run_cli({"check-mc", "--bogus"}) == 3);
  fs::remove_all(tmp);
}
