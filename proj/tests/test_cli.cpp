#include "weilflow/cli.hpp"

#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "test_support.hpp"

using weilflow::testing::data_path;
namespace cli = weilflow::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "weilflow");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json parse(const Outcome& o) { return nlohmann::json::parse(o.out); }

}  // namespace

TEST_CASE("verify passes with exit 0") {
  const auto o = invoke({"verify", "--input", data_path("e5a2.json"), "--alpha", "c=1.6094,w=0.5", "--tol", "1e-8"});
  CHECK(o.code == cli::kExitOk);
  const auto doc = parse(o);
  CHECK(doc["pass"] == true);
  for (const char* key : {"per_j", "zero_sum", "closed_form", "tail_bound"}) CHECK(doc["spectral"].contains(key));
  for (const char* key : {"cells", "total"}) CHECK(doc["geometric"].contains(key));
  CHECK(doc.contains("residuals"));
  CHECK(doc.contains("input"));
  CHECK(doc.contains("ordinary"));
  CHECK_FALSE(doc.contains("wall_time_seconds"));
}

TEST_CASE("invalid Weil polynomial exits 1 with a structured error") {
  const auto o = invoke({"validate", "--input", data_path("bad.json")});
  CHECK(o.code == cli::kExitInputError);
  const auto doc = parse(o);
  CHECK(doc["error"]["kind"] == "RiemannHypothesisViolation");
  CHECK(doc["error"]["stage"] == "validate");
  CHECK(doc["error"]["input"]["weil_poly"] == nlohmann::json::array({1, -5, 5}));
  CHECK_FALSE(doc["error"]["hint"].get<std::string>().empty());
  CHECK(o.err.find("RiemannHypothesisViolation") != std::string::npos);
}

TEST_CASE("other input errors exit 1") {
  CHECK(invoke({"validate", "--input", data_path("notprime.json")}).code == cli::kExitInputError);
  CHECK(invoke({"validate", "--input", data_path("missing.json")}).code == cli::kExitInputError);
  CHECK(invoke({"validate"}).code == cli::kExitInputError);
  CHECK(invoke({"frobnicate"}).code == cli::kExitInputError);
  CHECK(invoke({"verify", "--input", data_path("e5a2.json")}).code == cli::kExitInputError);
  CHECK(invoke({"verify", "--input", data_path("e5a2.json"), "--alpha", "c=0"}).code == cli::kExitInputError);
  CHECK(invoke({"count", "--input", data_path("e5a2.json"), "--max", "0"}).code == cli::kExitInputError);
}

TEST_CASE("ordinarity gate") {
  const auto rejected = invoke({"validate", "--input", data_path("e5a0.json")});
  CHECK(rejected.code == cli::kExitInputError);
  CHECK(parse(rejected)["error"]["kind"] == "NonOrdinary");
  const auto accepted = invoke({"validate", "--input", data_path("e5a0.json"), "--allow-non-ordinary"});
  CHECK(accepted.code == cli::kExitOk);
  CHECK(parse(accepted)["ordinary"]["is_ordinary"] == false);
}

TEST_CASE("orbit table") {
  const auto o = invoke({"orbits", "--input", data_path("e5a2.json"), "--max", "3"});
  REQUIRE(o.code == cli::kExitOk);
  const auto doc = parse(o);
  CHECK(doc["orbits"]["1"]["count"] == "4");
  CHECK(doc["orbits"]["2"]["count"] == "14");
  CHECK(doc["orbits"]["3"]["count"] == "48");
  for (int nu = 1; nu <= 3; ++nu) {
    const double length = std::stod(doc["orbits"][std::to_string(nu)]["length"].dump());
    CHECK(length == doctest::Approx(nu * std::log(5.0)).epsilon(1e-15));
  }
}

TEST_CASE("count table carries N, a and SNF") {
  const auto doc = parse(invoke({"count", "--input", data_path("e5a2.json"), "--max", "4"}));
  CHECK(doc["N"]["4"] == "640");
  CHECK(doc["a"]["4"] == "152");
  CHECK(doc["snf"]["2"] == nlohmann::json::array({"2", "16"}));
}

TEST_CASE("zeta reports exact P_j as strings") {
  const auto doc = parse(invoke({"zeta", "--input", data_path("e5_surface.json")}));
  CHECK(doc["P"][4] == nlohmann::json::array({"1", "-25"}));
  CHECK(doc["P"][3] == nlohmann::json::array({"1", "-30", "450", "-3750", "15625"}));
  CHECK(doc["products_by_j"][2].size() == 6);
}

TEST_CASE("spectrum window") {
  const auto doc = parse(invoke({"spectrum", "--input", data_path("e5a2.json"), "--window", "4"}));
  CHECK(doc["per_j"][0]["zeros"].size() == 3);
}

TEST_CASE("serial output is byte-stable") {
  const std::vector<std::vector<std::string>> commands{
      {"validate", "--input", data_path("e5_surface.json")},
      {"zeta", "--input", data_path("e5_surface.json")},
      {"count", "--input", data_path("e5a2.json"), "--format", "csv"},
      {"spectrum", "--input", data_path("e5a2.json"), "--format", "text"},
      {"verify", "--input", data_path("e5a2.json"), "--alpha", "c=1,w=0.8", "--alpha", "c=-2,w=0.5,A=3"}};
  for (const auto& cmd : commands) {
    const auto first = invoke(cmd);
    const auto second = invoke(cmd);
    CHECK(first.code == cli::kExitOk);
    CHECK(first.out == second.out);
    CHECK_FALSE(first.out.empty());
  }
}

TEST_CASE("floats use round-trip scientific notation") {
  const auto o = invoke({"orbits", "--input", data_path("e5a2.json"), "--max", "1"});
  CHECK(o.out.find("1.6094379124341003e+00") != std::string::npos);
}

TEST_CASE("timing is opt-in") {
  const auto doc = parse(invoke({"verify", "--input", data_path("e5a2.json"), "--alpha", "c=1.6094,w=0.5", "--timing"}));
  CHECK(doc.contains("wall_time_seconds"));
}
