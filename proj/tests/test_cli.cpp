#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cexpde_cli/cli.hpp"
#include "cexpde_cli/corpus.hpp"
#include "cexpde_cli/json_writer.hpp"
#include "support/oracles.hpp"

#ifndef CEXPDE_BUNDLED_CORPUS
#error "CEXPDE_BUNDLED_CORPUS must point at data/corpus/bundled.json"
#endif

using namespace cexpde::cli;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / ("cexpde_test_" + name);
  std::ofstream(path) << contents;
  return path;
}

}  // namespace

TEST_CASE("classify reports") {
  const Run ma = run({"classify", "--pde", "u11*u22-u12^2-1", "--n", "2"});
  CHECK(ma.code == 0);
  const json r = json::parse(ma.out);
  CHECK(r["overall"] == "completely exceptional (Monge–Ampère)");
  CHECK(r["monge_ampere"]["classification"] == "monge-ampere");
  CHECK(r["exceptionality"]["verdict"] == "exceptional");
  CHECK(r["consistent"] == true);
  CHECK_FALSE(r.contains("duration_seconds"));

  const Run sq = run({"classify", "--pde", "u11^2-u22", "--n", "2"});
  CHECK(sq.code == 0);
  const json sqr = json::parse(sq.out);
  CHECK(sqr["overall"] == "not exceptional");
  // F = u11^2 - u22: S = 2 u11 xi1^2 - xi2^2 and S^2 = 2 xi1^4 everywhere.
  const json& fail = sqr["exceptionality"]["first_failure"];
  const double u11 = fail["point"]["hessian"][0];
  CHECK(fail["symbol"]["coefficients"]["2,0"].get<double>() == doctest::Approx(2.0 * u11));
  CHECK(fail["symbol"]["coefficients"]["0,2"] == -1.0);
  CHECK(fail["second_symbol"]["degree"] == 4);
  CHECK(fail["second_symbol"]["coefficients"]["4,0"] == 2.0);
  CHECK(fail["second_symbol"]["coefficients"]["2,2"] == 0.0);

  const Run three = run({"classify", "--pde", "u11*u22 - u12^2 + u33", "--n", "3", "--samples", "16"});
  CHECK(three.code == 0);
  const json t = json::parse(three.out);
  CHECK(t["characteristics"].is_null());
  CHECK(t["monge_ampere"]["basis"].size() == 14);
  CHECK(t["overall"] == "completely exceptional (Monge–Ampère)");

  // Reducible locus {u11 = 0} u {u22 u33 - u23^2 = 0}: each component is
  // Monge-Ampere, so divisibility holds, but F is not a minor combination.
  const Run product = run({"classify", "--pde", "u11*(u22*u33 - u23^2)", "--n", "3", "--samples", "16"});
  CHECK(product.code == 3);
  CHECK(json::parse(product.out)["overall"] == "criterion disagreement");
}

TEST_CASE("classify flags") {
  const Run pretty = run({"classify", "--pde", "u11-u22", "--n", "2", "--pretty", "--samples", "8"});
  CHECK(pretty.code == 0);
  CHECK(pretty.out.find("\n  \"box\"") != std::string::npos);
  const Run box = run({"classify", "--pde", "u11-u22", "--n", "2", "--box", "-1:1", "--seed", "7", "--tol", "1e-8"});
  CHECK(box.code == 0);
  const json b = json::parse(box.out);
  CHECK(b["box"]["lo"] == -1.0);
  CHECK(b["seed"] == 7);
  CHECK(b["tolerance"] == 1e-8);
  CHECK(run({"classify", "--pde", "u11-u22", "--n", "2", "--timing"}).out.find("duration_seconds") != std::string::npos);
  CHECK(run({"classify", "--pde", "u11", "--n", "2", "--json", "--pretty"}).code == 1);
  CHECK(run({"classify", "--pde", "u11", "--n", "2", "--box", "3:1"}).code == 1);
  CHECK(run({"classify", "--pde", "u11", "--n", "2", "--box", "a:b"}).code == 1);
  CHECK(run({"classify", "--pde", "u11"}).code == 1);
  CHECK(run({"bogus"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"--help"}).code == 0);

  const auto path = std::filesystem::temp_directory_path() / "cexpde_test_report.json";
  std::filesystem::remove(path);
  const Run to_file = run({"classify", "--pde", "u11-u22", "--n", "2", "--out", path.string()});
  CHECK(to_file.code == 0);
  CHECK(to_file.out.empty());
  std::ifstream in(path);
  CHECK(json::parse(in)["overall"] == "completely exceptional (Monge–Ampère)");
}

TEST_CASE("parse errors show a caret") {
  const Run bad = run({"classify", "--pde", "u11+*u22", "--n", "2"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("offset 4") != std::string::npos);
  CHECK(bad.err.find("\n  u11+*u22\n      ^\n") != std::string::npos);
  CHECK(run({"classify", "--pde", "u21", "--n", "2"}).code == 1);
  CHECK(run({"classify", "--pde", "u13", "--n", "2"}).code == 1);
}

TEST_CASE("unsampleable locus is inconclusive") {
  const Run r = run({"classify", "--pde", "u11^2 + u22^2 + 1", "--n", "2"});
  CHECK(r.code == 2);
  const json j = json::parse(r.out);
  CHECK(j["overall"] == "inconclusive");
  CHECK(j["exceptionality"].is_null());
  CHECK(j["errors"].size() == 1);
}

TEST_CASE("bundled corpus") {
  const Run a = run({"corpus", "--file", CEXPDE_BUNDLED_CORPUS, "--seed", "42"});
  CHECK(a.code == 0);
  CHECK(a.err.empty());
  const Run b = run({"corpus", "--file", CEXPDE_BUNDLED_CORPUS, "--seed", "42"});
  CHECK(a.out == b.out);
  const json j = json::parse(a.out);
  CHECK(j["summary"]["matched"] == 10);
  CHECK(run({"corpus", "--file", CEXPDE_BUNDLED_CORPUS, "--seed", "3"}).code == 0);

  // The bundled file and the test corpus list describe the same entries.
  const auto entries = load_corpus(CEXPDE_BUNDLED_CORPUS);
  const auto& expected = cexpde::testing::corpus();
  REQUIRE(entries.size() == expected.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    CHECK(entries[i].name == expected[i].name);
    CHECK(entries[i].expression == expected[i].expression);
    CHECK(entries[i].expected_classification == expected[i].classification);
    CHECK(entries[i].expected_exceptional == expected[i].exceptional);
  }
}

TEST_CASE("corpus mismatches and schema violations") {
  const auto wrong = temp_file("wrong.json", R"([
    {"name": "wave", "n": 2, "expression": "u11 - u22", "expected_classification": "linear", "expected_exceptional": true},
    {"name": "square", "n": 2, "expression": "u11^2 - u22", "expected_classification": "monge-ampere", "expected_exceptional": true}
  ])");
  const Run r = run({"corpus", "--file", wrong.string()});
  CHECK(r.code == 4);
  CHECK(r.err.find("square: classification: expected monge-ampere, got non-ma") != std::string::npos);
  CHECK(r.err.find("square: exceptional: expected true, got false") != std::string::npos);
  CHECK(r.err.find("wave") == std::string::npos);

  CHECK(run({"corpus", "--file", temp_file("empty.json", "[]").string()}).code == 1);
  CHECK(run({"corpus", "--file", "/nonexistent/corpus.json"}).code == 1);
  CHECK(run({"corpus", "--file", temp_file("garbage.json", "{not json").string()}).code == 1);
  CHECK(run({"corpus", "--file", temp_file("dup.json", R"([
    {"name": "a", "n": 2, "expression": "u11", "expected_classification": "linear", "expected_exceptional": true},
    {"name": "a", "n": 2, "expression": "u22", "expected_classification": "linear", "expected_exceptional": true}
  ])").string()}).code == 1);
  CHECK(run({"corpus", "--file", temp_file("badexpr.json", R"([
    {"name": "a", "n": 2, "expression": "u21", "expected_classification": "linear", "expected_exceptional": true}
  ])").string()}).code == 1);
  CHECK(run({"corpus", "--file", temp_file("badclass.json", R"([
    {"name": "a", "n": 2, "expression": "u11", "expected_classification": "elliptic", "expected_exceptional": true}
  ])").string()}).code == 1);
}

TEST_CASE("canonical JSON writer") {
  const json j = {{"b", 0.1}, {"a", {1, 2.5, nullptr}}, {"c", {{"z", true}, {"y", "s"}}}, {"d", 1e300 * 1e300}};
  CHECK(write_json(j) == R"({"a":[1,2.5,null],"b":0.10000000000000001,"c":{"y":"s","z":true},"d":null})");
  CHECK(write_json(json::object()) == "{}");
  CHECK(write_json(json::array(), 2) == "[]");
  CHECK(write_json({{"k", 1}}, 2) == "{\n  \"k\": 1\n}");
  CHECK(json::parse(write_json(j))["b"].get<double>() == 0.1);
}
