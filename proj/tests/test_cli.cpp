#include <doctest.h>

#include "approx/cli.hpp"
#include "approx/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

using namespace approx;
using namespace approx::cli;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run_args(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

nlohmann::json value_of(const nlohmann::json& doc, const std::string& name) {
  for (const auto& v : doc["verdicts"])
    if (v["name"] == name) return v.value("value", nlohmann::json());
  return nullptr;
}

}  // namespace

TEST_CASE("spec, vset and axioms examples") {
  auto spec = run_args({"spec", "--ring", "Z", "--closure", "shift:J=30", "--format", "json"});
  CHECK(spec.code == 0);
  CHECK(value_of(json_of(spec), "spectrum") == nlohmann::json({"(2)", "(3)", "(5)"}));

  auto vset = run_args({"vset", "--ring", "Z", "--closure", "shift:J=30", "--ideal", "12",
                        "--format", "json"});
  CHECK(vset.code == 0);
  CHECK(value_of(json_of(vset), "vset") == nlohmann::json({"(2)", "(3)"}));

  auto ax = run_args({"axioms", "--ring", "Zn:12", "--closure", "shift:J=4", "--mode",
                      "exhaustive", "--format", "json"});
  CHECK(ax.code == 0);
  auto doc = json_of(ax);
  int checks = 0;
  for (const auto& v : doc["verdicts"])
    if (v["status"] != "info") {
      CHECK(v["status"] == "pass");
      ++checks;
    }
  CHECK(checks == 6);
  CHECK(doc["counterexamples"].empty());
}

TEST_CASE("report schema and byte stability") {
  std::vector<std::string> args{"topology", "--ring", "Zn:12", "--closure", "shift:J=4",
                                "--format", "json"};
  auto a = run_args(args), b = run_args(args);
  CHECK(a.out == b.out);
  auto serial = args;
  serial.push_back("--serial");
  CHECK(run_args(serial).out == a.out);

  auto doc = nlohmann::ordered_json::parse(a.out);
  std::vector<std::string> keys;
  for (const auto& [k, v] : doc.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"tool-version", "command", "verdicts",
                                         "counterexamples", "timing"});
  CHECK(doc["timing"].is_null());
  CHECK(doc["command"] == "topology --ring Zn:12 --closure shift:J=4");

  args.push_back("--timing");
  auto timed = json_of(run_args(args));
  CHECK(timed["timing"].contains("milliseconds"));
}

TEST_CASE("exit codes") {
  auto parse = run_args({"spec", "--ring", "Zq:3"});
  CHECK(parse.code == 2);
  CHECK(parse.err.find("position") != std::string::npos);
  CHECK(run_args({"spec", "--ring", "Z", "--closure", "shift:K=3"}).code == 2);
  CHECK(run_args({"is-prime", "--ring", "Zn:12", "--ideal", "1"}).code == 2);
  CHECK(run_args({"spec", "--ring", "Z", "--nonsense", "1"}).code == 2);
  CHECK(run_args({}).code == 2);
  CHECK(run_args({"--help"}).code == 0);

  auto guard = run_args({"axioms", "--ring", "Zn:64", "--mode", "exhaustive"});
  CHECK(guard.code == 3);

  auto fail = run_args({"axioms", "--ring", "Zn:6", "--closure", "shift:J=2", "--sum",
                        "minkowski", "--format", "json"});
  CHECK(fail.code == 1);
  auto doc = json_of(fail);
  REQUIRE(doc["counterexamples"].size() == 1);
  CHECK(doc["counterexamples"][0]["verdict"] == "C4a");
  CHECK(value_of(doc, "C4a-replays").is_null());
}

TEST_CASE("execute rejects options a command does not take") {
  Invocation inv{"spec", {{"ring", {"Z"}}, {"mult-set", {"2"}}}};
  CHECK_THROWS_AS(execute(inv), PreconditionError);
  Invocation unknown{"frobnicate", {}};
  CHECK_THROWS_AS(execute(unknown), PreconditionError);
}

TEST_CASE("scenarios round-trip through JSON") {
  auto suite = Suite::parse(bundled_suite("paper-examples"));
  CHECK(suite.errors.empty());
  CHECK(suite.scenarios.size() >= 5);
  for (const auto& s : suite.scenarios) {
    auto back = Scenario::from_json(s.to_json());
    CHECK(back.to_json() == s.to_json());
    CHECK(back.invocation().text() == s.invocation().text());
  }
  auto again = Suite::parse(suite.to_json().dump());
  CHECK(again.to_json() == suite.to_json());

  Scenario multi{"p", "Z", "shift:J=30", "product", {{"ideal", {"2", "3"}}}, nullptr};
  CHECK(Scenario::from_json(multi.to_json()).parameters == multi.parameters);
}

TEST_CASE("bundled worked examples all pass") {
  auto r = run_args({"scenario", "--format", "json"});
  CHECK(r.code == 0);
  auto doc = json_of(r);
  std::vector<std::string> names;
  for (const auto& v : doc["verdicts"])
    if (v["status"] != "info") {
      CHECK(v["status"] == "pass");
      names.push_back(v["name"]);
    }
  CHECK(std::is_sorted(names.begin(), names.end()));
  for (const char* want : {"scenario:gray-pixel", "scenario:noisy-codeword",
                           "scenario:example-vd-prime-divisor", "scenario:spec-z-modular",
                           "scenario:rad-nil-z-modular"})
    CHECK(std::find(names.begin(), names.end(), want) != names.end());
}

TEST_CASE("empty suite, wrong expectation and isolated parse errors") {
  auto empty = suite_report(Suite::parse(R"({"scenarios": []})"), "scenario");
  CHECK_FALSE(empty.failed());
  CHECK(empty.find("scenarios")->value == 0);

  auto wrong = Suite::parse(R"js({"scenarios": [
    {"name": "b-wrong", "ring": "Z", "closure": "shift:J=30", "operation": "spec",
     "expected": {"values": {"spectrum": ["(2)", "(7)"]}}},
    {"name": "a-right", "ring": "Z", "closure": "shift:J=30", "operation": "spec",
     "expected": {"values": {"spectrum": ["(2)", "(3)", "(5)"]}}},
    {"name": "c-broken", "operation": 3}
  ]})js");
  CHECK(wrong.scenarios.size() == 2);
  CHECK(wrong.errors.size() == 1);
  auto outcomes = run_suite(wrong, false);
  REQUIRE(outcomes.size() == 3);
  CHECK(outcomes[0].name == "a-right");
  CHECK(outcomes[0].pass);
  CHECK(outcomes[1].name == "b-wrong");
  CHECK_FALSE(outcomes[1].pass);
  REQUIRE(outcomes[1].diff.size() == 1);
  CHECK(outcomes[1].diff[0] == R"s(spectrum: expected ["(2)","(7)"], got ["(2)","(3)","(5)"])s");
  CHECK(outcomes[2].name == "c-broken");
  CHECK_FALSE(outcomes[2].pass);

  auto rep = suite_report(wrong, "scenario");
  CHECK(rep.failed());
  CHECK_THROWS_AS(Suite::parse("{"), ParseError);
  CHECK_THROWS_AS(bundled_suite("nope"), PreconditionError);
}

TEST_CASE("scenario runs agree serially and in parallel") {
  auto suite = Suite::parse(bundled_suite("paper-examples"));
  CHECK(suite_report(suite, "s", false).json_text() == suite_report(suite, "s", true).json_text());
}
