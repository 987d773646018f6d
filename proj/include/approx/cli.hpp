#pragma once

#include "approx/report.hpp"

#include <json.hpp>

#include <exception>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace approx::cli {

/// A command with its options, independent of how they were supplied
/// (argv or a scenario file). Option names carry no dashes; flags hold
/// "true".
struct Invocation {
  std::string command;
  std::map<std::string, std::vector<std::string>> options;

  bool has(const std::string& name) const { return options.count(name) != 0; }
  /// Command and options in the command's declared option order.
  std::string text() const;
};

struct OptionInfo {
  std::string name;
  std::string help;
  bool flag = false;
  bool multi = false;
};
struct CommandInfo {
  std::string name;
  std::string help;
  std::vector<OptionInfo> options;
};
/// Every subcommand with its options, in help order.
const std::vector<CommandInfo>& commands();
/// Options every subcommand accepts: format, timing, serial.
const std::vector<OptionInfo>& global_options();

/// Runs one command. Library errors propagate; an unknown command or option
/// is PreconditionError("usage").
Report execute(const Invocation& inv);

/// A named command run with an optional expected outcome:
/// {"verdicts": {name: "pass"|"fail"|"info"}, "values": {name: value}}.
struct Scenario {
  std::string name;
  std::string ring;
  std::string closure;
  std::string operation;
  std::map<std::string, std::vector<std::string>> parameters;
  nlohmann::ordered_json expected;  // null when absent

  Invocation invocation() const;
  nlohmann::ordered_json to_json() const;
  /// ParseError on a malformed entry.
  static Scenario from_json(const nlohmann::ordered_json& j);
};

struct Suite {
  std::string name;
  std::vector<Scenario> scenarios;
  /// Entries that failed to parse: (name or #index, message).
  std::vector<std::pair<std::string, std::string>> errors;

  /// ParseError when the document itself is not a suite.
  static Suite parse(std::string_view text);
  nlohmann::ordered_json to_json() const;
};

struct ScenarioOutcome {
  std::string name;
  bool pass = false;
  std::vector<std::string> diff;  // expectation mismatches or the error
};
/// Outcomes sorted by scenario name, parse errors included as failures.
std::vector<ScenarioOutcome> run_suite(const Suite& suite, bool parallel = true);
Report suite_report(const Suite& suite, const std::string& command, bool parallel = true);

/// Text of a bundled suite ("paper-examples"); PreconditionError otherwise.
std::string_view bundled_suite(std::string_view name);

/// 0 success, 1 failed check, 2 usage or precondition error, 3 resource guard.
int exit_code(const std::exception& e);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace approx::cli
