#pragma once

#include "approx/ideal_theory.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace approx {

inline constexpr const char* kToolVersion = "0.1.0";

/// One line of a report. `status` is "pass" or "fail" for checks and
/// "info" for computed values.
struct ReportEntry {
  std::string name;
  std::string status;
  nlohmann::ordered_json value;  // null when absent
  std::string detail;
};

/// Output document of every command: {tool-version, command, verdicts[],
/// counterexamples[], timing}. Field order is fixed so that output is
/// byte-stable for fixed inputs.
class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  void check(const std::string& name, const Verdict& v);
  void check(const std::string& name, bool ok, const std::string& detail = {});
  void info(const std::string& name, nlohmann::ordered_json value, const std::string& detail = {});
  void counterexample(const std::string& verdict, const std::string& text);
  void set_timing(double seconds) { timing_ = seconds; }

  const std::string& command() const { return command_; }
  const std::vector<ReportEntry>& entries() const { return entries_; }
  const ReportEntry* find(const std::string& name) const;
  /// Some check failed.
  bool failed() const;

  nlohmann::ordered_json to_json() const;
  std::string json_text() const;
  std::string table_text() const;

 private:
  std::string command_;
  std::vector<ReportEntry> entries_;
  std::vector<std::pair<std::string, std::string>> counterexamples_;
  std::optional<double> timing_;
};

}  // namespace approx
