#include "approx/report.hpp"

#include <algorithm>
#include <cstdio>

namespace approx {

void Report::check(const std::string& name, const Verdict& v) {
  entries_.push_back({name, v.holds ? "pass" : "fail", nullptr, v.witness});
  if (!v.holds) counterexamples_.emplace_back(name, v.witness);
}

void Report::check(const std::string& name, bool ok, const std::string& detail) {
  check(name, ok ? Verdict{true, detail} : Verdict::fail(detail));
}

void Report::info(const std::string& name, nlohmann::ordered_json value,
                  const std::string& detail) {
  entries_.push_back({name, "info", std::move(value), detail});
}

void Report::counterexample(const std::string& verdict, const std::string& text) {
  counterexamples_.emplace_back(verdict, text);
}

const ReportEntry* Report::find(const std::string& name) const {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const ReportEntry& e) { return e.name == name; });
  return it == entries_.end() ? nullptr : &*it;
}

bool Report::failed() const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [](const ReportEntry& e) { return e.status == "fail"; });
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["tool-version"] = kToolVersion;
  j["command"] = command_;
  j["verdicts"] = nlohmann::ordered_json::array();
  for (const auto& e : entries_) {
    nlohmann::ordered_json v;
    v["name"] = e.name;
    v["status"] = e.status;
    if (!e.value.is_null()) v["value"] = e.value;
    if (!e.detail.empty()) v["detail"] = e.detail;
    j["verdicts"].push_back(std::move(v));
  }
  j["counterexamples"] = nlohmann::ordered_json::array();
  for (const auto& [name, text] : counterexamples_)
    j["counterexamples"].push_back({{"verdict", name}, {"witness", text}});
  if (timing_) {
    // Milliseconds with fixed precision keep the text short and comparable.
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", *timing_ * 1000.0);
    j["timing"] = {{"milliseconds", std::stod(buf)}};
  } else {
    j["timing"] = nullptr;
  }
  return j;
}

std::string Report::json_text() const { return to_json().dump(2) + "\n"; }

namespace {

std::string value_text(const nlohmann::ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (const auto& x : v) out += (out.empty() ? "" : ", ") + value_text(x);
    return "[" + out + "]";
  }
  return v.dump();
}

}  // namespace

std::string Report::table_text() const {
  std::size_t w = 7;
  for (const auto& e : entries_) w = std::max(w, e.name.size());
  auto pad = [](std::string s, std::size_t n) {
    s.resize(std::max(s.size(), n), ' ');
    return s;
  };
  std::string out = "approx " + std::string(kToolVersion) + ": " + command_ + "\n";
  out += pad("verdict", w) + "  status  value\n";
  for (const auto& e : entries_) {
    std::string line = pad(e.name, w) + "  " + pad(e.status, 6) + "  " + value_text(e.value);
    if (!e.detail.empty() && e.status != "fail")
      line += (e.value.is_null() ? "" : "  ") + std::string("(") + e.detail + ")";
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  if (!counterexamples_.empty()) {
    out += "counterexamples:\n";
    for (const auto& [name, text] : counterexamples_) out += "  " + name + ": " + text + "\n";
  }
  if (timing_) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "timing: %.3f ms\n", *timing_ * 1000.0);
    out += buf;
  }
  return out;
}

}  // namespace approx
