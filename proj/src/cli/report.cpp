#include <sstream>

#include "epitheta/cli.hpp"

namespace epitheta::cli {

using nlohmann::json;

bool Report::pass() const { return failures() == 0; }

std::uint64_t Report::failures() const {
  std::uint64_t n = 0;
  for (const auto& s : sections)
    for (const auto& c : s.checks) n += !c.pass;
  return n;
}

json Report::to_json() const {
  json j;
  j["command"] = command;
  j["config"] = config;
  j["summary"] = summary;
  j["tables"] = json::array();
  for (const auto& t : tables) j["tables"].push_back({{"title", t.title}, {"columns", t.columns}, {"rows", t.rows}});
  j["sections"] = json::array();
  std::uint64_t total = 0;
  for (const auto& s : sections) {
    json cs = json::array();
    for (const auto& c : s.checks) {
      cs.push_back({{"name", c.name},
                    {"anchor", c.anchor},
                    {"status", c.pass ? "pass" : "fail"},
                    {"cases", c.cases},
                    {"witness", c.witness},
                    {"note", c.note}});
      ++total;
    }
    j["sections"].push_back({{"name", s.name}, {"checks", cs}, {"pass", all_pass(s.checks)}});
  }
  j["verdict"] = {{"status", pass() ? "pass" : "fail"}, {"checks", total}, {"failures", failures()}};
  return j;
}

std::string Report::json_text() const { return to_json().dump(2) + "\n"; }

namespace {

std::string cell(std::string s) {
  std::string out;
  for (char ch : s) {
    if (ch == '|') out += "\\|";
    else if (ch == '\n') out += "<br>";
    else out += ch;
  }
  return out;
}

void table(std::ostringstream& os, const std::vector<std::string>& cols, const std::vector<std::vector<std::string>>& rows) {
  os << "|";
  for (const auto& c : cols) os << " " << cell(c) << " |";
  os << "\n|";
  for (std::size_t i = 0; i < cols.size(); ++i) os << "---|";
  os << "\n";
  for (const auto& r : rows) {
    os << "|";
    for (const auto& c : r) os << " " << cell(c) << " |";
    os << "\n";
  }
  os << "\n";
}

}  // namespace

std::string Report::markdown() const {
  std::ostringstream os;
  os << "# epitheta " << command << "\n\n";
  os << "**Verdict:** " << (pass() ? "pass" : "fail") << " (" << failures() << " failed checks)\n\n";
  if (!config.empty()) {
    os << "## Configuration\n\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& [k, v] : config) rows.push_back({k, v});
    table(os, {"key", "value"}, rows);
  }
  if (!summary.empty()) {
    os << "## Summary\n\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& [k, v] : summary) rows.push_back({k, v});
    table(os, {"quantity", "value"}, rows);
  }
  for (const auto& t : tables) {
    os << "## " << t.title << "\n\n";
    table(os, t.columns, t.rows);
  }
  for (const auto& s : sections) {
    os << "## " << s.name << "\n\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : s.checks)
      rows.push_back({c.pass ? "pass" : "FAIL", c.name, c.anchor, std::to_string(c.cases), c.witness, c.note});
    table(os, {"status", "check", "anchor", "cases", "witness", "note"}, rows);
  }
  return os.str();
}

}  // namespace epitheta::cli
