#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

#include "epitheta/check.hpp"
#include "epitheta/parallel.hpp"
#include "epitheta/rational.hpp"

namespace epitheta::cli {

// Invalid configuration; the message names the file, line and key when known.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat INI file: `[section]` headers and `key = value` lines, `#` or `;` comments.
class Config {
 public:
  Config() = default;
  static Config load(const std::string& path);
  static Config parse(const std::string& text, const std::string& origin = "<config>");

  bool has(const std::string& section, const std::string& key) const;
  std::optional<std::string> get(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key, const std::string& def) const;
  std::string get_choice(const std::string& section, const std::string& key, const std::string& def,
                         const std::vector<std::string>& allowed) const;
  std::int64_t get_int(const std::string& section, const std::string& key, std::int64_t def, std::int64_t lo,
                       std::int64_t hi) const;
  std::vector<Rational> get_rationals(const std::string& section, const std::string& key) const;
  // Whitespace-separated integers, rows separated by ';'.
  std::vector<std::vector<std::int64_t>> get_matrix(const std::string& section, const std::string& key) const;

  // Rejects sections and keys outside `schema` (section -> allowed keys).
  void validate(const std::map<std::string, std::set<std::string>>& schema) const;
  // section.key -> raw value, for the report.
  std::map<std::string, std::string> echo() const;

  [[noreturn]] void error(const std::string& section, const std::string& key, const std::string& what) const;

 private:
  boost::property_tree::ptree tree_;
  std::string origin_;
  std::map<std::string, int> lines_;  // "section.key" or "[section]" -> line
};

struct Table {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Section {
  std::string name;
  Checks checks;
};

struct Report {
  std::string command;
  std::map<std::string, std::string> config;    // effective settings
  std::map<std::string, std::string> summary;   // command-specific scalars
  std::vector<Table> tables;
  std::vector<Section> sections;

  bool pass() const;
  std::uint64_t failures() const;
  nlohmann::json to_json() const;
  std::string json_text() const;  // canonical: sorted keys, fixed indentation
  std::string markdown() const;
};

// Overrides given on the command line; they take precedence over the config file.
struct Overrides {
  std::optional<std::uint64_t> seed, budget;
  std::optional<int> max_rank;
};

enum ExitCode { exit_pass = 0, exit_fail = 1, exit_config = 2 };

const std::vector<std::string>& commands();
// Runs one command. Throws ConfigError on invalid configuration.
Report run(const std::string& command, const Config& cfg, const Overrides& ov, const Executor& exec);

}  // namespace epitheta::cli
