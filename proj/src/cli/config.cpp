#include <algorithm>
#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <fstream>
#include <sstream>

#include "epitheta/cli.hpp"

namespace epitheta::cli {

namespace pt = boost::property_tree;

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

Config Config::parse(const std::string& text, const std::string& origin) {
  Config c;
  c.origin_ = origin;
  std::istringstream in(text);
  try {
    pt::ini_parser::read_ini(in, c.tree_);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(origin + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  std::istringstream lines(text);
  std::string line, section;
  for (int no = 1; std::getline(lines, line); ++no) {
    boost::trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = boost::trim_copy(line.substr(1, line.size() - 2));
      c.lines_.emplace("[" + section + "]", no);
    } else if (auto eq = line.find('='); eq != std::string::npos) {
      c.lines_.emplace(section + "." + boost::trim_copy(line.substr(0, eq)), no);
    }
  }
  return c;
}

void Config::error(const std::string& section, const std::string& key, const std::string& what) const {
  std::string where = origin_.empty() ? "<config>" : origin_;
  std::string name = key.empty() ? "[" + section + "]" : section.empty() ? key : section + "." + key;
  auto it = lines_.find(key.empty() ? name : section + "." + key);
  if (it != lines_.end()) where += ":" + std::to_string(it->second);
  throw ConfigError(where + ": " + name + ": " + what);
}

bool Config::has(const std::string& section, const std::string& key) const { return get(section, key).has_value(); }

std::optional<std::string> Config::get(const std::string& section, const std::string& key) const {
  auto s = tree_.get_child_optional(pt::ptree::path_type(section, '\0'));
  if (!s) return std::nullopt;
  auto v = s->get_child_optional(pt::ptree::path_type(key, '\0'));
  if (!v) return std::nullopt;
  return boost::trim_copy(v->data());
}

std::string Config::get_string(const std::string& section, const std::string& key, const std::string& def) const {
  return get(section, key).value_or(def);
}

std::string Config::get_choice(const std::string& section, const std::string& key, const std::string& def,
                               const std::vector<std::string>& allowed) const {
  std::string v = get_string(section, key, def);
  if (std::find(allowed.begin(), allowed.end(), v) == allowed.end())
    error(section, key, "'" + v + "' is not one of " + boost::join(allowed, ", "));
  return v;
}

std::int64_t Config::get_int(const std::string& section, const std::string& key, std::int64_t def, std::int64_t lo,
                             std::int64_t hi) const {
  auto v = get(section, key);
  if (!v) return def;
  std::int64_t x = 0;
  std::size_t used = 0;
  try {
    x = std::stoll(*v, &used);
  } catch (const std::exception&) {
    error(section, key, "'" + *v + "' is not an integer");
  }
  if (used != v->size()) error(section, key, "'" + *v + "' is not an integer");
  if (x < lo || x > hi) error(section, key, std::to_string(x) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return x;
}

std::vector<Rational> Config::get_rationals(const std::string& section, const std::string& key) const {
  std::vector<Rational> out;
  auto v = get(section, key);
  if (!v) return out;
  std::vector<std::string> parts;
  boost::split(parts, *v, boost::is_any_of(" \t,"), boost::token_compress_on);
  for (const auto& p : parts) {
    if (p.empty()) continue;
    try {
      out.push_back(Rational::parse(p));
    } catch (const std::exception& e) {
      error(section, key, e.what());
    }
  }
  return out;
}

std::vector<std::vector<std::int64_t>> Config::get_matrix(const std::string& section, const std::string& key) const {
  std::vector<std::vector<std::int64_t>> out;
  auto v = get(section, key);
  if (!v) return out;
  std::vector<std::string> rows;
  boost::split(rows, *v, boost::is_any_of(";"));
  for (auto r : rows) {
    boost::trim(r);
    std::vector<std::string> cells;
    boost::split(cells, r, boost::is_any_of(" \t,"), boost::token_compress_on);
    std::vector<std::int64_t> row;
    for (const auto& c : cells) {
      if (c.empty()) continue;
      std::size_t used = 0;
      try {
        row.push_back(std::stoll(c, &used));
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != c.size()) error(section, key, "'" + c + "' is not an integer");
    }
    out.push_back(std::move(row));
  }
  for (const auto& r : out)
    if (r.size() != out.front().size() || r.empty()) error(section, key, "rows must be nonempty and of equal length");
  return out;
}

void Config::validate(const std::map<std::string, std::set<std::string>>& schema) const {
  for (const auto& [section, body] : tree_) {
    if (lines_.count("." + section)) error("", section, "key outside of any section");
    auto s = schema.find(section);
    if (s == schema.end()) error(section, "", "unknown section");
    for (const auto& [key, value] : body)
      if (!s->second.count(key)) error(section, key, "unknown key");
  }
}

std::map<std::string, std::string> Config::echo() const {
  std::map<std::string, std::string> out;
  for (const auto& [section, body] : tree_)
    for (const auto& [key, value] : body) out[section + "." + key] = boost::trim_copy(value.data());
  return out;
}

}  // namespace epitheta::cli
