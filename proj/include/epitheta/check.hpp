#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace epitheta {

// Outcome of one verified property.
struct Check {
  std::string name;
  std::string anchor;  // the identity being checked, in formula form
  bool pass = true;
  std::uint64_t cases = 0;
  std::string witness;  // counterexample on failure, evidence on success
  std::string note;

  void fail(std::string w) {
    if (pass) witness = std::move(w);
    pass = false;
  }
};

using Checks = std::vector<Check>;

inline bool all_pass(const Checks& cs) {
  for (const auto& c : cs)
    if (!c.pass) return false;
  return true;
}

}  // namespace epitheta
