#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>

#include "epitheta/check.hpp"
#include "epitheta/parallel.hpp"

namespace epitheta {

std::uint64_t mix(std::uint64_t x);

// Generator for case i of a run; independent of how cases are split across workers.
inline std::mt19937_64 case_rng(std::uint64_t seed, std::uint64_t salt, std::uint64_t i) {
  return std::mt19937_64(mix(seed * 1000003 + salt) ^ mix(i));
}

// Evaluates body(i) for i < n, keeping the first counterexample in index order.
Check run_cases(std::string name, std::string anchor, std::uint64_t n, const Executor* exec,
                const std::function<std::optional<std::string>(std::uint64_t)>& body);

}  // namespace epitheta
