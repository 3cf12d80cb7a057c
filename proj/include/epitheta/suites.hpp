#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "epitheta/check.hpp"
#include "epitheta/classify.hpp"
#include "epitheta/parallel.hpp"

namespace epitheta {

// Shared knobs of the invariant suites.
struct SuiteContext {
  std::uint64_t seed = 1;
  std::uint64_t samples = 10'000;  // random cases for sampled identities
  std::uint64_t points = 1'000;    // random apartment points
  std::uint64_t budget = 10'000'000;
  int moment_sign = 1;             // -1 flips the sign of the adjoint, for mutation runs
  const Executor* exec = nullptr;
};

// Appends " [label]" to every check name.
Checks tagged(Checks cs, const std::string& label);

Checks numeric_suite(const SuiteContext& ctx);
// Star, pairing and equivariance identities: exhaustive over F_3, sampled over F_5.
Checks moment_suite(const SuiteContext& ctx);
// First-order oscillator identity in dual numbers.
Checks oscillator_suite(const SuiteContext& ctx);
// P against the centralizer oracle for each Lie type over F_5.
Checks rs_oracle_suite(const SuiteContext& ctx);
// Self-duality, symmetry, tensor laws and the dichotomy on random points.
Checks jump_suite(const SuiteContext& ctx);
Checks splitting_suite(const SuiteContext& ctx);
Checks grading_suite(const SuiteContext& ctx);
// verify_theorem on `per_setting` stable instances of every standard setting and on the (E) instances.
Checks corresp_suite(const SuiteContext& ctx, int per_setting = 3);

// One check per row of the table, plus torus stability of each witness family.
Checks classification_checks(const ClassificationTable& t, const SuiteContext& ctx);
// A single pair type decided by rs_pair_exists.
Check classification_row_check(const PairType& type, const RsResult& r, bool expected);

}  // namespace epitheta
