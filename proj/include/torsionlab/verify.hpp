#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tlab {

struct CheckResult {
  std::string name;
  bool passed = false;
  bool warn = false;  // advisory finding, not a failure unless strict
  std::string detail;
  double elapsed_ms = 0.0;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool all_passed(bool strict) const;
  std::string to_json() const;
  std::string to_markdown() const;
};

/// Algebraic and surface-calculus identity suite (delta contraction, dual S_k
/// definitions, cofactor/Euler/divergence-free, Reilly, Green-Beltrami,
/// Parseval, the S_2 surface identity). dimension: 0 runs both 2 and 3.
VerifyReport run_identities(int dimension, std::uint64_t seed);

/// Full acceptance suite: closed-form reproduction, solver validation,
/// expansion constraints, deficit bounds and the ratio analysis, one check
/// per criterion.
VerifyReport run_acceptance(std::uint64_t seed);

}  // namespace tlab
