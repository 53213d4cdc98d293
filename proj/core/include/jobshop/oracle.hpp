#pragma once

#include <cstdint>
#include <stdexcept>

#include "jobshop/schedule.hpp"

namespace jobshop {

// Ground truth used by the test suites and the `oracle` CLI command. Nothing
// here shares code with the evaluation path it checks.

struct OracleResult {
  Time optimal_makespan = 0;
  /// Complete active schedules reached by the enumeration.
  std::int64_t explored = 0;
  Solution optimal_solution;
};

class TooLargeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact optimum by depth-first Giffler-Thompson branching over every
/// conflict set (the active schedules always contain a makespan optimum).
/// Branches whose partial makespan already reaches the incumbent are cut.
/// Throws TooLargeError above `limit` operations.
OracleResult brute_force_optimum(const Instance& instance, int limit = 12);

/// Makespan by repeated arc relaxation until a fixed point. Throws
/// CycleError if relaxation is still changing after |ops| rounds.
Time reference_evaluate(const Instance& instance, const Solution& solution);

}  // namespace jobshop
