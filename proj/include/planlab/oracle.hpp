#pragma once

// Forward breadth-first search over world states. Shares nothing with the
// plan-space code beyond the Problem type, so it can check it.

#include <cstddef>
#include <optional>
#include <vector>

#include "planlab/core.hpp"

namespace planlab {

inline constexpr std::size_t kDefaultStateCeiling = 1'000'000;

struct OracleResult {
  // Minimal number of operator applications; nothing if unsolvable.
  std::optional<std::size_t> length;
  std::size_t states = 0;
};

// Throws Error when more than `state_ceiling` states are generated.
OracleResult shortest_solution_length(const Problem& problem, std::size_t state_ceiling = kDefaultStateCeiling);

// Every operator sequence of exactly `length` steps that is executable from
// the initial state and reaches the goals. Library indices.
std::vector<std::vector<std::size_t>> solutions_of_length(const Problem& problem, std::size_t length);

// Executes a sequence; nothing if some operator is inapplicable. Conditional
// effects fire when their dependencies hold in the state before the step.
std::optional<std::vector<bool>> execute(const Problem& problem, const std::vector<std::size_t>& sequence);

}  // namespace planlab
