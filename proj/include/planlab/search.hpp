#pragma once

// Search strategies over an extension generator. A run is sequential and
// owns its RNG; counters are the measurement.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "planlab/planners.hpp"
#include "planlab/rng.hpp"

namespace planlab {

enum class Strategy { bfs, dfs, isamp, ibroad };
enum class Heuristic { none, min_goals_rank, min_goals_prune, min_goals_weighted };

const char* to_string(Strategy s);
const char* to_string(Heuristic h);
std::optional<Strategy> parse_strategy(std::string_view s);
std::optional<Heuristic> parse_heuristic(std::string_view s);

inline constexpr std::size_t kDefaultMaxIterations = 100000;

struct StrategyConfig {
  Strategy strategy = Strategy::dfs;
  int depth_limit = 0;
  std::size_t max_iterations = kDefaultMaxIterations;
  Heuristic heuristic = Heuristic::none;
  std::uint64_t seed = 0;
  int trials = 1;
  // Visited-node budget per run; 0 disables it.
  std::size_t node_budget = 0;
};

struct SearchOutcome {
  bool solved = false;
  std::optional<OpenPlan> solution;
  // Nodes goal-tested, including the root.
  std::size_t nodes_expanded = 0;
  // Nodes where a descent stopped: solutions, dead ends, depth-limit nodes.
  std::size_t leaves_visited = 0;
  // Expanded nodes without children.
  std::size_t dead_ends = 0;
  std::vector<std::size_t> per_level_counts;
  std::chrono::nanoseconds wall_time{0};
  std::uint64_t seed = 0;
  // Root-to-leaf probes (isamp) or breadth passes (ibroad).
  std::size_t iterations = 0;
  // isamp ran out of iterations, or a budget was hit, before a solution.
  bool gave_up = false;
};

// Size of the plan's goal set under the generator's semantics.
std::size_t min_goals_rating(const OpenPlan& plan);

// Child visiting order: a seeded shuffle, then the heuristic. Rank sorts
// stably by rating, prune keeps the minimum-rated children, weighted draws
// an order with probability proportional to 1/(1+rating).
std::vector<std::size_t> rank_children(const std::vector<OpenPlan>& children, Heuristic heuristic, Rng& rng);

SearchOutcome bfs(const Generator& gen, const StrategyConfig& cfg);
SearchOutcome dfs(const Generator& gen, const StrategyConfig& cfg);
SearchOutcome iterative_sampling(const Generator& gen, const StrategyConfig& cfg);
SearchOutcome iterative_broadening(const Generator& gen, const StrategyConfig& cfg);
SearchOutcome run_search(const Generator& gen, const StrategyConfig& cfg);

// Runs cfg.trials searches with seeds cfg.seed + trial.
std::vector<SearchOutcome> run_trials(const Generator& gen, const StrategyConfig& cfg);

// Leaves tested until the first of k solutions among n leaves is found,
// averaged over `runs`. Without replacement the leaves are tested in a
// random order; with replacement each test draws a fresh leaf.
double mean_leaf_tests(std::size_t n_leaves, std::size_t k_solutions, std::size_t runs, std::uint64_t seed,
                       bool with_replacement = false);

}  // namespace planlab
