#pragma once

// Experiment matrix: problems x planners x strategies x heuristics x trials,
// one CSV row per cell plus per-class means.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "planlab/correspondence.hpp"
#include "planlab/domains.hpp"
#include "planlab/search.hpp"

namespace planlab {

struct ExperimentConfig {
  // "suite:<seed file>", "fixture:<name>", "d1s1:<i,j,...>", a problem file,
  // a directory (every *.problem below it) or a filename glob.
  std::string problems = "suite:data/suite_seeds.txt";
  std::vector<PlannerKind> planners{PlannerKind::to, PlannerKind::ua};
  std::vector<Strategy> strategies{Strategy::dfs};
  std::vector<Heuristic> heuristics{Heuristic::none};
  int trials = 25;
  std::uint64_t base_seed = 1;
  // Nothing means the state-space oracle's minimal length.
  std::optional<int> depth_limit;
  std::size_t max_iterations = kDefaultMaxIterations;
  std::size_t node_budget = 0;
  GoalSelection goal_selection;
  std::string output;
  std::string format = "csv";
};

// Flat "key = value" lines; lists are comma-separated; '#' starts a comment.
// Throws Error naming the offending line.
ExperimentConfig parse_experiment_config(std::string_view text);
ExperimentConfig load_experiment_config(const std::string& path);

struct ExperimentProblem {
  std::string id;
  int length_class = 0;
  Problem problem;
};

// Resolves one problem source (see ExperimentConfig::problems).
std::vector<ExperimentProblem> resolve_problems(const std::string& source);

struct ExperimentRow {
  std::string problem_id;
  int length_class = 0;
  PlannerKind planner = PlannerKind::ua;
  Strategy strategy = Strategy::dfs;
  Heuristic heuristic = Heuristic::none;
  std::uint64_t seed = 0;
  int trial = 0;
  bool solved = false;
  int depth_limit = 0;
  std::size_t nodes_expanded = 0;
  std::size_t leaves_visited = 0;
  std::optional<std::size_t> solution_length;
  std::size_t iterations = 0;
  double wall_ms = 0;
  std::string error;
};

// Cells run independently, each with its own seed; rows come back in
// canonical (problem, planner, strategy, heuristic, trial) order either way.
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg, const std::vector<ExperimentProblem>& problems,
                                          Exec exec = Exec::parallel);

// wall_ms is the last column and is left out when `with_timing` is false.
std::string rows_to_csv(const std::vector<ExperimentRow>& rows, bool with_timing = true);

struct SummaryRow {
  int length_class = 0;
  PlannerKind planner = PlannerKind::ua;
  Strategy strategy = Strategy::dfs;
  Heuristic heuristic = Heuristic::none;
  std::size_t runs = 0;
  std::size_t solved = 0;
  double mean_nodes = 0;
  double mean_leaves = 0;
  double mean_iterations = 0;
  // 1 - mean_nodes / mean_nodes(heuristic none), same class/planner/strategy.
  std::optional<double> improvement;
};

std::vector<SummaryRow> summarize(const std::vector<ExperimentRow>& rows);
std::string summary_to_csv(const std::vector<SummaryRow>& summary);
const SummaryRow* find_summary(const std::vector<SummaryRow>& summary, int length_class, PlannerKind planner,
                               Strategy strategy, Heuristic heuristic);

}  // namespace planlab
