#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "planlab/experiment.hpp"

namespace planlab {
namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg = parse_experiment_config(
      "# two fixtures\n"
      "problems = fixture:sussman\n"
      "planners = to, ua\n"
      "strategies = dfs, isamp\n"
      "heuristics = none, min-goals-rank\n"
      "trials = 3\n"
      "base_seed = 5\n");
  return cfg;
}

TEST(Config, ParsesKeys) {
  auto cfg = small_config();
  EXPECT_EQ(cfg.problems, "fixture:sussman");
  EXPECT_EQ(cfg.planners.size(), 2u);
  EXPECT_EQ(cfg.strategies.size(), 2u);
  EXPECT_EQ(cfg.heuristics.size(), 2u);
  EXPECT_EQ(cfg.trials, 3);
  EXPECT_EQ(cfg.base_seed, 5u);
  EXPECT_FALSE(cfg.depth_limit);
}

TEST(Config, RejectsUnknownKeysAndValues) {
  EXPECT_THROW(parse_experiment_config("colour = blue\n"), Error);
  EXPECT_THROW(parse_experiment_config("planners = po\n"), Error);
  EXPECT_THROW(parse_experiment_config("trials = many\n"), Error);
  EXPECT_THROW(parse_experiment_config("no equals sign\n"), Error);
}

TEST(Config, DepthLimitAutoOrNumber) {
  EXPECT_FALSE(parse_experiment_config("depth_limit = auto\n").depth_limit);
  EXPECT_EQ(parse_experiment_config("depth_limit = 4\n").depth_limit, 4);
}

TEST(Experiment, OneRowPerCell) {
  auto cfg = small_config();
  auto problems = resolve_problems(cfg.problems);
  auto rows = run_experiment(cfg, problems);
  EXPECT_EQ(rows.size(), 1u * 2 * 2 * 2 * 3);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.error.empty()) << r.error;
    EXPECT_TRUE(r.solved);
    EXPECT_EQ(r.depth_limit, 3);
    EXPECT_EQ(r.seed, cfg.base_seed + static_cast<std::uint64_t>(r.trial));
    if (r.strategy == Strategy::isamp) EXPECT_GE(r.iterations, 1u);
  }
}

TEST(Experiment, ParallelMatchesSerial) {
  auto cfg = small_config();
  auto problems = resolve_problems("d1s1:1,3,5");
  auto a = run_experiment(cfg, problems, Exec::serial);
  auto b = run_experiment(cfg, problems, Exec::parallel);
  EXPECT_EQ(rows_to_csv(a, false), rows_to_csv(b, false));
}

TEST(Experiment, RerunIsByteIdenticalWithoutTiming) {
  auto cfg = small_config();
  auto problems = resolve_problems(cfg.problems);
  EXPECT_EQ(rows_to_csv(run_experiment(cfg, problems), false), rows_to_csv(run_experiment(cfg, problems), false));
}

TEST(Experiment, CsvHeaderIsStable) {
  auto csv = rows_to_csv({});
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "problem_id,length_class,planner,strategy,heuristic,seed,trial,solved,depth_limit,nodes_expanded,"
            "leaves_visited,solution_length,iterations,error,wall_ms");
}

TEST(Experiment, PerRowFailuresDoNotStopTheRun) {
  ExperimentConfig cfg = parse_experiment_config("problems = fixture:sussman\ndepth_limit = 40\ntrials = 1\n");
  auto rows = run_experiment(cfg, resolve_problems(cfg.problems));
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) EXPECT_FALSE(r.error.empty());
}

TEST(Summary, ImprovementRelativeToPlainHeuristic) {
  auto cfg = small_config();
  auto rows = run_experiment(cfg, resolve_problems(cfg.problems));
  auto summary = summarize(rows);
  const SummaryRow* none = find_summary(summary, 3, PlannerKind::to, Strategy::dfs, Heuristic::none);
  const SummaryRow* rank = find_summary(summary, 3, PlannerKind::to, Strategy::dfs, Heuristic::min_goals_rank);
  ASSERT_TRUE(none && rank);
  EXPECT_FALSE(none->improvement);
  ASSERT_TRUE(rank->improvement);
  EXPECT_DOUBLE_EQ(*rank->improvement, 1.0 - rank->mean_nodes / none->mean_nodes);
  EXPECT_NE(summary_to_csv(summary).find("improvement"), std::string::npos);
}

TEST(Problems, DirectoryUsesLengthClassFolders) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "planlab_exp_dir";
  fs::remove_all(dir);
  fs::create_directories(dir / "len3");
  std::ofstream(dir / "len3" / "s.problem") << serialize_problem(fixture("sussman"));
  auto problems = resolve_problems(dir.string());
  ASSERT_EQ(problems.size(), 1u);
  EXPECT_EQ(problems[0].length_class, 3);
  fs::remove_all(dir);
}

TEST(Problems, UnknownSourceThrows) { EXPECT_THROW(resolve_problems("/nonexistent/dir/*.problem"), Error); }

}  // namespace
}  // namespace planlab
