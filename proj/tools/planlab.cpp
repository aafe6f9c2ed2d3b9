// planlab: solve, verify, experiment, gen, dump-tree.
//
// Exit codes: 0 success, 1 unsolved or a failed check, 2 usage or input
// error, 3 node ceiling exceeded.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "planlab/correspondence.hpp"
#include "planlab/domains.hpp"
#include "planlab/experiment.hpp"
#include "planlab/oracle.hpp"
#include "planlab/search.hpp"

using namespace planlab;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;
constexpr int kCeiling = 3;

// Default for searches whose problem has no oracle length.
constexpr int kFallbackDepth = 6;

std::size_t default_node_ceiling() {
  if (const char* env = std::getenv("PLANLAB_NODE_CEILING")) {
    try {
      return std::stoull(env);
    } catch (const std::logic_error&) {
      std::cerr << "ignoring malformed PLANLAB_NODE_CEILING\n";
    }
  }
  return kDefaultNodeCeiling;
}

Problem load_source(const std::string& source) {
  if (source.rfind("fixture:", 0) == 0 || source.rfind("d1s1:", 0) == 0) {
    return std::move(resolve_problems(source).front().problem);
  }
  return load_problem_file(source);
}

std::optional<int> oracle_depth(const Problem& p) {
  auto len = shortest_solution_length(p).length;
  if (!len) return std::nullopt;
  return static_cast<int>(*len);
}

PlannerConfig config_for(PlannerKind kind) {
  PlannerConfig pc;
  pc.planner = kind;
  return pc;
}

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

struct Common {
  std::string problem;
  std::string planner = "ua";
  std::optional<int> depth_limit;
  std::uint64_t seed = 1;
  std::size_t node_ceiling = default_node_ceiling();
  std::string format = "text";
};

PlannerKind planner_of(const std::string& s) {
  auto p = parse_planner(s);
  if (!p) throw CLI::ValidationError("--planner", "unknown planner '" + s + "'");
  return *p;
}

int cmd_solve(const Common& c, const std::string& strategy, const std::string& heuristic, int trials,
              std::size_t max_iterations) {
  Problem problem = load_source(c.problem);
  auto st = parse_strategy(strategy);
  auto h = parse_heuristic(heuristic);
  if (!st || !h) {
    std::cerr << "unknown strategy or heuristic\n";
    return kUsage;
  }
  PlannerConfig pc;
  pc.planner = planner_of(c.planner);
  Generator gen(problem, pc);
  StrategyConfig sc;
  sc.strategy = *st;
  sc.heuristic = *h;
  sc.seed = c.seed;
  sc.trials = trials;
  sc.max_iterations = max_iterations;
  sc.node_budget = c.node_ceiling;
  auto oracle = c.depth_limit ? c.depth_limit : oracle_depth(problem);
  sc.depth_limit = oracle.value_or(kFallbackDepth);

  nlohmann::json runs = nlohmann::json::array();
  if (c.format == "csv") {
    std::cout << "problem,planner,strategy,heuristic,seed,depth_limit,solved,solution_length,nodes_expanded,"
                 "leaves_visited,dead_ends,iterations,wall_ms\n";
  }
  bool all_solved = true;
  for (const auto& o : run_trials(gen, sc)) {
    all_solved = all_solved && o.solved;
    const double ms = std::chrono::duration<double, std::milli>(o.wall_time).count();
    if (c.format == "json") {
      nlohmann::json r{{"seed", o.seed},
                       {"solved", o.solved},
                       {"nodes_expanded", o.nodes_expanded},
                       {"leaves_visited", o.leaves_visited},
                       {"dead_ends", o.dead_ends},
                       {"iterations", o.iterations},
                       {"per_level_counts", o.per_level_counts},
                       {"wall_ms", ms}};
      if (o.solution) {
        r["solution"] = o.solution->plan.describe(problem);
        r["solution_length"] = o.solution->plan.length();
      }
      runs.push_back(r);
      continue;
    }
    if (c.format == "csv") {
      std::cout << problem.name() << ',' << to_string(pc.planner) << ',' << to_string(sc.strategy) << ','
                << to_string(sc.heuristic) << ',' << o.seed << ',' << sc.depth_limit << ',' << (o.solved ? 1 : 0)
                << ',' << (o.solution ? std::to_string(o.solution->plan.length()) : std::string()) << ','
                << o.nodes_expanded << ',' << o.leaves_visited << ',' << o.dead_ends << ',' << o.iterations << ','
                << ms << '\n';
      continue;
    }
    std::cout << "problem: " << problem.name() << "\nplanner: " << to_string(pc.planner)
              << "\nstrategy: " << to_string(sc.strategy) << "\nheuristic: " << to_string(sc.heuristic)
              << "\nseed: " << o.seed << "\ndepth_limit: " << sc.depth_limit << "\nsolved: " << (o.solved ? "yes" : "no")
              << '\n';
    if (o.solution) {
      std::cout << "solution: " << o.solution->plan.describe(problem) << "\nsolution_length: "
                << o.solution->plan.length() << '\n';
    }
    std::cout << "nodes_expanded: " << o.nodes_expanded << "\nleaves_visited: " << o.leaves_visited
              << "\ndead_ends: " << o.dead_ends << "\niterations: " << o.iterations << "\nwall_ms: " << ms << "\n";
    if (o.gave_up) std::cout << "note: search gave up before finding a solution\n";
  }
  if (c.format == "json") print_json(runs);
  return all_solved ? kOk : kFailed;
}

void report(const CheckReport& r, bool& ok, bool expected_failure = false) {
  std::cout << r.name << ": " << (r.ok() ? "ok" : std::to_string(r.violations.size()) + " violation(s)");
  if (expected_failure && !r.ok()) std::cout << " (expected)";
  std::cout << '\n';
  for (std::size_t i = 0; i < r.violations.size() && i < 5; ++i) {
    std::cout << "  node " << r.violations[i].node << ": " << r.violations[i].reason << '\n';
  }
  if (!expected_failure) ok = ok && r.ok();
}

int cmd_verify(const Common& c, bool mt, bool conditional, bool lemmas) {
  Problem problem = load_source(c.problem);
  auto depth = c.depth_limit ? c.depth_limit : oracle_depth(problem);
  if (!depth) {
    std::cerr << "no solution found by the state-space oracle; pass --depth-limit\n";
    return kUsage;
  }
  const PlannerKind total_kind = conditional ? PlannerKind::toc : PlannerKind::to;
  const PlannerKind partial_kind = mt ? PlannerKind::mt : conditional ? PlannerKind::uac : PlannerKind::ua;
  Generator total_gen(problem, config_for(total_kind));
  Generator partial_gen(problem, config_for(partial_kind));
  SearchTree total;
  SearchTree partial;
  try {
    total = enumerate_tree(total_gen, *depth, c.node_ceiling);
    partial = enumerate_tree(partial_gen, *depth, c.node_ceiling);
  } catch (const CeilingExceeded& e) {
    std::cout << "ceiling: " << e.what() << '\n';
    return kCeiling;
  }
  std::cout << "problem: " << problem.name() << "\ndepth_limit: " << *depth << "\ntree_" << to_string(total_kind)
            << ": " << total.size() << "\ntree_" << to_string(partial_kind) << ": " << partial.size() << '\n';
  bool ok = true;
  if (mt) {
    auto map = linearization_map(partial, total);
    report(verify_disjointness(map, partial, true), ok, true);
    return kOk;
  }
  std::cout << "size_relation: " << (partial.size() <= total.size() ? "ok" : "violated") << '\n';
  ok = ok && partial.size() <= total.size();
  auto map = build_L(partial, total);
  report(verify_totality(map, partial), ok);
  report(verify_disjointness(map, partial), ok);
  report(verify_partition(map, total), ok);
  report(verify_unambiguity(partial), ok);
  report(verify_total_orders(total), ok);
  if (lemmas) report(verify_mapping_lemma(total_gen, partial, total, map), ok);
  std::cout << "cost_ratio: " << cost_ratio(partial, map) << '\n';
  return ok ? kOk : kFailed;
}

int cmd_experiment(const std::string& path, bool serial) {
  ExperimentConfig cfg = load_experiment_config(path);
  auto problems = resolve_problems(cfg.problems);
  auto rows = run_experiment(cfg, problems, serial ? Exec::serial : Exec::parallel);
  auto summary = summarize(rows);
  std::string data;
  std::string sum;
  if (cfg.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json j{{"problem_id", r.problem_id},     {"length_class", r.length_class},
                       {"planner", to_string(r.planner)}, {"strategy", to_string(r.strategy)},
                       {"heuristic", to_string(r.heuristic)}, {"seed", r.seed},
                       {"trial", r.trial},               {"solved", r.solved},
                       {"depth_limit", r.depth_limit},   {"nodes_expanded", r.nodes_expanded},
                       {"leaves_visited", r.leaves_visited}, {"iterations", r.iterations},
                       {"error", r.error},               {"wall_ms", r.wall_ms}};
      j["solution_length"] = r.solution_length ? nlohmann::json(*r.solution_length) : nlohmann::json(nullptr);
      arr.push_back(j);
    }
    data = arr.dump(2) + "\n";
  } else {
    data = rows_to_csv(rows);
  }
  sum = summary_to_csv(summary);
  if (cfg.output.empty()) {
    std::cout << data << "\n# summary\n" << sum;
  } else {
    std::ofstream(cfg.output) << data;
    std::ofstream(cfg.output + ".summary.csv") << sum;
    std::cout << "wrote " << rows.size() << " rows to " << cfg.output << "\n" << sum;
  }
  return kOk;
}

std::vector<int> int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

int cmd_gen(const std::string& out_dir, const std::string& lengths, int per_class, const std::string& blocks,
            std::uint64_t base_seed) {
  namespace fs = std::filesystem;
  SuiteSpec spec;
  spec.lengths = int_list(lengths);
  spec.block_counts = int_list(blocks);
  spec.per_class = per_class;
  spec.base_seed = base_seed;
  auto suite = generate_suite(spec);
  fs::create_directories(out_dir);
  for (const auto& e : suite) {
    fs::path dir = fs::path(out_dir) / ("len" + std::to_string(e.length_class));
    fs::create_directories(dir);
    std::ofstream f(dir / (e.problem.name() + ".problem"));
    if (!f) throw Error("cannot write into " + dir.string());
    f << serialize_problem(e.problem);
  }
  std::ofstream(fs::path(out_dir) / "suite_seeds.txt") << suite_seed_lines(suite);
  std::cout << "wrote " << suite.size() << " problems to " << out_dir << '\n';
  return kOk;
}

int cmd_dump_tree(const Common& c, bool with_map) {
  Problem problem = load_source(c.problem);
  auto depth = c.depth_limit ? c.depth_limit : oracle_depth(problem);
  if (!depth) {
    std::cerr << "no solution found by the state-space oracle; pass --depth-limit\n";
    return kUsage;
  }
  PlannerKind kind = planner_of(c.planner);
  try {
    Generator gen(problem, config_for(kind));
    auto tree = enumerate_tree(gen, *depth, c.node_ceiling);
    if (!with_map) {
      print_json(tree_to_json(tree, problem));
      return kOk;
    }
    const bool conditional = kind == PlannerKind::uac || kind == PlannerKind::toc;
    Generator total_gen(problem, config_for(conditional ? PlannerKind::toc : PlannerKind::to));
    auto total = enumerate_tree(total_gen, *depth, c.node_ceiling);
    print_json({{"tree", tree_to_json(tree, problem)},
                {"total_tree", tree_to_json(total, problem)},
                {"map", map_to_json(build_L(tree, total))}});
  } catch (const CeilingExceeded& e) {
    std::cerr << e.what() << '\n';
    return kCeiling;
  }
  return kOk;
}

void add_common(CLI::App* app, Common& c, bool with_planner) {
  app->add_option("problem", c.problem, "problem file, fixture:<name> or d1s1:<i,j,...>")->required();
  if (with_planner) app->add_option("--planner", c.planner, "to, ua, toc, uac or mt");
  app->add_option("--depth-limit", c.depth_limit, "defaults to the oracle's minimal solution length");
  app->add_option("--node-ceiling", c.node_ceiling, "overrides PLANLAB_NODE_CEILING");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Plan-space search laboratory"};
  app.require_subcommand(1);

  Common solve_opts;
  std::string strategy = "bfs";
  std::string heuristic = "none";
  int trials = 1;
  std::size_t max_iterations = kDefaultMaxIterations;
  auto* solve = app.add_subcommand("solve", "search for a solution");
  add_common(solve, solve_opts, true);
  solve->add_option("--strategy", strategy, "bfs, dfs, isamp or ibroad");
  solve->add_option("--heuristic", heuristic, "none, min-goals-rank, min-goals-prune or min-goals-weighted");
  solve->add_option("--seed", solve_opts.seed);
  solve->add_option("--trials", trials)->check(CLI::PositiveNumber);
  solve->add_option("--max-iterations", max_iterations);
  solve->add_option("--format", solve_opts.format)->check(CLI::IsMember({"text", "csv", "json"}));

  Common verify_opts;
  bool mt = false;
  bool conditional = false;
  bool lemmas = false;
  auto* verify = app.add_subcommand("verify", "enumerate trees and check the linearization map");
  add_common(verify, verify_opts, false);
  verify->add_flag("--mt", mt, "MT against TO; disjointness is expected to fail");
  verify->add_flag("--conditional", conditional, "UA-C against TO-C");
  verify->add_flag("--lemmas", lemmas, "also check the mapping lemma on every map edge");

  std::string config;
  bool serial = false;
  auto* experiment = app.add_subcommand("experiment", "run an experiment matrix from a config file");
  experiment->add_option("config", config)->required();
  experiment->add_flag("--serial", serial, "run cells on one thread");

  std::string out_dir = "suite";
  std::string lengths = "2,3,4,5";
  std::string blocks = "3,4";
  int per_class = 11;
  std::uint64_t base_seed = 1;
  auto* gen = app.add_subcommand("gen", "generate a blocksworld suite");
  gen->add_option("--out", out_dir);
  gen->add_option("--lengths", lengths, "minimal solution length per class");
  gen->add_option("--per-class", per_class)->check(CLI::PositiveNumber);
  gen->add_option("--blocks", blocks, "block counts drawn in rotation");
  gen->add_option("--base-seed", base_seed);

  Common dump_opts;
  bool with_map = false;
  auto* dump = app.add_subcommand("dump-tree", "enumerate a tree and print it as JSON");
  add_common(dump, dump_opts, true);
  dump->add_flag("--map", with_map, "also enumerate the total-order tree and print the map");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) return cmd_solve(solve_opts, strategy, heuristic, trials, max_iterations);
    if (*verify) return cmd_verify(verify_opts, mt, conditional, lemmas);
    if (*experiment) return cmd_experiment(config, serial);
    if (*gen) return cmd_gen(out_dir, lengths, per_class, blocks, base_seed);
    if (*dump) return cmd_dump_tree(dump_opts, with_map);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const CeilingExceeded& e) {
    std::cerr << e.what() << '\n';
    return kCeiling;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
