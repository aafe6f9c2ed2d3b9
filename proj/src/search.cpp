#include "planlab/search.hpp"

#include <algorithm>
#include <numeric>

namespace planlab {

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::bfs:
      return "bfs";
    case Strategy::dfs:
      return "dfs";
    case Strategy::isamp:
      return "isamp";
    case Strategy::ibroad:
      return "ibroad";
  }
  return "?";
}

const char* to_string(Heuristic h) {
  switch (h) {
    case Heuristic::none:
      return "none";
    case Heuristic::min_goals_rank:
      return "min-goals-rank";
    case Heuristic::min_goals_prune:
      return "min-goals-prune";
    case Heuristic::min_goals_weighted:
      return "min-goals-weighted";
  }
  return "?";
}

std::optional<Strategy> parse_strategy(std::string_view s) {
  for (Strategy v : {Strategy::bfs, Strategy::dfs, Strategy::isamp, Strategy::ibroad}) {
    if (s == to_string(v)) return v;
  }
  return std::nullopt;
}

std::optional<Heuristic> parse_heuristic(std::string_view s) {
  for (Heuristic v : {Heuristic::none, Heuristic::min_goals_rank, Heuristic::min_goals_prune,
                      Heuristic::min_goals_weighted}) {
    if (s == to_string(v)) return v;
  }
  return std::nullopt;
}

std::size_t min_goals_rating(const OpenPlan& plan) { return plan.goals.size(); }

std::vector<std::size_t> rank_children(const std::vector<OpenPlan>& children, Heuristic heuristic, Rng& rng) {
  std::vector<std::size_t> order(children.size());
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  auto rating = [&](std::size_t i) { return min_goals_rating(children[i]); };
  switch (heuristic) {
    case Heuristic::none:
      break;
    case Heuristic::min_goals_rank:
      std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return rating(a) < rating(b); });
      break;
    case Heuristic::min_goals_prune: {
      if (order.empty()) break;
      std::size_t best = rating(*std::min_element(order.begin(), order.end(),
                                                  [&](auto a, auto b) { return rating(a) < rating(b); }));
      std::erase_if(order, [&](std::size_t i) { return rating(i) != best; });
      break;
    }
    case Heuristic::min_goals_weighted: {
      std::vector<std::size_t> out;
      while (!order.empty()) {
        double total = 0;
        for (std::size_t i : order) total += 1.0 / (1.0 + static_cast<double>(rating(i)));
        double x = rng.unit() * total;
        std::size_t pick = order.size() - 1;
        for (std::size_t k = 0; k < order.size(); ++k) {
          x -= 1.0 / (1.0 + static_cast<double>(rating(order[k])));
          if (x < 0) {
            pick = k;
            break;
          }
        }
        out.push_back(order[pick]);
        order.erase(order.begin() + static_cast<std::ptrdiff_t>(pick));
      }
      order = std::move(out);
      break;
    }
  }
  return order;
}

namespace {

using Clock = std::chrono::steady_clock;

void check_config(const Generator& gen, const StrategyConfig& cfg) {
  if (cfg.depth_limit < 0) throw Error("depth limit must be non-negative");
  if (cfg.trials < 1) throw Error("trials must be at least 1");
  // Each extension adds at most one step.
  if (static_cast<std::size_t>(cfg.depth_limit) + 2 > gen.config().step_ceiling) {
    throw Error("depth limit " + std::to_string(cfg.depth_limit) + " exceeds the step ceiling");
  }
}

class Run {
 public:
  Run(const Generator& gen, const StrategyConfig& cfg) : gen_(gen), cfg_(cfg), start_(Clock::now()) {
    check_config(gen, cfg);
    out_.seed = cfg.seed;
    out_.per_level_counts.assign(static_cast<std::size_t>(cfg.depth_limit) + 1, 0);
  }

  // Counts a goal test. Returns true if the node is a solution.
  bool visit(const OpenPlan& node) {
    ++out_.nodes_expanded;
    ++out_.per_level_counts[static_cast<std::size_t>(node.plan.depth())];
    if (!node.solved()) return false;
    ++out_.leaves_visited;
    out_.solved = true;
    out_.solution = node;
    return true;
  }

  bool over_budget() const { return cfg_.node_budget != 0 && out_.nodes_expanded >= cfg_.node_budget; }

  SearchOutcome finish() {
    out_.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start_);
    return std::move(out_);
  }

  const Generator& gen_;
  const StrategyConfig& cfg_;
  SearchOutcome out_;
  Clock::time_point start_;
};

// Depth-first with at most `breadth` children per node (0 = unlimited).
// Returns true once a solution is found or the budget is hit; sets `cut` if
// the breadth cutoff dropped any child.
bool depth_first(Run& run, const OpenPlan& node, Rng& rng, std::size_t breadth, bool& cut) {
  if (run.visit(node)) return true;
  if (run.over_budget()) {
    run.out_.gave_up = true;
    return true;
  }
  if (node.plan.depth() >= run.cfg_.depth_limit) {
    ++run.out_.leaves_visited;
    return false;
  }
  auto ext = run.gen_.expand(node);
  if (ext.children.empty()) {
    ++run.out_.leaves_visited;
    ++run.out_.dead_ends;
    return false;
  }
  auto order = rank_children(ext.children, run.cfg_.heuristic, rng);
  if (breadth != 0 && order.size() > breadth) {
    order.resize(breadth);
    cut = true;
  }
  for (std::size_t i : order) {
    if (depth_first(run, ext.children[i], rng, breadth, cut)) return true;
  }
  return false;
}

}  // namespace

SearchOutcome bfs(const Generator& gen, const StrategyConfig& cfg) {
  Run run(gen, cfg);
  std::vector<OpenPlan> level{gen.root()};
  while (!level.empty()) {
    std::vector<OpenPlan> next;
    for (const auto& node : level) {
      if (run.visit(node)) return run.finish();
      if (run.over_budget()) {
        run.out_.gave_up = true;
        return run.finish();
      }
      if (node.plan.depth() >= cfg.depth_limit) {
        ++run.out_.leaves_visited;
        continue;
      }
      auto ext = gen.expand(node);
      if (ext.children.empty()) {
        ++run.out_.leaves_visited;
        ++run.out_.dead_ends;
      }
      for (auto& c : ext.children) next.push_back(std::move(c));
    }
    level = std::move(next);
  }
  return run.finish();
}

SearchOutcome dfs(const Generator& gen, const StrategyConfig& cfg) {
  Run run(gen, cfg);
  Rng rng(cfg.seed);
  bool cut = false;
  depth_first(run, gen.root(), rng, 0, cut);
  return run.finish();
}

SearchOutcome iterative_sampling(const Generator& gen, const StrategyConfig& cfg) {
  Run run(gen, cfg);
  Rng rng(cfg.seed);
  const OpenPlan root = gen.root();
  while (run.out_.iterations < cfg.max_iterations) {
    ++run.out_.iterations;
    OpenPlan node = root;
    for (;;) {
      if (run.visit(node)) return run.finish();
      if (run.over_budget()) {
        run.out_.gave_up = true;
        return run.finish();
      }
      if (node.plan.depth() >= cfg.depth_limit) break;
      auto ext = gen.expand(node);
      if (ext.children.empty()) {
        ++run.out_.dead_ends;
        break;
      }
      auto order = rank_children(ext.children, cfg.heuristic, rng);
      // Prune and weighted orders already encode the preference; a uniform
      // pick among the survivors keeps plain sampling uniform.
      std::size_t pick = order.front();
      if (cfg.heuristic == Heuristic::none || cfg.heuristic == Heuristic::min_goals_prune) {
        pick = order[rng.below(order.size())];
      }
      node = std::move(ext.children[pick]);
    }
    ++run.out_.leaves_visited;
  }
  run.out_.gave_up = true;
  return run.finish();
}

SearchOutcome iterative_broadening(const Generator& gen, const StrategyConfig& cfg) {
  Run run(gen, cfg);
  const OpenPlan root = gen.root();
  for (std::size_t breadth = 1;; ++breadth) {
    ++run.out_.iterations;
    Rng rng(cfg.seed);
    bool cut = false;
    if (depth_first(run, root, rng, breadth, cut)) break;
    // A pass without cutoffs covered the whole depth-bounded tree.
    if (!cut) break;
  }
  return run.finish();
}

SearchOutcome run_search(const Generator& gen, const StrategyConfig& cfg) {
  switch (cfg.strategy) {
    case Strategy::bfs:
      return bfs(gen, cfg);
    case Strategy::dfs:
      return dfs(gen, cfg);
    case Strategy::isamp:
      return iterative_sampling(gen, cfg);
    case Strategy::ibroad:
      return iterative_broadening(gen, cfg);
  }
  throw Error("unknown strategy");
}

std::vector<SearchOutcome> run_trials(const Generator& gen, const StrategyConfig& cfg) {
  check_config(gen, cfg);
  std::vector<SearchOutcome> out;
  for (int t = 0; t < cfg.trials; ++t) {
    StrategyConfig one = cfg;
    one.seed = cfg.seed + static_cast<std::uint64_t>(t);
    one.trials = 1;
    out.push_back(run_search(gen, one));
  }
  return out;
}

double mean_leaf_tests(std::size_t n_leaves, std::size_t k_solutions, std::size_t runs, std::uint64_t seed,
                       bool with_replacement) {
  if (k_solutions == 0 || k_solutions > n_leaves || runs == 0) throw Error("need 1 <= k <= n and runs > 0");
  Rng rng(seed);
  double total = 0;
  for (std::size_t r = 0; r < runs; ++r) {
    std::size_t tests = 0;
    std::size_t remaining = n_leaves;
    for (;;) {
      ++tests;
      if (rng.below(remaining) < k_solutions) break;
      if (!with_replacement) --remaining;
    }
    total += static_cast<double>(tests);
  }
  return total / static_cast<double>(runs);
}

}  // namespace planlab
