#include "planlab/experiment.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "planlab/oracle.hpp"

namespace planlab {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& v, Parse parse, const std::string& where) {
  std::vector<T> out;
  for (const auto& item : split_list(v)) {
    auto x = parse(item);
    if (!x) throw Error(where + ": unknown value '" + item + "'");
    out.push_back(*x);
  }
  if (out.empty()) throw Error(where + ": empty list");
  return out;
}

std::uint64_t parse_unsigned(const std::string& v, const std::string& where) {
  try {
    std::size_t used = 0;
    auto x = std::stoull(v, &used);
    if (used != v.size()) throw Error(where + ": expected an integer");
    return x;
  } catch (const std::logic_error&) {
    throw Error(where + ": expected an integer");
  }
}

}  // namespace

ExperimentConfig parse_experiment_config(std::string_view text) {
  ExperimentConfig cfg;
  std::stringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "config line " + std::to_string(line_no);
    auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(where + ": expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key == "problems") {
      cfg.problems = value;
    } else if (key == "planners") {
      cfg.planners = parse_list<PlannerKind>(value, parse_planner, where);
    } else if (key == "strategies") {
      cfg.strategies = parse_list<Strategy>(value, parse_strategy, where);
    } else if (key == "heuristics") {
      cfg.heuristics = parse_list<Heuristic>(value, parse_heuristic, where);
    } else if (key == "trials") {
      cfg.trials = static_cast<int>(parse_unsigned(value, where));
      if (cfg.trials < 1) throw Error(where + ": trials must be at least 1");
    } else if (key == "base_seed") {
      cfg.base_seed = parse_unsigned(value, where);
    } else if (key == "depth_limit") {
      if (value == "auto") {
        cfg.depth_limit.reset();
      } else {
        cfg.depth_limit = static_cast<int>(parse_unsigned(value, where));
      }
    } else if (key == "max_iterations") {
      cfg.max_iterations = parse_unsigned(value, where);
    } else if (key == "node_budget") {
      cfg.node_budget = parse_unsigned(value, where);
    } else if (key == "goal_selection") {
      if (value == "deterministic") {
        cfg.goal_selection.mode = GoalSelection::Mode::deterministic;
      } else if (value.rfind("seeded:", 0) == 0) {
        cfg.goal_selection = {GoalSelection::Mode::seeded, parse_unsigned(value.substr(7), where)};
      } else {
        throw Error(where + ": goal_selection is 'deterministic' or 'seeded:<seed>'");
      }
    } else if (key == "output") {
      cfg.output = value;
    } else if (key == "format") {
      if (value != "csv" && value != "json") throw Error(where + ": format is csv or json");
      cfg.format = value;
    } else {
      throw Error(where + ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str());
}

namespace {

int oracle_class(const Problem& p) {
  auto len = shortest_solution_length(p).length;
  return len ? static_cast<int>(*len) : -1;
}

ExperimentProblem from_file(const std::filesystem::path& path) {
  Problem p = load_problem_file(path.string());
  // gen writes len<k>/ directories; otherwise ask the oracle.
  const std::string dir = path.parent_path().filename().string();
  int cls = -1;
  if (dir.rfind("len", 0) == 0) {
    try {
      cls = std::stoi(dir.substr(3));
    } catch (const std::logic_error&) {
      cls = -1;
    }
  }
  if (cls < 0) cls = oracle_class(p);
  return {path.stem().string(), cls, std::move(p)};
}

}  // namespace

std::vector<ExperimentProblem> resolve_problems(const std::string& source) {
  namespace fs = std::filesystem;
  std::vector<ExperimentProblem> out;
  if (source.rfind("suite:", 0) == 0) {
    for (auto& e : load_suite(source.substr(6))) {
      std::string id = e.problem.name();
      out.push_back({std::move(id), e.length_class, std::move(e.problem)});
    }
    return out;
  }
  if (source.rfind("fixture:", 0) == 0) {
    Problem p = fixture(source.substr(8));
    int cls = oracle_class(p);
    out.push_back({source.substr(8), cls, std::move(p)});
    return out;
  }
  if (source.rfind("d1s1:", 0) == 0) {
    std::vector<int> idx;
    for (const auto& s : split_list(source.substr(5))) idx.push_back(static_cast<int>(parse_unsigned(s, source)));
    Problem p = d1s1_problem(idx);
    int cls = oracle_class(p);
    std::string id = p.name();
    out.push_back({std::move(id), cls, std::move(p)});
    return out;
  }
  fs::path path(source);
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".problem") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) out.push_back(from_file(f));
    return out;
  }
  if (source.find_first_of("*?[") != std::string::npos) {
    fs::path dir = path.parent_path().empty() ? fs::path(".") : path.parent_path();
    const std::string pattern = path.filename().string();
    std::vector<fs::path> files;
    if (fs::is_directory(dir)) {
      for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && fnmatch(pattern.c_str(), entry.path().filename().c_str(), 0) == 0) {
          files.push_back(entry.path());
        }
      }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw Error("no problem files match '" + source + "'");
    for (const auto& f : files) out.push_back(from_file(f));
    return out;
  }
  out.push_back(from_file(path));
  return out;
}

namespace {

struct Cell {
  std::size_t problem;
  PlannerKind planner;
  Strategy strategy;
  Heuristic heuristic;
  int trial;
};

ExperimentRow run_cell(const ExperimentConfig& cfg, const ExperimentProblem& ep, const Cell& cell,
                       std::optional<int> depth) {
  ExperimentRow row;
  row.problem_id = ep.id;
  row.length_class = ep.length_class;
  row.planner = cell.planner;
  row.strategy = cell.strategy;
  row.heuristic = cell.heuristic;
  row.trial = cell.trial;
  row.seed = cfg.base_seed + static_cast<std::uint64_t>(cell.trial);
  if (!depth) {
    row.error = "no depth limit: oracle found no solution";
    return row;
  }
  row.depth_limit = *depth;
  try {
    PlannerConfig pc;
    pc.planner = cell.planner;
    pc.goal_selection = cfg.goal_selection;
    Generator gen(ep.problem, pc);
    StrategyConfig sc;
    sc.strategy = cell.strategy;
    sc.depth_limit = *depth;
    sc.max_iterations = cfg.max_iterations;
    sc.heuristic = cell.heuristic;
    sc.seed = row.seed;
    sc.node_budget = cfg.node_budget;
    auto outcome = run_search(gen, sc);
    row.solved = outcome.solved;
    row.nodes_expanded = outcome.nodes_expanded;
    row.leaves_visited = outcome.leaves_visited;
    row.iterations = outcome.iterations;
    if (outcome.solution) row.solution_length = outcome.solution->plan.length();
    row.wall_ms = std::chrono::duration<double, std::milli>(outcome.wall_time).count();
    if (outcome.gave_up) row.error = "gave up";
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg, const std::vector<ExperimentProblem>& problems,
                                          Exec exec) {
  std::vector<std::optional<int>> depth(problems.size());
  for (std::size_t i = 0; i < problems.size(); ++i) {
    if (cfg.depth_limit) {
      depth[i] = cfg.depth_limit;
    } else {
      try {
        auto len = shortest_solution_length(problems[i].problem).length;
        if (len) depth[i] = static_cast<int>(*len);
      } catch (const Error&) {
        depth[i].reset();
      }
    }
  }
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < problems.size(); ++i) {
    for (PlannerKind p : cfg.planners) {
      for (Strategy s : cfg.strategies) {
        for (Heuristic h : cfg.heuristics) {
          for (int t = 0; t < cfg.trials; ++t) cells.push_back({i, p, s, h, t});
        }
      }
    }
  }
  std::vector<ExperimentRow> rows(cells.size());
  if (exec == Exec::parallel) {
    const auto n = static_cast<std::ptrdiff_t>(cells.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
      const Cell& c = cells[static_cast<std::size_t>(k)];
      rows[static_cast<std::size_t>(k)] = run_cell(cfg, problems[c.problem], c, depth[c.problem]);
    }
  } else {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      rows[k] = run_cell(cfg, problems[cells[k].problem], cells[k], depth[cells[k].problem]);
    }
  }
  return rows;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string rows_to_csv(const std::vector<ExperimentRow>& rows, bool with_timing) {
  std::ostringstream os;
  os << "problem_id,length_class,planner,strategy,heuristic,seed,trial,solved,depth_limit,nodes_expanded,"
        "leaves_visited,solution_length,iterations,error";
  if (with_timing) os << ",wall_ms";
  os << '\n';
  for (const auto& r : rows) {
    os << csv_field(r.problem_id) << ',' << r.length_class << ',' << to_string(r.planner) << ','
       << to_string(r.strategy) << ',' << to_string(r.heuristic) << ',' << r.seed << ',' << r.trial << ','
       << (r.solved ? 1 : 0) << ',' << r.depth_limit << ',' << r.nodes_expanded << ',' << r.leaves_visited << ',';
    if (r.solution_length) os << *r.solution_length;
    os << ',' << r.iterations << ',' << csv_field(r.error);
    if (with_timing) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", r.wall_ms);
      os << ',' << buf;
    }
    os << '\n';
  }
  return os.str();
}

std::vector<SummaryRow> summarize(const std::vector<ExperimentRow>& rows) {
  using Key = std::tuple<int, int, int, int>;
  std::map<Key, SummaryRow> acc;
  for (const auto& r : rows) {
    if (!r.error.empty() && r.error != "gave up") continue;
    Key k{r.length_class, static_cast<int>(r.planner), static_cast<int>(r.strategy), static_cast<int>(r.heuristic)};
    auto& s = acc[k];
    s.length_class = r.length_class;
    s.planner = r.planner;
    s.strategy = r.strategy;
    s.heuristic = r.heuristic;
    ++s.runs;
    if (r.solved) ++s.solved;
    s.mean_nodes += static_cast<double>(r.nodes_expanded);
    s.mean_leaves += static_cast<double>(r.leaves_visited);
    s.mean_iterations += static_cast<double>(r.iterations);
  }
  std::vector<SummaryRow> out;
  for (auto& [k, s] : acc) {
    const auto n = static_cast<double>(s.runs);
    s.mean_nodes /= n;
    s.mean_leaves /= n;
    s.mean_iterations /= n;
    out.push_back(s);
  }
  for (auto& s : out) {
    if (s.heuristic == Heuristic::none) continue;
    if (const SummaryRow* base = find_summary(out, s.length_class, s.planner, s.strategy, Heuristic::none)) {
      if (base->mean_nodes > 0) s.improvement = 1.0 - s.mean_nodes / base->mean_nodes;
    }
  }
  return out;
}

const SummaryRow* find_summary(const std::vector<SummaryRow>& summary, int length_class, PlannerKind planner,
                               Strategy strategy, Heuristic heuristic) {
  for (const auto& s : summary) {
    if (s.length_class == length_class && s.planner == planner && s.strategy == strategy && s.heuristic == heuristic) {
      return &s;
    }
  }
  return nullptr;
}

std::string summary_to_csv(const std::vector<SummaryRow>& summary) {
  std::ostringstream os;
  os << "length_class,planner,strategy,heuristic,runs,solved,mean_nodes,mean_leaves,mean_iterations,improvement\n";
  char buf[64];
  for (const auto& s : summary) {
    os << s.length_class << ',' << to_string(s.planner) << ',' << to_string(s.strategy) << ','
       << to_string(s.heuristic) << ',' << s.runs << ',' << s.solved << ',';
    std::snprintf(buf, sizeof buf, "%.3f,%.3f,%.3f,", s.mean_nodes, s.mean_leaves, s.mean_iterations);
    os << buf;
    if (s.improvement) {
      std::snprintf(buf, sizeof buf, "%.4f", *s.improvement);
      os << buf;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace planlab
