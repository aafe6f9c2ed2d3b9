#include "planlab/oracle.hpp"

#include <deque>
#include <unordered_set>

namespace planlab {

namespace {

using State = std::vector<bool>;

bool holds(const State& s, const PropList& props) {
  for (Prop p : props) {
    if (!s[p.id]) return false;
  }
  return true;
}

State successor(const Operator& op, const State& s) {
  State next = s;
  for (Prop p : op.dels) next[p.id] = false;
  for (const auto& ce : op.cdels) {
    if (holds(s, ce.deps)) next[ce.effect.id] = false;
  }
  for (Prop p : op.adds) next[p.id] = true;
  for (const auto& ce : op.cadds) {
    if (holds(s, ce.deps)) next[ce.effect.id] = true;
  }
  return next;
}

State initial_state(const Problem& problem) {
  State s(problem.prop_count(), false);
  for (Prop p : problem.init()) s[p.id] = true;
  return s;
}

void extend(const Problem& problem, const State& s, std::size_t remaining, std::vector<std::size_t>& prefix,
            std::vector<std::vector<std::size_t>>& out) {
  if (remaining == 0) {
    if (holds(s, problem.goals())) out.push_back(prefix);
    return;
  }
  const auto& lib = problem.library();
  for (std::size_t i = 0; i < lib.size(); ++i) {
    if (!holds(s, lib[i].pre)) continue;
    prefix.push_back(i);
    extend(problem, successor(lib[i], s), remaining - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

OracleResult shortest_solution_length(const Problem& problem, std::size_t state_ceiling) {
  OracleResult result;
  State start = initial_state(problem);
  std::unordered_set<State> seen;
  seen.insert(start);
  std::deque<std::pair<State, std::size_t>> frontier;
  frontier.emplace_back(start, 0);
  while (!frontier.empty()) {
    auto [s, depth] = std::move(frontier.front());
    frontier.pop_front();
    if (holds(s, problem.goals())) {
      result.length = depth;
      break;
    }
    for (const auto& op : problem.library()) {
      if (!holds(s, op.pre)) continue;
      State next = successor(op, s);
      if (!seen.insert(next).second) continue;
      if (seen.size() > state_ceiling) {
        throw Error("state-space oracle exceeded its ceiling of " + std::to_string(state_ceiling) + " states");
      }
      frontier.emplace_back(std::move(next), depth + 1);
    }
  }
  result.states = seen.size();
  return result;
}

std::vector<std::vector<std::size_t>> solutions_of_length(const Problem& problem, std::size_t length) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> prefix;
  extend(problem, initial_state(problem), length, prefix, out);
  return out;
}

std::optional<std::vector<bool>> execute(const Problem& problem, const std::vector<std::size_t>& sequence) {
  State s = initial_state(problem);
  for (std::size_t i : sequence) {
    const Operator& op = problem.library().at(i);
    if (!holds(s, op.pre)) return std::nullopt;
    s = successor(op, s);
  }
  return s;
}

}  // namespace planlab
