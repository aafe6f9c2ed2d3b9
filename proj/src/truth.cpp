#include "planlab/truth.hpp"

#include <algorithm>
#include <bit>

namespace planlab {

const char* to_string(ModalStatus s) {
  switch (s) {
    case ModalStatus::necessarily_true:
      return "necessarily_true";
    case ModalStatus::necessarily_false:
      return "necessarily_false";
    case ModalStatus::ambiguous:
      return "ambiguous";
  }
  return "?";
}

bool true_in_sequence(const Plan& plan, std::span<const Label> sequence, Label needer, Prop c) {
  auto pos = std::find(sequence.begin(), sequence.end(), needer);
  if (pos == sequence.end()) throw Error("needer is not part of the sequence");
  // Nearest earlier step that touches c decides; adds win over deletes
  // within a single step.
  for (auto it = std::make_reverse_iterator(pos); it != sequence.rend(); ++it) {
    const Operator& op = plan.step(*it).fields();
    if (op.adds_prop(c)) return true;
    if (op.dels_prop(c)) return false;
  }
  return false;
}

bool true_in_total_order(const Plan& plan, Label needer, Prop c) {
  if (!plan.totally_ordered()) throw Error("plan is not totally ordered");
  auto seq = plan.linear_order();
  return true_in_sequence(plan, seq, needer, c);
}

ModalStatus modal_status(const Plan& plan, Label needer, Prop c) {
  bool seen_true = false;
  bool seen_false = false;
  for_each_linearization(plan, [&](std::span<const Label> seq) {
    if (true_in_sequence(plan, seq, needer, c)) {
      seen_true = true;
    } else {
      seen_false = true;
    }
    return !(seen_true && seen_false);
  });
  if (seen_true && seen_false) return ModalStatus::ambiguous;
  return seen_true ? ModalStatus::necessarily_true : ModalStatus::necessarily_false;
}

ModalStatus modal_status_unambiguous(const Plan& plan, Label needer, Prop c) {
  auto seq = plan.linear_order();
  return true_in_sequence(plan, seq, needer, c) ? ModalStatus::necessarily_true : ModalStatus::necessarily_false;
}

Label last_deleter(const Plan& plan, Prop c, Label needer) {
  std::vector<Label> candidates;
  for (Label s = 0; s < plan.size(); ++s) {
    if (s != needer && plan.before(s, needer) && plan.step(s).fields().dels_prop(c)) candidates.push_back(s);
  }
  std::vector<Label> last;
  for (Label d : candidates) {
    bool shadowed = std::any_of(candidates.begin(), candidates.end(),
                                [&](Label other) { return other != d && plan.before(d, other); });
    if (!shadowed) last.push_back(d);
  }
  if (last.empty()) return kInitialStep;
  if (last.size() > 1) throw Error("no unique last deleter");
  return last.front();
}

bool operators_interact(const Operator& a, const Operator& b, InteractionMode mode) {
  if (mode == InteractionMode::basic) {
    return intersects(a.pre, b.adds) || intersects(a.pre, b.dels) || intersects(b.pre, a.adds) ||
           intersects(b.pre, a.dels) || intersects(a.adds, b.dels) || intersects(b.adds, a.dels);
  }
  const PropList a_cond = a.conditions();
  const PropList b_cond = b.conditions();
  const PropList a_add = a.possible_adds();
  const PropList b_add = b.possible_adds();
  const PropList a_del = a.possible_dels();
  const PropList b_del = b.possible_dels();
  return intersects(a_cond, b_add) || intersects(a_cond, b_del) || intersects(b_cond, a_add) ||
         intersects(b_cond, a_del) || intersects(a_add, b_del) || intersects(b_add, a_del);
}

bool interacts(const Plan& plan, Label s1, Label s2, InteractionMode mode) {
  if (s1 == s2 || plan.ordered(s1, s2)) return false;
  return operators_interact(plan.step(s1).fields(), plan.step(s2).fields(), mode);
}

namespace {

struct PreconditionTally {
  Label needer;
  Prop condition;
  bool seen_true = false;
  bool seen_false = false;
};

std::vector<PreconditionTally> all_preconditions(const Plan& plan) {
  std::vector<PreconditionTally> out;
  for (Label s = 0; s < plan.size(); ++s) {
    for (Prop p : plan.step(s).fields().pre) out.push_back({s, p});
  }
  return out;
}

// Evaluates every precondition in one sequence with a forward pass.
void evaluate_sequence(const Plan& plan, std::span<const Label> seq, std::vector<PreconditionTally>& tally,
                       std::vector<int>& position) {
  position.assign(plan.size(), 0);
  for (std::size_t i = 0; i < seq.size(); ++i) position[seq[i]] = static_cast<int>(i);
  for (auto& t : tally) {
    if (true_in_sequence(plan, seq.subspan(0, static_cast<std::size_t>(position[t.needer]) + 1), t.needer,
                         t.condition)) {
      t.seen_true = true;
    } else {
      t.seen_false = true;
    }
  }
}

}  // namespace

bool is_unambiguous(const Plan& plan) {
  auto tally = all_preconditions(plan);
  std::vector<int> position;
  bool ambiguous = false;
  for_each_linearization(plan, [&](std::span<const Label> seq) {
    evaluate_sequence(plan, seq, tally, position);
    ambiguous = std::any_of(tally.begin(), tally.end(), [](const auto& t) { return t.seen_true && t.seen_false; });
    return !ambiguous;
  });
  return !ambiguous;
}

GoalSet goal_set(const Plan& plan, Semantics semantics) {
  if (semantics == Semantics::to && !plan.totally_ordered()) {
    throw Error("TO goal set requires a totally ordered plan");
  }
  auto tally = all_preconditions(plan);
  std::vector<int> position;
  for_each_linearization(plan, [&](std::span<const Label> seq) {
    evaluate_sequence(plan, seq, tally, position);
    return true;
  });
  GoalSet goals;
  for (const auto& t : tally) {
    bool include = false;
    switch (semantics) {
      case Semantics::to:
      case Semantics::ua:
        include = !t.seen_true;
        break;
      case Semantics::mt:
        include = t.seen_false;
        break;
    }
    if (include) goals.push_back({t.needer, t.condition});
  }
  std::sort(goals.begin(), goals.end());
  return goals;
}

GoalUpdate false_preconditions(const Plan& plan, std::size_t prop_count) {
  GoalUpdate out;
  std::vector<Label> seq;
  if (plan.totally_ordered()) {
    seq = plan.linear_order();
  } else {
    // Kahn's algorithm over the direct edges.
    const std::size_t n = plan.size();
    std::vector<std::vector<Label>> succ(n);
    std::vector<int> indegree(n, 0);
    for (const Edge& e : plan.edges()) {
      succ[e.from].push_back(e.to);
      ++indegree[e.to];
    }
    std::vector<Label> ready;
    for (Label s = 0; s < n; ++s) {
      if (indegree[s] == 0) ready.push_back(s);
    }
    while (!ready.empty()) {
      Label s = ready.back();
      ready.pop_back();
      ++out.visits;
      seq.push_back(s);
      for (Label t : succ[s]) {
        ++out.visits;
        if (--indegree[t] == 0) ready.push_back(t);
      }
    }
  }
  std::vector<std::uint8_t> state(prop_count, 0);
  for (Label s : seq) {
    ++out.visits;
    const Operator& op = plan.step(s).fields();
    for (Prop p : op.pre) {
      if (!state[p.id]) out.goals.push_back({s, p});
    }
    for (Prop p : op.dels) state[p.id] = 0;
    for (Prop p : op.adds) state[p.id] = 1;
  }
  std::sort(out.goals.begin(), out.goals.end());
  return out;
}

}  // namespace planlab
