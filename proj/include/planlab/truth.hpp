#pragma once

// Truth of preconditions in totally and partially ordered plans.
//
// Only unconditional (effective) adds and deletes change truth; a step's
// conditional effects contribute nothing until it is specialized.

#include <compare>
#include <span>
#include <vector>

#include "planlab/core.hpp"

namespace planlab {

enum class ModalStatus { necessarily_true, necessarily_false, ambiguous };

enum class Semantics { to, ua, mt };

enum class InteractionMode { basic, conditional };

struct GoalEntry {
  Label needer = 0;
  Prop condition;
  auto operator<=>(const GoalEntry&) const = default;
};

using GoalSet = std::vector<GoalEntry>;

const char* to_string(ModalStatus s);

// c is added by a step before `needer` in `sequence` and not deleted by any
// step in between.
bool true_in_sequence(const Plan& plan, std::span<const Label> sequence, Label needer, Prop c);
// Throws Error unless the plan is totally ordered.
bool true_in_total_order(const Plan& plan, Label needer, Prop c);

// Exact: evaluates every linearization.
ModalStatus modal_status(const Plan& plan, Label needer, Prop c);
// Evaluates one arbitrary linearization. Agrees with modal_status whenever
// the plan is unambiguous; meaningless otherwise.
ModalStatus modal_status_unambiguous(const Plan& plan, Label needer, Prop c);

// The deleter of c before `needer` with no other deleter of c between it and
// `needer`; the initial step when nothing before `needer` deletes c. Throws
// Error when several mutually unordered candidates exist.
Label last_deleter(const Plan& plan, Prop c, Label needer);

bool operators_interact(const Operator& a, const Operator& b, InteractionMode mode);
// False whenever s1 and s2 are ordered.
bool interacts(const Plan& plan, Label s1, Label s2, InteractionMode mode);

// Every effective precondition is necessarily true or necessarily false.
bool is_unambiguous(const Plan& plan);

// Exact goal set under the given semantics, sorted by (needer, proposition
// name). TO requires a totally ordered plan.
GoalSet goal_set(const Plan& plan, Semantics semantics);

// Single forward pass over one linearization, as used by TO and by the
// unambiguous-plan planners. `visits` counts step visits plus, for partially
// ordered plans, the topological sort's node and edge visits.
struct GoalUpdate {
  GoalSet goals;
  std::size_t visits = 0;
};
GoalUpdate false_preconditions(const Plan& plan, std::size_t prop_count);

}  // namespace planlab
