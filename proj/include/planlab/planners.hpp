#pragma once

// Plan-extension generators. Each maps an unfinished plan to the complete,
// deterministically ordered list of its child plans:
//
//   TO   total order: insert the achiever at every position between the last
//        deleter and the needing step.
//   UA   partial order: order the achiever only against interacting steps,
//        branching both ways on each interaction.
//   TOC/UAC  the same over operators with conditional effects, with
//        specialization and a role-selection pass.
//   MT   Tweak-like: reuse or add an achiever, then resolve each threatening
//        deleter by demotion or a white knight.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "planlab/core.hpp"
#include "planlab/truth.hpp"

namespace planlab {

enum class PlannerKind { to, ua, toc, uac, mt };

const char* to_string(PlannerKind k);
std::optional<PlannerKind> parse_planner(std::string_view s);
Semantics semantics_of(PlannerKind k);

struct GoalSelection {
  enum class Mode { deterministic, seeded };
  Mode mode = Mode::deterministic;
  std::uint64_t seed = 0;
};

struct PlannerConfig {
  PlannerKind planner = PlannerKind::ua;
  GoalSelection goal_selection;
  std::size_t step_ceiling = kDefaultStepCeiling;
  // Specialize only effects whose dependency set is a strict subset of D.
  bool strict_specialize = false;
};

// Work done to produce one plan.
struct StepCost {
  std::size_t step4_edge_visits = 0;
  std::size_t role_visits = 0;
  std::size_t step5_visits = 0;
};

// A plan together with its open goals under the generator's semantics.
struct OpenPlan {
  Plan plan;
  GoalSet goals;
  StepCost cost;
  bool solved() const { return goals.empty(); }
};

struct ExtensionCounters {
  std::size_t step4_edge_visits = 0;  // max over children
  std::size_t step5_visits = 0;       // max over children
  std::size_t children_count = 0;
};

struct ExtensionResult {
  std::vector<OpenPlan> children;
  ExtensionCounters counters;
  GoalEntry selected;
};

Operator specialize(const Operator& op, const PropList& deps, bool strict = false);
Step specialize(const Step& step, const PropList& deps, bool strict = false);

class Generator {
 public:
  Generator(const Problem& problem, PlannerConfig config);

  const Problem& problem() const { return *problem_; }
  const PlannerConfig& config() const { return config_; }
  PlannerKind kind() const { return config_.planner; }
  Semantics semantics() const { return semantics_of(config_.planner); }

  OpenPlan root() const;
  // Goal set of a plan this generator produced. TO and the UA family use a
  // single forward pass; MT evaluates every linearization.
  GoalUpdate goals(const Plan& plan) const;
  GoalEntry select_goal(const GoalSet& goals) const;
  // Throws Error when the plan is already solved or the step ceiling would
  // be exceeded.
  ExtensionResult expand(const OpenPlan& parent) const;

  // Shared copy of a library operator for use in steps.
  const std::shared_ptr<const Operator>& library_op(std::size_t index) const { return library_ops_[index]; }

 private:
  const Problem* problem_;
  PlannerConfig config_;
  std::vector<std::shared_ptr<const Operator>> library_ops_;
};

ExtensionResult to_children(const Generator& gen, const OpenPlan& parent);
ExtensionResult ua_children(const Generator& gen, const OpenPlan& parent);
ExtensionResult toc_children(const Generator& gen, const OpenPlan& parent);
ExtensionResult uac_children(const Generator& gen, const OpenPlan& parent);
ExtensionResult mt_children(const Generator& gen, const OpenPlan& parent);

}  // namespace planlab
