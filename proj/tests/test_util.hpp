#pragma once

#include <algorithm>
#include <initializer_list>
#include <numeric>
#include <string_view>
#include <utility>
#include <vector>

#include "planlab/core.hpp"
#include "planlab/planners.hpp"

namespace planlab::testing {

inline Step step_of(const Problem& p, std::string_view name) {
  const auto& lib = p.library();
  for (std::size_t i = 0; i < lib.size(); ++i) {
    if (lib[i].name == name) return {static_cast<int>(i), std::make_shared<const Operator>(lib[i])};
  }
  throw Error("no operator " + std::string(name));
}

// A plan with the named library steps (labels 2, 3, ... in argument order),
// each between the initial and final step, plus the given orderings.
inline Plan plan_with(const Problem& p, std::initializer_list<std::string_view> ops,
                      std::initializer_list<std::pair<Label, Label>> order = {}) {
  Plan plan = Plan::initial(p).extend();
  for (auto name : ops) {
    Label s = plan.add_step(step_of(p, name));
    plan.add_order(kInitialStep, s);
    plan.add_order(s, kFinalStep);
  }
  for (auto [a, b] : order) plan.add_order(a, b);
  return plan;
}

inline OpenPlan open(const Generator& gen, Plan plan) {
  auto goals = gen.goals(plan).goals;
  return {std::move(plan), std::move(goals), {}};
}

// Brute force: permutations of the middle labels consistent with the order.
inline std::size_t brute_force_linearizations(const Plan& plan) {
  std::vector<Label> middle(plan.size() - 2);
  std::iota(middle.begin(), middle.end(), Label{2});
  std::size_t count = 0;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < middle.size() && ok; ++i) {
      for (std::size_t j = i + 1; j < middle.size() && ok; ++j) ok = !plan.before(middle[j], middle[i]);
    }
    count += ok ? 1 : 0;
  } while (std::next_permutation(middle.begin(), middle.end()));
  return count;
}

inline Prop prop(const Problem& p, std::string_view name) { return p.symbols().at(name); }

}  // namespace planlab::testing
