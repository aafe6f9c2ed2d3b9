#include "planlab/core.hpp"
#include "planlab/truth.hpp"

namespace planlab {

bool is_solution(const Plan& plan) { return goal_set(plan, Semantics::mt).empty(); }

bool is_compact_solution(const Plan& plan) {
  if (!is_solution(plan)) throw Error("compactness is only defined for solution plans");
  const std::size_t middle = plan.length();
  if (middle > 20) throw Error("plan too long for exhaustive subplan enumeration");
  // Every strict subplan drops at least one middle step.
  const std::uint64_t all = (std::uint64_t{1} << middle) - 1;
  for (std::uint64_t keep = 0; keep < all; ++keep) {
    std::vector<Label> labels{kInitialStep, kFinalStep};
    for (std::size_t i = 0; i < middle; ++i) {
      if ((keep >> i) & 1U) labels.push_back(static_cast<Label>(i + 2));
    }
    if (is_solution(plan.restrict_to(labels))) return false;
  }
  return true;
}

}  // namespace planlab
