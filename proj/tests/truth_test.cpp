#include <gtest/gtest.h>

#include "planlab/domains.hpp"
#include "planlab/truth.hpp"
#include "test_util.hpp"

namespace planlab {
namespace {

using testing::plan_with;
using testing::prop;

// init adds p; "del" deletes it, "add" adds it, "need" requires it.
Problem pdq() {
  ProblemBuilder b("pdq");
  b.init({"p"}).goals({"p"});
  b.op({"del", {"p"}, {"x"}, {"p"}, {}, {}});
  b.op({"add", {}, {"p"}, {}, {}, {}});
  b.op({"need", {"p"}, {"y"}, {}, {}, {}});
  b.op({"cond", {}, {}, {}, {{{"x"}, "p"}}, {}});
  return b.build();
}

TEST(TotalOrderTruth, InitAddsWithoutDeleter) {
  Problem p = pdq();
  EXPECT_TRUE(true_in_total_order(Plan::initial(p), kFinalStep, prop(p, "p")));
}

TEST(TotalOrderTruth, DeleterFalsifies) {
  Problem p = pdq();
  Plan plan = plan_with(p, {"del"});
  EXPECT_FALSE(true_in_total_order(plan, kFinalStep, prop(p, "p")));
  EXPECT_TRUE(true_in_total_order(plan, 2, prop(p, "p")));
}

TEST(TotalOrderTruth, D1S1LaterOperatorDeletesEarlierInput) {
  Problem p = d1s1_problem({1, 2});
  Plan plan = plan_with(p, {"o1", "o2"}, {{3, 2}});
  EXPECT_FALSE(true_in_total_order(plan, 2, prop(p, "i1")));
}

TEST(TotalOrderTruth, RejectsPartialOrders) {
  Problem p = pdq();
  EXPECT_THROW(true_in_total_order(plan_with(p, {"del", "add"}), kFinalStep, prop(p, "p")), Error);
}

TEST(ModalStatus, TotalOrderNeverAmbiguous) {
  Problem p = pdq();
  for (auto plan : {plan_with(p, {"del", "add"}, {{2, 3}}), plan_with(p, {"del", "add"}, {{3, 2}})}) {
    for (Label s = 1; s < plan.size(); ++s) {
      for (Prop c : plan.step(s).fields().pre) EXPECT_NE(modal_status(plan, s, c), ModalStatus::ambiguous);
    }
  }
}

TEST(ModalStatus, UnorderedAdderAndDeleterAreAmbiguous) {
  Problem p = pdq();
  Plan plan = plan_with(p, {"del", "add"});
  EXPECT_EQ(modal_status(plan, kFinalStep, prop(p, "p")), ModalStatus::ambiguous);
  EXPECT_FALSE(is_unambiguous(plan));
}

TEST(ModalStatus, Fig4ChildMakesConditionTrue) {
  Problem p = fixture("fig4");
  Plan plan = *depicted_plan("fig4", p);
  Label add = plan.add_step(testing::step_of(p, "op_add"));
  plan.add_order(2, add);
  plan.add_order(add, 5);
  plan.add_order(add, 3);
  EXPECT_EQ(modal_status(plan, 5, prop(p, "c")), ModalStatus::necessarily_true);
  EXPECT_TRUE(is_unambiguous(plan));
}

TEST(ModalStatus, UnambiguousShortcutAgreesOnUnambiguousPlans) {
  Problem p = fixture("fig4");
  Plan plan = *depicted_plan("fig4", p);
  ASSERT_TRUE(is_unambiguous(plan));
  for (Label s = 1; s < plan.size(); ++s) {
    for (Prop c : plan.step(s).fields().pre) EXPECT_EQ(modal_status_unambiguous(plan, s, c), modal_status(plan, s, c));
  }
}

TEST(ModalStatus, ConditionalAddsAreInert) {
  Problem p = pdq();
  Plan plan = plan_with(p, {"del", "cond"}, {{2, 3}});
  EXPECT_FALSE(true_in_total_order(plan, kFinalStep, prop(p, "p")));
}

TEST(LastDeleter, DefaultsToInitialStep) {
  Problem p = pdq();
  EXPECT_EQ(last_deleter(Plan::initial(p), prop(p, "p"), kFinalStep), kInitialStep);
}

TEST(LastDeleter, PicksLatestOfChain) {
  Problem p = pdq();
  Plan plan = plan_with(p, {"del", "del", "need"}, {{2, 3}, {3, 4}});
  EXPECT_EQ(last_deleter(plan, prop(p, "p"), 4), 3u);
}

TEST(LastDeleter, D1S1) {
  Problem p = d1s1_problem({1, 2});
  Plan plan = plan_with(p, {"o1", "o2"}, {{3, 2}});
  EXPECT_EQ(last_deleter(plan, prop(p, "i1"), 2), 3u);
}

TEST(LastDeleter, ThrowsOnUnorderedCandidates) {
  Problem p = pdq();
  Plan plan = plan_with(p, {"del", "del"});
  EXPECT_THROW(last_deleter(plan, prop(p, "p"), kFinalStep), Error);
}

TEST(Interacts, OrderedStepsNeverInteract) {
  Problem p = pdq();
  Plan plan = plan_with(p, {"add", "need"}, {{2, 3}});
  EXPECT_FALSE(interacts(plan, 2, 3, InteractionMode::basic));
  EXPECT_FALSE(interacts(plan, 2, 3, InteractionMode::conditional));
}

TEST(Interacts, AdderAndNeederInteract) {
  Problem p = pdq();
  Plan plan = plan_with(p, {"add", "need"});
  EXPECT_TRUE(interacts(plan, 2, 3, InteractionMode::basic));
  EXPECT_TRUE(interacts(plan, 3, 2, InteractionMode::basic));
}

TEST(Interacts, ConditionalAddOnlyInConditionalMode) {
  Problem p = pdq();
  Plan plan = plan_with(p, {"cond", "need"});
  EXPECT_FALSE(interacts(plan, 2, 3, InteractionMode::basic));
  EXPECT_TRUE(interacts(plan, 2, 3, InteractionMode::conditional));
}

TEST(Unambiguous, TotalOrderIsUnambiguous) {
  Problem p = pdq();
  EXPECT_TRUE(is_unambiguous(plan_with(p, {"del", "add", "need"}, {{2, 3}, {3, 4}})));
}

TEST(GoalSet, SolvedPlanIsEmptyUnderAllSemantics) {
  Problem p = d1s1_problem({1, 2});
  Plan plan = plan_with(p, {"o1", "o2"}, {{2, 3}});
  for (Semantics s : {Semantics::to, Semantics::ua, Semantics::mt}) EXPECT_TRUE(goal_set(plan, s).empty());
}

TEST(GoalSet, SussmanRoot) {
  Problem p = fixture("sussman");
  GoalSet goals = goal_set(Plan::initial(p), Semantics::to);
  ASSERT_EQ(goals.size(), 2u);
  EXPECT_EQ(goals[0], (GoalEntry{kFinalStep, prop(p, "on_a_b")}));
  EXPECT_EQ(goals[1], (GoalEntry{kFinalStep, prop(p, "on_b_c")}));
}

TEST(GoalSet, AmbiguousEntryOnlyUnderMT) {
  Problem p = pdq();
  Plan plan = plan_with(p, {"del", "add"});
  GoalEntry entry{kFinalStep, prop(p, "p")};
  auto mt = goal_set(plan, Semantics::mt);
  auto ua = goal_set(plan, Semantics::ua);
  EXPECT_NE(std::find(mt.begin(), mt.end(), entry), mt.end());
  EXPECT_EQ(std::find(ua.begin(), ua.end(), entry), ua.end());
}

TEST(GoalSet, ForwardPassMatchesExactSetOnUnambiguousPlans) {
  Problem p = d1s1_problem({1, 2, 3});
  Plan plan = plan_with(p, {"o3", "o1"}, {{3, 2}});
  ASSERT_TRUE(is_unambiguous(plan));
  EXPECT_EQ(false_preconditions(plan, p.prop_count()).goals, goal_set(plan, Semantics::ua));
}

}  // namespace
}  // namespace planlab
