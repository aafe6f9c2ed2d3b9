#include "planlab/planners.hpp"

#include <algorithm>

namespace planlab {

const char* to_string(PlannerKind k) {
  switch (k) {
    case PlannerKind::to:
      return "to";
    case PlannerKind::ua:
      return "ua";
    case PlannerKind::toc:
      return "toc";
    case PlannerKind::uac:
      return "uac";
    case PlannerKind::mt:
      return "mt";
  }
  return "?";
}

std::optional<PlannerKind> parse_planner(std::string_view s) {
  for (auto k : {PlannerKind::to, PlannerKind::ua, PlannerKind::toc, PlannerKind::uac, PlannerKind::mt}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

Semantics semantics_of(PlannerKind k) {
  switch (k) {
    case PlannerKind::to:
    case PlannerKind::toc:
      return Semantics::to;
    case PlannerKind::ua:
    case PlannerKind::uac:
      return Semantics::ua;
    case PlannerKind::mt:
      return Semantics::mt;
  }
  return Semantics::ua;
}

Operator specialize(const Operator& op, const PropList& deps, bool strict) {
  auto selected = [&](const CondEffect& ce) {
    if (!is_subset(ce.deps, deps)) return false;
    return !strict || ce.deps.size() < deps.size();
  };
  Operator out;
  out.name = op.name;
  out.pre = set_union(op.pre, deps);
  std::vector<Prop> adds(op.adds.begin(), op.adds.end());
  std::vector<Prop> dels(op.dels.begin(), op.dels.end());
  for (const auto& ce : op.cadds) {
    if (selected(ce)) {
      adds.push_back(ce.effect);
    } else {
      out.cadds.push_back({set_difference(ce.deps, deps), ce.effect, ce.marked});
    }
  }
  for (const auto& ce : op.cdels) {
    if (selected(ce)) {
      dels.push_back(ce.effect);
    } else {
      out.cdels.push_back({set_difference(ce.deps, deps), ce.effect, ce.marked});
    }
  }
  out.adds = make_prop_list(std::move(adds));
  out.dels = make_prop_list(std::move(dels));
  return out;
}

Step specialize(const Step& step, const PropList& deps, bool strict) {
  return {step.schema, std::make_shared<const Operator>(specialize(step.fields(), deps, strict))};
}

Generator::Generator(const Problem& problem, PlannerConfig config) : problem_(&problem), config_(config) {
  if (config_.step_ceiling > kMaxSteps) throw Error("step ceiling may not exceed 64");
  for (const auto& op : problem.library()) library_ops_.push_back(std::make_shared<const Operator>(op));
}

OpenPlan Generator::root() const {
  OpenPlan out{Plan::initial(*problem_), {}, {}};
  auto update = goals(out.plan);
  out.goals = std::move(update.goals);
  out.cost.step5_visits = update.visits;
  return out;
}

GoalUpdate Generator::goals(const Plan& plan) const {
  if (semantics() == Semantics::mt) {
    GoalUpdate out;
    out.goals = goal_set(plan, Semantics::mt);
    out.visits = plan.size() * static_cast<std::size_t>(count_linearizations(plan));
    return out;
  }
  return false_preconditions(plan, problem_->prop_count());
}

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

GoalEntry Generator::select_goal(const GoalSet& goals) const {
  if (goals.empty()) throw Error("no goal to select");
  if (config_.goal_selection.mode == GoalSelection::Mode::deterministic) return goals.front();
  // A pure function of the goal set, so corresponding plans pick alike.
  std::uint64_t h = mix(config_.goal_selection.seed);
  for (const auto& g : goals) h = mix(h ^ ((std::uint64_t{g.needer} << 32) | g.condition.id));
  return goals[h % goals.size()];
}

ExtensionResult Generator::expand(const OpenPlan& parent) const {
  switch (config_.planner) {
    case PlannerKind::to:
      return to_children(*this, parent);
    case PlannerKind::ua:
      return ua_children(*this, parent);
    case PlannerKind::toc:
      return toc_children(*this, parent);
    case PlannerKind::uac:
      return uac_children(*this, parent);
    case PlannerKind::mt:
      return mt_children(*this, parent);
  }
  return {};
}

namespace {

struct Draft {
  Plan plan;
  StepCost cost;
};

GoalEntry begin_extension(const Generator& gen, const OpenPlan& parent, std::size_t new_steps) {
  if (parent.solved()) throw Error("cannot extend a solved plan");
  if (parent.plan.size() + new_steps > gen.config().step_ceiling) {
    throw Error("step ceiling of " + std::to_string(gen.config().step_ceiling) + " exceeded");
  }
  return gen.select_goal(parent.goals);
}

ExtensionResult finish(const Generator& gen, GoalEntry selected, std::vector<Draft> drafts) {
  ExtensionResult out;
  out.selected = selected;
  out.children.reserve(drafts.size());
  for (auto& d : drafts) {
    OpenPlan child{std::move(d.plan), {}, d.cost};
    auto update = gen.goals(child.plan);
    child.goals = std::move(update.goals);
    child.cost.step5_visits = update.visits;
    out.counters.step4_edge_visits = std::max(out.counters.step4_edge_visits, child.cost.step4_edge_visits);
    out.counters.step5_visits = std::max(out.counters.step5_visits, child.cost.step5_visits);
    out.children.push_back(std::move(child));
  }
  out.counters.children_count = out.children.size();
  return out;
}

// The candidate steps that can achieve `c`, as (step, kind-of-achievement).
std::vector<Step> achiever_steps(const Generator& gen, Prop c, bool conditional) {
  std::vector<Step> out;
  const Problem& problem = gen.problem();
  if (!conditional) {
    for (std::size_t i : problem.adders(c)) out.push_back({static_cast<int>(i), gen.library_op(i)});
    return out;
  }
  for (const Achiever& a : problem.achievers(c)) {
    Step s{static_cast<int>(a.op), gen.library_op(a.op)};
    if (a.cadd) {
      const PropList deps = s.fields().cadds[*a.cadd].deps;
      s = specialize(s, deps, gen.config().strict_specialize);
      // Under strict-subset specialization the effect may stay conditional.
      if (!s.fields().adds_prop(c)) continue;
    }
    out.push_back(std::move(s));
  }
  return out;
}

void add_boundary_orders(Plan& plan, Label added) {
  plan.add_order(kInitialStep, added);
  plan.add_order(added, kFinalStep);
}

// Total-order insertion of `step` at every position after the last deleter
// of c and before `need`, scanning from `need` backwards.
std::vector<Draft> insert_total(const Plan& parent, const Step& step, Prop c, Label need) {
  const std::vector<Label> seq = parent.linear_order();
  const Label del = last_deleter(parent, c, need);
  const auto pos_need = static_cast<std::size_t>(std::find(seq.begin(), seq.end(), need) - seq.begin());
  const auto pos_del = static_cast<std::size_t>(std::find(seq.begin(), seq.end(), del) - seq.begin());
  std::vector<Draft> out;
  for (std::size_t k = pos_need; k-- > pos_del;) {
    Plan p = parent.extend();
    Label a = p.add_step(step);
    p.add_order(seq[k], a);
    p.add_order(a, seq[k + 1]);
    add_boundary_orders(p, a);
    Draft d{std::move(p), {}};
    // One predecessor edge walked per insertion point.
    d.cost.step4_edge_visits = 1;
    out.push_back(std::move(d));
  }
  return out;
}

// Ordering selection with the labeling scheme: label everything already
// before or after the new step, then branch on each still-unlabeled
// interacting step, relabeling transitively after every choice.
class InteractionResolver {
 public:
  InteractionResolver(const Plan& base, Label added, InteractionMode mode) : added_(added) {
    const std::size_t n = base.size();
    pred_.assign(n, {});
    succ_.assign(n, {});
    for (const Edge& e : base.edges()) {
      succ_[e.from].push_back(e.to);
      pred_[e.to].push_back(e.from);
    }
    std::vector<Mark> marks(n, Mark::none);
    marks[added] = Mark::self;
    std::size_t visits = 0;
    propagate(marks, added, Mark::before, visits);
    propagate(marks, added, Mark::after, visits);
    for (Label s = 0; s < n; ++s) {
      if (marks[s] == Mark::none && interacts(base, s, added, mode)) interacting_.push_back(s);
    }
    branch(base, std::move(marks), 0, visits);
  }

  std::vector<Draft> take() { return std::move(out_); }

 private:
  enum class Mark : std::uint8_t { none, before, after, self };

  void propagate(std::vector<Mark>& marks, Label from, Mark direction, std::size_t& visits) const {
    std::vector<Label> stack{from};
    const auto& adj = direction == Mark::before ? pred_ : succ_;
    while (!stack.empty()) {
      Label x = stack.back();
      stack.pop_back();
      for (Label y : adj[x]) {
        ++visits;
        if (marks[y] != Mark::none) continue;
        marks[y] = direction;
        stack.push_back(y);
      }
    }
  }

  void branch(const Plan& plan, std::vector<Mark> marks, std::size_t i, std::size_t visits) {
    while (i < interacting_.size() && marks[interacting_[i]] != Mark::none) ++i;
    if (i == interacting_.size()) {
      Draft d{plan, {}};
      d.cost.step4_edge_visits = visits;
      out_.push_back(std::move(d));
      return;
    }
    const Label s = interacting_[i];
    {
      Plan p = plan;
      p.add_order(s, added_);
      auto m = marks;
      m[s] = Mark::before;
      std::size_t v = visits;
      propagate(m, s, Mark::before, v);
      branch(p, std::move(m), i + 1, v);
    }
    {
      Plan p = plan;
      p.add_order(added_, s);
      marks[s] = Mark::after;
      propagate(marks, s, Mark::after, visits);
      branch(p, std::move(marks), i + 1, visits);
    }
  }

  Label added_;
  std::vector<std::vector<Label>> pred_;
  std::vector<std::vector<Label>> succ_;
  std::vector<Label> interacting_;
  std::vector<Draft> out_;
};

std::vector<Draft> insert_partial(const Plan& parent, const Step& step, Prop c, Label need, InteractionMode mode) {
  const Label del = last_deleter(parent, c, need);
  Plan p = parent.extend();
  Label a = p.add_step(step);
  add_boundary_orders(p, a);
  p.add_order(del, a);
  p.add_order(a, need);
  InteractionResolver resolver(p, a, mode);
  return resolver.take();
}

// Role selection: branch on marking versus specializing each unmarked
// conditional add that a later step could use.
void select_roles(Draft draft, std::vector<Draft>& out, bool strict) {
  const Plan& plan = draft.plan;
  const std::size_t n = plan.size();
  for (Label s = 0; s < n; ++s) {
    const Operator& op = plan.step(s).fields();
    for (std::size_t k = 0; k < op.cadds.size(); ++k) {
      const CondEffect& ce = op.cadds[k];
      if (ce.marked) continue;
      for (Label u = 0; u < n; ++u) {
        ++draft.cost.role_visits;
        if (!plan.before(s, u) || !plan.step(u).fields().needs(ce.effect)) continue;
        bool clobbered = false;
        for (Label d = 0; d < n && !clobbered; ++d) {
          clobbered = plan.before(s, d) && plan.before(d, u) && plan.step(d).fields().dels_prop(ce.effect);
        }
        if (clobbered) continue;

        Draft marked = draft;
        Operator with_mark = op;
        with_mark.cadds[k].marked = true;
        marked.plan.replace_step(s, {plan.step(s).schema, std::make_shared<const Operator>(std::move(with_mark))});
        Draft specialized = draft;
        specialized.plan.replace_step(s, specialize(plan.step(s), ce.deps, strict));
        select_roles(std::move(marked), out, strict);
        select_roles(std::move(specialized), out, strict);
        return;
      }
    }
  }
  out.push_back(std::move(draft));
}

}  // namespace

ExtensionResult to_children(const Generator& gen, const OpenPlan& parent) {
  const GoalEntry goal = begin_extension(gen, parent, 1);
  std::vector<Draft> drafts;
  for (const Step& s : achiever_steps(gen, goal.condition, false)) {
    auto more = insert_total(parent.plan, s, goal.condition, goal.needer);
    std::move(more.begin(), more.end(), std::back_inserter(drafts));
  }
  return finish(gen, goal, std::move(drafts));
}

ExtensionResult ua_children(const Generator& gen, const OpenPlan& parent) {
  const GoalEntry goal = begin_extension(gen, parent, 1);
  std::vector<Draft> drafts;
  for (const Step& s : achiever_steps(gen, goal.condition, false)) {
    auto more = insert_partial(parent.plan, s, goal.condition, goal.needer, InteractionMode::basic);
    std::move(more.begin(), more.end(), std::back_inserter(drafts));
  }
  return finish(gen, goal, std::move(drafts));
}

ExtensionResult toc_children(const Generator& gen, const OpenPlan& parent) {
  const GoalEntry goal = begin_extension(gen, parent, 1);
  std::vector<Draft> drafts;
  for (const Step& s : achiever_steps(gen, goal.condition, true)) {
    for (auto& d : insert_total(parent.plan, s, goal.condition, goal.needer)) {
      select_roles(std::move(d), drafts, gen.config().strict_specialize);
    }
  }
  return finish(gen, goal, std::move(drafts));
}

ExtensionResult uac_children(const Generator& gen, const OpenPlan& parent) {
  const GoalEntry goal = begin_extension(gen, parent, 1);
  std::vector<Draft> drafts;
  for (const Step& s : achiever_steps(gen, goal.condition, true)) {
    for (auto& d : insert_partial(parent.plan, s, goal.condition, goal.needer, InteractionMode::conditional)) {
      select_roles(std::move(d), drafts, gen.config().strict_specialize);
    }
  }
  return finish(gen, goal, std::move(drafts));
}

namespace {

bool adds_c(const Plan& plan, Label s, Prop c) { return plan.step(s).fields().adds_prop(c); }

// Threat resolution for MT: while some deleter of c may fall between the
// achiever and the needing step without a white knight after it, branch on
// demotion or on protecting it with a knight.
void resolve_threats(Draft draft, Label add, Label need, Prop c, std::vector<Draft>& out) {
  const Plan& plan = draft.plan;
  const std::size_t n = plan.size();
  for (Label d = 0; d < n; ++d) {
    ++draft.cost.step4_edge_visits;
    if (d == add || d == need || !plan.step(d).fields().dels_prop(c)) continue;
    if (plan.before(d, add) || plan.before(need, d)) continue;
    bool protected_by_knight = false;
    for (Label w = 0; w < n && !protected_by_knight; ++w) {
      protected_by_knight = adds_c(plan, w, c) && plan.before(d, w) && plan.before(w, need);
    }
    if (protected_by_knight) continue;

    if (!plan.before(d, need)) {
      Draft demoted = draft;
      demoted.plan.add_order(need, d);
      resolve_threats(std::move(demoted), add, need, c, out);
    }
    for (Label w = 0; w < n; ++w) {
      if (w == d || w == need || !adds_c(plan, w, c)) continue;
      if (plan.before(w, d) || plan.before(need, w)) continue;
      Draft knighted = draft;
      if (!knighted.plan.before(d, w)) knighted.plan.add_order(d, w);
      if (!knighted.plan.before(w, need)) knighted.plan.add_order(w, need);
      resolve_threats(std::move(knighted), add, need, c, out);
    }
    return;
  }
  out.push_back(std::move(draft));
}

}  // namespace

ExtensionResult mt_children(const Generator& gen, const OpenPlan& parent) {
  const GoalEntry goal = begin_extension(gen, parent, 1);
  const Prop c = goal.condition;
  const Label need = goal.needer;
  const Plan& base = parent.plan;
  std::vector<Draft> drafts;

  // Existing steps possibly before the needing step.
  for (Label s = 0; s < base.size(); ++s) {
    if (s == need || base.before(need, s) || !adds_c(base, s, c)) continue;
    Draft d{base.extend(), {}};
    if (!d.plan.before(s, need)) d.plan.add_order(s, need);
    resolve_threats(std::move(d), s, need, c, drafts);
  }
  for (const Step& step : achiever_steps(gen, c, false)) {
    Draft d{base.extend(), {}};
    Label a = d.plan.add_step(step);
    add_boundary_orders(d.plan, a);
    d.plan.add_order(a, need);
    resolve_threats(std::move(d), a, need, c, drafts);
  }
  return finish(gen, goal, std::move(drafts));
}

}  // namespace planlab
