#include "planlab/core.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <set>
#include <sstream>

namespace planlab {

PropList make_prop_list(std::vector<Prop> props) {
  std::sort(props.begin(), props.end());
  props.erase(std::unique(props.begin(), props.end()), props.end());
  return props;
}

bool contains(const PropList& set, Prop p) {
  return std::binary_search(set.begin(), set.end(), p);
}

bool intersects(const PropList& a, const PropList& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

bool is_subset(const PropList& sub, const PropList& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

PropList set_union(const PropList& a, const PropList& b) {
  PropList out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

PropList set_difference(const PropList& a, const PropList& b) {
  PropList out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool Operator::possibly_adds(Prop p) const {
  if (adds_prop(p)) return true;
  return std::any_of(cadds.begin(), cadds.end(), [&](const CondEffect& ce) { return ce.effect == p; });
}

bool Operator::possibly_dels(Prop p) const {
  if (dels_prop(p)) return true;
  return std::any_of(cdels.begin(), cdels.end(), [&](const CondEffect& ce) { return ce.effect == p; });
}

PropList Operator::conditions() const {
  std::vector<Prop> all(pre.begin(), pre.end());
  for (const auto& ce : cadds) all.insert(all.end(), ce.deps.begin(), ce.deps.end());
  for (const auto& ce : cdels) all.insert(all.end(), ce.deps.begin(), ce.deps.end());
  return make_prop_list(std::move(all));
}

PropList Operator::possible_adds() const {
  std::vector<Prop> all(adds.begin(), adds.end());
  for (const auto& ce : cadds) all.push_back(ce.effect);
  return make_prop_list(std::move(all));
}

PropList Operator::possible_dels() const {
  std::vector<Prop> all(dels.begin(), dels.end());
  for (const auto& ce : cdels) all.push_back(ce.effect);
  return make_prop_list(std::move(all));
}

std::optional<std::string> check_operator(const Operator& op, bool specialized) {
  if (!is_subset(op.dels, op.pre)) {
    return "operator " + op.name + ": every deleted condition must be a precondition (dels ⊆ pre)";
  }
  for (const auto& ce : op.cdels) {
    bool covered = contains(ce.deps, ce.effect) || (specialized && contains(op.pre, ce.effect));
    if (!covered) {
      return "operator " + op.name +
             ": every conditional delete must be one of its dependency conditions (e ∈ D)";
    }
  }
  return std::nullopt;
}

SymbolTable::SymbolTable(std::vector<std::string> sorted_names) : names_(std::move(sorted_names)) {
  for (std::uint32_t i = 0; i < names_.size(); ++i) index_.emplace(names_[i], i);
}

std::optional<Prop> SymbolTable::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return Prop{it->second};
}

Prop SymbolTable::at(std::string_view name) const {
  auto p = find(name);
  if (!p) throw Error("unknown proposition '" + std::string(name) + "'");
  return *p;
}

std::span<const std::size_t> Problem::adders(Prop p) const {
  if (p.id >= adders_.size()) return {};
  return adders_[p.id];
}

std::span<const Achiever> Problem::achievers(Prop p) const {
  if (p.id >= achievers_.size()) return {};
  return achievers_[p.id];
}

std::string Problem::format(const PropList& props) const {
  std::string out;
  for (Prop p : props) {
    if (!out.empty()) out += ' ';
    out += prop_name(p);
  }
  return out;
}

std::vector<std::string> Problem::lint() const {
  std::vector<bool> mentioned(prop_count(), false);
  auto mark = [&](const PropList& ps) {
    for (Prop p : ps) mentioned[p.id] = true;
  };
  for (const auto& op : library_) {
    mark(op.pre);
    mark(op.adds);
    mark(op.dels);
    for (const auto& ce : op.cadds) {
      mark(ce.deps);
      mentioned[ce.effect.id] = true;
    }
    for (const auto& ce : op.cdels) {
      mark(ce.deps);
      mentioned[ce.effect.id] = true;
    }
  }
  std::vector<std::string> warnings;
  for (Prop g : goals_) {
    if (!mentioned[g.id] && !contains(init_, g)) {
      warnings.push_back("goal " + prop_name(g) + " is neither initially true nor mentioned by any operator");
    }
  }
  for (Prop i : init_) {
    if (!mentioned[i.id] && !contains(goals_, i)) {
      warnings.push_back("initial proposition " + prop_name(i) + " is not mentioned by any operator");
    }
  }
  return warnings;
}

ProblemBuilder& ProblemBuilder::init(std::vector<std::string> props) {
  init_ = std::move(props);
  return *this;
}

ProblemBuilder& ProblemBuilder::goals(std::vector<std::string> props) {
  goals_ = std::move(props);
  return *this;
}

ProblemBuilder& ProblemBuilder::op(OperatorSpec spec) {
  ops_.push_back(std::move(spec));
  return *this;
}

Problem ProblemBuilder::build() const {
  std::set<std::string> names(init_.begin(), init_.end());
  names.insert(goals_.begin(), goals_.end());
  for (const auto& o : ops_) {
    names.insert(o.pre.begin(), o.pre.end());
    names.insert(o.adds.begin(), o.adds.end());
    names.insert(o.dels.begin(), o.dels.end());
    for (const auto& ce : o.cadds) {
      names.insert(ce.deps.begin(), ce.deps.end());
      names.insert(ce.effect);
    }
    for (const auto& ce : o.cdels) {
      names.insert(ce.deps.begin(), ce.deps.end());
      names.insert(ce.effect);
    }
  }
  auto symbols = std::make_shared<SymbolTable>(std::vector<std::string>(names.begin(), names.end()));
  auto intern = [&](const std::vector<std::string>& v) {
    std::vector<Prop> ps;
    ps.reserve(v.size());
    for (const auto& s : v) ps.push_back(symbols->at(s));
    return make_prop_list(std::move(ps));
  };
  auto intern_cond = [&](const std::vector<CondEffectSpec>& v) {
    std::vector<CondEffect> out;
    for (const auto& ce : v) out.push_back({intern(ce.deps), symbols->at(ce.effect), false});
    return out;
  };

  Problem p;
  p.name_ = name_;
  p.symbols_ = symbols;
  p.init_ = intern(init_);
  p.goals_ = intern(goals_);
  std::set<std::string> op_names;
  for (const auto& o : ops_) {
    if (!op_names.insert(o.name).second) throw Error("duplicate operator name '" + o.name + "'");
    Operator op{o.name, intern(o.pre), intern(o.adds), intern(o.dels), intern_cond(o.cadds), intern_cond(o.cdels)};
    if (auto err = check_operator(op)) throw Error(*err);
    if (!op.cadds.empty() || !op.cdels.empty()) p.conditional_ = true;
    p.library_.push_back(std::move(op));
  }
  p.adders_.assign(symbols->size(), {});
  p.achievers_.assign(symbols->size(), {});
  for (std::size_t i = 0; i < p.library_.size(); ++i) {
    for (Prop a : p.library_[i].adds) {
      p.adders_[a.id].push_back(i);
      p.achievers_[a.id].push_back({i, std::nullopt});
    }
  }
  for (std::size_t i = 0; i < p.library_.size(); ++i) {
    const auto& op = p.library_[i];
    for (std::size_t k = 0; k < op.cadds.size(); ++k) {
      Prop e = op.cadds[k].effect;
      // An unconditional add of the same proposition already covers it.
      if (op.adds_prop(e)) continue;
      p.achievers_[e.id].push_back({i, k});
    }
  }
  return p;
}

bool Step::same_kind(const Step& other) const {
  if (schema != other.schema) return false;
  if (op == other.op) return true;
  return *op == *other.op;
}

std::uint64_t next_plan_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

Plan Plan::initial(const Problem& problem) {
  Plan p;
  auto init = std::make_shared<Operator>();
  init->name = "*init*";
  init->adds = problem.init();
  auto fin = std::make_shared<Operator>();
  fin->name = "*goal*";
  fin->pre = problem.goals();
  p.steps_.push_back({Step::kInitial, std::move(init)});
  p.steps_.push_back({Step::kFinal, std::move(fin)});
  p.reach_.assign(2, 0);
  p.add_order(kInitialStep, kFinalStep);
  p.id_ = next_plan_id();
  return p;
}

const Step& Plan::step(Label l) const {
  if (l >= steps_.size()) throw Error("unknown step label " + std::to_string(l));
  return steps_[l];
}

Relation Plan::relation(Label a, Label b) const {
  if (a >= size() || b >= size()) {
    throw Error("unknown step label " + std::to_string(a >= size() ? a : b));
  }
  if (a == b) throw Error("ordering relation of a step with itself");
  if (before(a, b)) return Relation::before;
  if (before(b, a)) return Relation::after;
  return Relation::unordered;
}

std::size_t Plan::reduced_edge_count() const {
  std::size_t count = 0;
  for (Label a = 0; a < size(); ++a) {
    std::uint64_t implied = 0;
    for (Label c = 0; c < size(); ++c) {
      if (before(a, c)) implied |= reach_[c];
    }
    count += static_cast<std::size_t>(std::popcount(reach_[a] & ~implied));
  }
  return count;
}

std::uint64_t Plan::predecessors(Label s) const {
  std::uint64_t mask = 0;
  for (Label x = 0; x < size(); ++x) {
    if (before(x, s)) mask |= std::uint64_t{1} << x;
  }
  return mask;
}

bool Plan::totally_ordered() const {
  // A strict partial order is total iff closure sizes are all distinct
  // and cover 0..n-1.
  std::uint64_t seen = 0;
  for (Label s = 0; s < size(); ++s) {
    auto k = static_cast<unsigned>(std::popcount(reach_[s]));
    if (k >= size() || ((seen >> k) & 1U)) return false;
    seen |= std::uint64_t{1} << k;
  }
  return true;
}

std::vector<Label> Plan::linear_order() const {
  // Fewest successors last; for a total order this sorts by position.
  std::vector<Label> order(size());
  for (Label s = 0; s < size(); ++s) order[s] = s;
  std::stable_sort(order.begin(), order.end(), [&](Label a, Label b) {
    return std::popcount(reach_[a]) > std::popcount(reach_[b]);
  });
  return order;
}

Plan Plan::extend() const {
  Plan child = *this;
  child.parent_ = id_;
  child.depth_ = depth_ + 1;
  child.id_ = next_plan_id();
  return child;
}

Label Plan::add_step(Step step) {
  if (steps_.size() >= kMaxSteps) throw Error("plan exceeds the maximum of 64 steps");
  steps_.push_back(std::move(step));
  reach_.push_back(0);
  return static_cast<Label>(steps_.size() - 1);
}

bool Plan::add_order(Label a, Label b) {
  if (a >= size() || b >= size()) throw Error("unknown step label in ordering");
  if (a == b || before(b, a)) return false;
  if (std::find(edges_.begin(), edges_.end(), Edge{a, b}) != edges_.end()) return true;
  edges_.push_back({a, b});
  std::uint64_t gained = reach_[b] | (std::uint64_t{1} << b);
  for (Label x = 0; x < size(); ++x) {
    if (x == a || before(x, a)) reach_[x] |= gained;
  }
  return true;
}

void Plan::replace_step(Label l, Step step) {
  if (l >= size()) throw Error("unknown step label " + std::to_string(l));
  steps_[l] = std::move(step);
}

Plan Plan::restrict_to(std::span<const Label> keep) const {
  std::vector<Label> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() < 2 || sorted[0] != kInitialStep || sorted[1] != kFinalStep) {
    throw Error("a subplan must keep the initial and final steps");
  }
  Plan out;
  out.id_ = next_plan_id();
  for (Label l : sorted) out.add_step(step(l));
  // Induced order: connect every ordered pair, which keeps the restriction
  // exact even when the connecting path ran through removed steps.
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = 0; j < sorted.size(); ++j) {
      if (i != j && before(sorted[i], sorted[j])) out.add_order(static_cast<Label>(i), static_cast<Label>(j));
    }
  }
  return out;
}

Plan Plan::with_total_order(std::span<const Label> sequence) const {
  if (sequence.size() != size()) throw Error("total order must mention every step exactly once");
  Plan out = *this;
  out.id_ = next_plan_id();
  for (std::size_t i = 0; i + 1 < sequence.size(); ++i) {
    if (!out.add_order(sequence[i], sequence[i + 1])) {
      throw Error("sequence is inconsistent with the plan's order");
    }
  }
  return out;
}

std::string Plan::describe(const Problem& problem) const {
  std::ostringstream os;
  auto name = [&](Label l) {
    const Step& s = steps_[l];
    if (s.schema == Step::kInitial) return std::string("init");
    if (s.schema == Step::kFinal) return std::string("goal");
    return s.fields().name + "#" + std::to_string(l);
  };
  if (totally_ordered()) {
    bool first = true;
    for (Label l : linear_order()) {
      if (l == kInitialStep || l == kFinalStep) continue;
      os << (first ? "" : " < ") << name(l);
      first = false;
    }
    return os.str();
  }
  bool first = true;
  for (Label a = 2; a < size(); ++a) {
    os << (first ? "" : ", ") << name(a);
    first = false;
  }
  os << " | ";
  first = true;
  for (Label a = 2; a < size(); ++a) {
    for (Label b = 2; b < size(); ++b) {
      if (a != b && before(a, b)) {
        os << (first ? "" : ", ") << name(a) << "<" << name(b);
        first = false;
      }
    }
  }
  (void)problem;
  return os.str();
}

Relation ordering_relation(const Plan& plan, Label a, Label b) { return plan.relation(a, b); }

namespace {

bool visit_linearizations(const Plan& plan, std::vector<Label>& prefix, std::uint64_t placed,
                          std::size_t& visited, const std::function<bool(std::span<const Label>)>& fn) {
  const std::size_t n = plan.size();
  if (prefix.size() == n) {
    ++visited;
    return fn(prefix);
  }
  for (Label s = 0; s < n; ++s) {
    if ((placed >> s) & 1U) continue;
    // Every predecessor of s must already be placed.
    if ((plan.predecessors(s) & ~placed) != 0) continue;
    prefix.push_back(s);
    bool go_on = visit_linearizations(plan, prefix, placed | (std::uint64_t{1} << s), visited, fn);
    prefix.pop_back();
    if (!go_on) return false;
  }
  return true;
}

}  // namespace

std::size_t for_each_linearization(const Plan& plan, const std::function<bool(std::span<const Label>)>& fn) {
  std::vector<Label> prefix;
  prefix.reserve(plan.size());
  std::size_t visited = 0;
  visit_linearizations(plan, prefix, 0, visited, fn);
  return visited;
}

std::vector<Plan> linearizations(const Plan& plan) {
  std::vector<Plan> out;
  for_each_linearization(plan, [&](std::span<const Label> seq) {
    out.push_back(plan.with_total_order(seq));
    return true;
  });
  return out;
}

std::uint64_t count_linearizations(const Plan& plan) {
  // Dynamic programming over downward-closed sets of placed steps.
  const std::size_t n = plan.size();
  if (n == 0) return 1;
  std::vector<std::uint64_t> preds(n);
  for (Label s = 0; s < n; ++s) preds[s] = plan.predecessors(s);
  std::map<std::uint64_t, std::uint64_t> ways{{0, 1}};
  for (std::size_t round = 0; round < n; ++round) {
    std::map<std::uint64_t, std::uint64_t> next;
    for (auto [placed, count] : ways) {
      for (Label s = 0; s < n; ++s) {
        if ((placed >> s) & 1U) continue;
        if ((preds[s] & ~placed) != 0) continue;
        next[placed | (std::uint64_t{1} << s)] += count;
      }
    }
    ways = std::move(next);
  }
  return ways.begin()->second;
}

namespace {

// Backtracking search for an order-preserving bijection (or injection, when
// `exact_size` is false) from `a` into `b` restricted to same-kind steps.
class StepMatcher {
 public:
  StepMatcher(const Plan& a, const Plan& b) : a_(a), b_(b), map_(a.size(), 0) {}

  bool run() {
    used_ = 0;
    return assign(0);
  }

 private:
  bool consistent(Label x, Label fx) const {
    for (Label y = 0; y < x; ++y) {
      Label fy = map_[y];
      if (a_.before(x, y) != b_.before(fx, fy)) return false;
      if (a_.before(y, x) != b_.before(fy, fx)) return false;
    }
    return true;
  }

  bool try_candidate(Label x, Label c) {
    if ((used_ >> c) & 1U) return false;
    if (!a_.step(x).same_kind(b_.step(c))) return false;
    map_[x] = c;
    if (!consistent(x, c)) return false;
    used_ |= std::uint64_t{1} << c;
    if (assign(x + 1)) return true;
    used_ &= ~(std::uint64_t{1} << c);
    return false;
  }

  bool assign(Label x) {
    if (x == a_.size()) return true;
    // Identity first: corresponding derivations share labels.
    if (x < b_.size() && try_candidate(x, x)) return true;
    for (Label c = 0; c < b_.size(); ++c) {
      if (c == x) continue;
      if (try_candidate(x, c)) return true;
    }
    return false;
  }

  const Plan& a_;
  const Plan& b_;
  std::vector<Label> map_;
  std::uint64_t used_ = 0;
};

}  // namespace

bool equivalent(const Plan& a, const Plan& b) {
  if (a.size() != b.size()) return false;
  return StepMatcher(a, b).run();
}

bool is_linearization(const Plan& t, const Plan& u) {
  if (t.size() != u.size() || !t.totally_ordered()) return false;
  // Walk t's sequence and place a still-unused step of u whose predecessors
  // are all placed; backtrack over same-kind alternatives.
  const std::vector<Label> seq = t.linear_order();
  const std::size_t n = u.size();
  std::vector<std::uint64_t> preds(n);
  for (Label s = 0; s < n; ++s) preds[s] = u.predecessors(s);
  std::function<bool(std::size_t, std::uint64_t)> place = [&](std::size_t pos, std::uint64_t placed) {
    if (pos == seq.size()) return true;
    const Step& want = t.step(seq[pos]);
    auto attempt = [&](Label s) {
      if ((placed >> s) & 1U) return false;
      if ((preds[s] & ~placed) != 0) return false;
      if (!u.step(s).same_kind(want)) return false;
      return place(pos + 1, placed | (std::uint64_t{1} << s));
    };
    if (seq[pos] < n && attempt(seq[pos])) return true;
    for (Label s = 0; s < n; ++s) {
      if (s != seq[pos] && attempt(s)) return true;
    }
    return false;
  };
  return place(0, 0);
}

bool is_labelled_linearization(const Plan& t, const Plan& u) {
  if (t.size() != u.size() || !t.totally_ordered()) return false;
  for (Label s = 0; s < t.size(); ++s) {
    if (!t.step(s).same_kind(u.step(s))) return false;
    if ((u.successors(s) & ~t.successors(s)) != 0) return false;
  }
  return true;
}

bool is_subplan(const Plan& sub, const Plan& super) {
  if (sub.size() > super.size()) return false;
  return StepMatcher(sub, super).run();
}

}  // namespace planlab
