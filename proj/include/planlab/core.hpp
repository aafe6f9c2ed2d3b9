#pragma once

// Plans, steps, operators and problems for propositional plan-space search.
//
// A plan is a set of uniquely labeled steps plus a strict partial order over
// them. Labels are consecutive: 0 is the initial step, 1 the final step, and
// 2, 3, ... are assigned in the order steps are added during a derivation, so
// the label of a step doubles as its index in Plan::steps().

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace planlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Prop {
  std::uint32_t id = 0;
  auto operator<=>(const Prop&) const = default;
};

// Sorted, duplicate-free.
using PropList = std::vector<Prop>;

PropList make_prop_list(std::vector<Prop> props);
bool contains(const PropList& set, Prop p);
bool intersects(const PropList& a, const PropList& b);
bool is_subset(const PropList& sub, const PropList& super);
PropList set_union(const PropList& a, const PropList& b);
PropList set_difference(const PropList& a, const PropList& b);

struct CondEffect {
  PropList deps;
  Prop effect;
  // Role selection committed to not using this effect.
  bool marked = false;
  bool operator==(const CondEffect&) const = default;
};

// An operator schema, or the effective (possibly specialized) fields of a
// step. Conditional effects are inert for truth until specialized.
struct Operator {
  std::string name;
  PropList pre;
  PropList adds;
  PropList dels;
  std::vector<CondEffect> cadds;
  std::vector<CondEffect> cdels;

  bool operator==(const Operator&) const = default;

  bool adds_prop(Prop p) const { return contains(adds, p); }
  bool dels_prop(Prop p) const { return contains(dels, p); }
  bool needs(Prop p) const { return contains(pre, p); }
  bool possibly_adds(Prop p) const;
  bool possibly_dels(Prop p) const;
  // Preconditions plus every dependency condition.
  PropList conditions() const;
  PropList possible_adds() const;
  PropList possible_dels() const;
};

// Returns a description of the first violated schema invariant, or nothing.
// With `specialized` set, a conditional delete may also be covered by the
// preconditions, which is what specialization leaves behind.
std::optional<std::string> check_operator(const Operator& op, bool specialized = false);

class SymbolTable {
 public:
  SymbolTable() = default;
  explicit SymbolTable(std::vector<std::string> sorted_names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Prop p) const { return names_.at(p.id); }
  std::optional<Prop> find(std::string_view name) const;
  Prop at(std::string_view name) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

// Library operators that can achieve a proposition.
struct Achiever {
  std::size_t op = 0;
  // Index into cadds when the achievement is conditional.
  std::optional<std::size_t> cadd;
};

class Problem {
 public:
  const std::string& name() const { return name_; }
  const SymbolTable& symbols() const { return *symbols_; }
  std::size_t prop_count() const { return symbols_->size(); }
  const PropList& init() const { return init_; }
  const PropList& goals() const { return goals_; }
  const std::vector<Operator>& library() const { return library_; }

  // Unconditional adders of p, by library index.
  std::span<const std::size_t> adders(Prop p) const;
  // Every way p can be added, unconditional first, then conditional.
  std::span<const Achiever> achievers(Prop p) const;
  bool has_conditional_effects() const { return conditional_; }

  std::string prop_name(Prop p) const { return symbols_->name(p); }
  std::string format(const PropList& props) const;

  // Propositions mentioned in init/goals that no operator mentions.
  std::vector<std::string> lint() const;

 private:
  friend class ProblemBuilder;
  std::string name_;
  std::shared_ptr<const SymbolTable> symbols_;
  PropList init_;
  PropList goals_;
  std::vector<Operator> library_;
  std::vector<std::vector<std::size_t>> adders_;
  std::vector<std::vector<Achiever>> achievers_;
  bool conditional_ = false;
};

struct CondEffectSpec {
  std::vector<std::string> deps;
  std::string effect;
};

struct OperatorSpec {
  std::string name;
  std::vector<std::string> pre;
  std::vector<std::string> adds;
  std::vector<std::string> dels;
  std::vector<CondEffectSpec> cadds;
  std::vector<CondEffectSpec> cdels;
};

// Builds a Problem from string-named propositions. Propositions are interned
// in lexicographic order so that Prop ordering matches name ordering.
class ProblemBuilder {
 public:
  explicit ProblemBuilder(std::string name) : name_(std::move(name)) {}
  ProblemBuilder& init(std::vector<std::string> props);
  ProblemBuilder& goals(std::vector<std::string> props);
  ProblemBuilder& op(OperatorSpec spec);
  // Throws Error naming the violated invariant.
  Problem build() const;

 private:
  std::string name_;
  std::vector<std::string> init_;
  std::vector<std::string> goals_;
  std::vector<OperatorSpec> ops_;
};

using Label = std::uint32_t;
inline constexpr Label kInitialStep = 0;
inline constexpr Label kFinalStep = 1;
inline constexpr std::size_t kMaxSteps = 64;
inline constexpr std::size_t kDefaultStepCeiling = 32;

struct Step {
  static constexpr int kInitial = -1;
  static constexpr int kFinal = -2;
  // Library index, or kInitial/kFinal.
  int schema = 0;
  std::shared_ptr<const Operator> op;

  const Operator& fields() const { return *op; }
  // Same schema and identical effective fields, marks included.
  bool same_kind(const Step& other) const;
};

enum class Relation { before, after, unordered };

struct Edge {
  Label from;
  Label to;
  bool operator==(const Edge&) const = default;
};

// Steps plus a strict partial order stored as direct edges with a transitive
// closure bitmap per step. Plans are values: extensions copy the parent via
// extend() and then add steps/orderings to the copy before publishing it.
class Plan {
 public:
  Plan() = default;

  static Plan initial(const Problem& problem);

  std::size_t size() const { return steps_.size(); }
  // Number of steps excluding the initial and final steps.
  std::size_t length() const { return steps_.size() < 2 ? 0 : steps_.size() - 2; }
  const Step& step(Label l) const;
  std::span<const Step> steps() const { return steps_; }
  std::span<const Edge> edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  // Edges of the transitive reduction of the order.
  std::size_t reduced_edge_count() const;

  bool before(Label a, Label b) const { return (reach_[a] >> b) & 1U; }
  bool ordered(Label a, Label b) const { return before(a, b) || before(b, a); }
  // Throws Error on unknown labels or a == b.
  Relation relation(Label a, Label b) const;
  // Bitmask of steps after s.
  std::uint64_t successors(Label s) const { return reach_[s]; }
  std::uint64_t predecessors(Label s) const;

  bool totally_ordered() const;
  // A topological order; the unique one when the plan is totally ordered.
  std::vector<Label> linear_order() const;

  std::uint64_t id() const { return id_; }
  std::optional<std::uint64_t> parent() const { return parent_; }
  int depth() const { return depth_; }

  // A copy whose parent is this plan, one level deeper, with a fresh id.
  Plan extend() const;

  // Mutators used while building an extension.
  Label add_step(Step step);
  // Adds a direct edge. Returns false if a == b or b already precedes a
  // (the ordering would be inconsistent); duplicates of an existing direct
  // edge are not stored twice.
  bool add_order(Label a, Label b);
  void replace_step(Label l, Step step);

  // A copy carrying only the given steps (relabelled in ascending order) and
  // the order restricted to them. The initial and final steps must be kept.
  Plan restrict_to(std::span<const Label> keep) const;
  // A plan over the same steps whose order is the given total order plus
  // the existing edges.
  Plan with_total_order(std::span<const Label> sequence) const;

  std::string describe(const Problem& problem) const;

 private:
  std::vector<Step> steps_;
  std::vector<Edge> edges_;
  std::vector<std::uint64_t> reach_;
  std::uint64_t id_ = 0;
  std::optional<std::uint64_t> parent_;
  int depth_ = 0;
};

std::uint64_t next_plan_id();

Relation ordering_relation(const Plan& plan, Label a, Label b);

// Calls fn with each linear extension of the plan's order until fn returns
// false. Returns the number of sequences visited.
std::size_t for_each_linearization(const Plan& plan,
                                   const std::function<bool(std::span<const Label>)>& fn);
std::vector<Plan> linearizations(const Plan& plan);
std::uint64_t count_linearizations(const Plan& plan);

bool equivalent(const Plan& a, const Plan& b);
// t is totally ordered and equivalent to some linear extension of u.
bool is_linearization(const Plan& t, const Plan& u);
// Same as is_linearization with the step bijection fixed to the identity on
// labels. Plans derived through corresponding derivations share labels.
bool is_labelled_linearization(const Plan& t, const Plan& u);
bool is_subplan(const Plan& sub, const Plan& super);

// Every precondition necessarily true. Exact (enumerates linearizations).
bool is_solution(const Plan& plan);
// Throws Error if the plan is not a solution.
bool is_compact_solution(const Plan& plan);

}  // namespace planlab
