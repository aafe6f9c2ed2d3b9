#pragma once

// Exhaustive search-tree enumeration and the machinery that relates a
// partial-order tree to a total-order tree: the linearization map, its
// totality/disjointness/partition checks, extension-lemma oracles, tree
// statistics and JSON dumps.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "planlab/planners.hpp"

namespace planlab {

inline constexpr std::size_t kDefaultNodeCeiling = 1'000'000;

struct TreeNode {
  std::size_t id = 0;
  std::optional<std::size_t> parent;
  int depth = 0;
  OpenPlan node;
  bool solution = false;
  // Expanded (below the depth limit, not a solution) with no children.
  bool dead_end = false;
  // Counters of this node's own expansion; zero if not expanded.
  ExtensionCounters counters;
  std::vector<std::size_t> children;
};

struct SearchTree {
  PlannerKind planner = PlannerKind::ua;
  int depth_limit = 0;
  std::string problem_name;
  std::vector<TreeNode> nodes;  // preorder; nodes[0] is the root
  std::size_t size() const { return nodes.size(); }
  std::vector<std::size_t> level_counts() const;
};

class CeilingExceeded : public Error {
 public:
  CeilingExceeded(std::size_t ceiling, std::size_t count);
  std::size_t count() const { return count_; }

 private:
  std::size_t count_;
};

// Throws CeilingExceeded once more than `node_ceiling` nodes exist.
SearchTree enumerate_tree(const Generator& gen, int depth_limit, std::size_t node_ceiling = kDefaultNodeCeiling);

// images[u] lists the total-order node ids corresponding to partial-order
// node u.
struct CorrespondenceMap {
  std::vector<std::vector<std::size_t>> images;
  std::size_t pair_count() const;
};

// Top-down: roots correspond, and T maps to U iff parent(T) maps to
// parent(U) and T is a linearization of U with the identity step bijection.
CorrespondenceMap build_L(const SearchTree& partial, const SearchTree& total);

// Ancestry-free diagnostic for MT: each MT node maps to every TO node that
// is a linearization of it up to equivalence.
CorrespondenceMap linearization_map(const SearchTree& mt, const SearchTree& total);

struct Violation {
  std::size_t node = 0;
  std::string reason;
};

struct CheckReport {
  std::string name;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Every partial-order node has a nonempty image of exactly
// count_linearizations(plan) nodes.
CheckReport verify_totality(const CorrespondenceMap& map, const SearchTree& partial);
// No total-order node lies in two images. With `skip_ancestors`, pairs where
// one partial-order node descends from the other are not compared.
CheckReport verify_disjointness(const CorrespondenceMap& map, const SearchTree& partial, bool skip_ancestors = false);
// Every total-order node lies in exactly one image.
CheckReport verify_partition(const CorrespondenceMap& map, const SearchTree& total);

enum class Exec { serial, parallel };

// Nodes whose plan is ambiguous under the all-linearizations oracle.
CheckReport verify_unambiguity(const SearchTree& tree, Exec exec = Exec::parallel);
// Nodes of a total-order tree whose plan is not totally ordered.
CheckReport verify_total_orders(const SearchTree& tree);

// TO-extension conditions for t1 over t0: same steps plus one, order grown,
// the added step adds the goal selected in t0, precedes its needer and
// follows the last deleter of that goal in t1.
bool satisfies_to_extension(const Generator& gen, const OpenPlan& t0, const Plan& t1);

// Brute-force 1-step extensions defined by the extension-lemma conditions,
// built independently of the planners' insertion code. Labels match the
// planners' (the added step gets the next label).
std::vector<Plan> to_extension_oracle(const Generator& gen, const OpenPlan& parent);
std::vector<Plan> ua_extension_oracle(const Generator& gen, const OpenPlan& parent);

// Multiset equality up to plan equivalence.
bool same_plans_up_to_equivalence(const std::vector<Plan>& a, const std::vector<Plan>& b);

// For every mapped (U1, T1) with parents (U0, T0): T0 is a linearization of
// U0 and T1 is a TO-extension of T0. Also checks that dropping the added
// step from T1 leaves a linearization of U0.
CheckReport verify_mapping_lemma(const Generator& total_gen, const SearchTree& partial, const SearchTree& total,
                                 const CorrespondenceMap& map, Exec exec = Exec::parallel);

struct LeafStats {
  std::size_t leaf_count = 0;
  std::size_t solution_leaf_count = 0;
  double solution_density = 0;
  // Leaves strictly between consecutive solution leaves.
  double mean_gap = 0;
  double gap_variance = 0;
  std::size_t max_run_length = 0;
};

LeafStats leaf_sequence_stats(const std::vector<bool>& solution_leaves);

struct TreeStats {
  std::size_t node_count = 0;
  LeafStats leaves;
  std::vector<std::size_t> per_level;
  std::size_t partially_ordered_nodes = 0;
};

// Leaves are nodes without children at depth <= depth_bound, taken left to
// right.
TreeStats tree_stats(const SearchTree& tree, int depth_bound);

// sum n_u |L(U)| / sum e_u with n_u steps and e_u edges of the order's
// transitive reduction.
double cost_ratio(const SearchTree& partial, const CorrespondenceMap& map);

struct CostMaxima {
  std::size_t step4_edge_visits = 0;
  std::size_t step5_visits = 0;
  // Largest ratio of counter to the child's edge (or step) count.
  double step4_per_edge = 0;
  double step5_per_edge = 0;
  double step5_per_step = 0;
};
CostMaxima cost_maxima(const SearchTree& tree);

nlohmann::json tree_to_json(const SearchTree& tree, const Problem& problem);
nlohmann::json map_to_json(const CorrespondenceMap& map);

struct DumpedNode {
  std::size_t id = 0;
  std::optional<std::size_t> parent;
  int depth = 0;
  std::vector<std::string> operator_sequence;
  std::vector<std::pair<Label, Label>> edges;
  std::vector<std::pair<Label, std::string>> goals;
  bool solution = false;
  bool dead_end = false;
};
std::vector<DumpedNode> tree_from_json(const nlohmann::json& j);

}  // namespace planlab
