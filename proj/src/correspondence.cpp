#include "planlab/correspondence.hpp"

#include <algorithm>
#include <bit>
#include <functional>

namespace planlab {

std::vector<std::size_t> SearchTree::level_counts() const {
  std::vector<std::size_t> out(static_cast<std::size_t>(depth_limit) + 1, 0);
  for (const auto& n : nodes) ++out[static_cast<std::size_t>(n.depth)];
  return out;
}

CeilingExceeded::CeilingExceeded(std::size_t ceiling, std::size_t count)
    : Error("node ceiling of " + std::to_string(ceiling) + " exceeded after " + std::to_string(count) + " nodes"),
      count_(count) {}

SearchTree enumerate_tree(const Generator& gen, int depth_limit, std::size_t node_ceiling) {
  if (depth_limit < 0) throw Error("depth limit must be non-negative");
  SearchTree tree;
  tree.planner = gen.kind();
  tree.depth_limit = depth_limit;
  tree.problem_name = gen.problem().name();
  std::function<void(OpenPlan, std::optional<std::size_t>)> visit = [&](OpenPlan node,
                                                                         std::optional<std::size_t> parent) {
    if (tree.nodes.size() >= node_ceiling) throw CeilingExceeded(node_ceiling, tree.nodes.size());
    const std::size_t id = tree.nodes.size();
    TreeNode t;
    t.id = id;
    t.parent = parent;
    t.depth = node.plan.depth();
    t.solution = node.solved();
    t.node = std::move(node);
    tree.nodes.push_back(std::move(t));
    if (parent) tree.nodes[*parent].children.push_back(id);
    if (tree.nodes[id].solution || tree.nodes[id].depth >= depth_limit) return;
    auto ext = gen.expand(tree.nodes[id].node);
    tree.nodes[id].counters = ext.counters;
    tree.nodes[id].dead_end = ext.children.empty();
    for (auto& c : ext.children) visit(std::move(c), id);
  };
  visit(gen.root(), std::nullopt);
  return tree;
}

std::size_t CorrespondenceMap::pair_count() const {
  std::size_t n = 0;
  for (const auto& img : images) n += img.size();
  return n;
}

CorrespondenceMap build_L(const SearchTree& partial, const SearchTree& total) {
  if (partial.problem_name != total.problem_name || partial.depth_limit != total.depth_limit) {
    throw Error("trees were enumerated on different problems or depths");
  }
  CorrespondenceMap map;
  map.images.resize(partial.size());
  if (partial.nodes.empty() || total.nodes.empty()) return map;
  if (is_labelled_linearization(total.nodes[0].node.plan, partial.nodes[0].node.plan)) map.images[0].push_back(0);
  // Preorder: a parent's image is complete before its children are visited.
  for (const auto& u1 : partial.nodes) {
    if (!u1.parent) continue;
    for (std::size_t t0 : map.images[*u1.parent]) {
      for (std::size_t t1 : total.nodes[t0].children) {
        if (is_labelled_linearization(total.nodes[t1].node.plan, u1.node.plan)) map.images[u1.id].push_back(t1);
      }
    }
  }
  return map;
}

CorrespondenceMap linearization_map(const SearchTree& mt, const SearchTree& total) {
  CorrespondenceMap map;
  map.images.resize(mt.size());
  for (const auto& m : mt.nodes) {
    for (const auto& t : total.nodes) {
      if (t.node.plan.size() != m.node.plan.size()) continue;
      if (is_linearization(t.node.plan, m.node.plan)) map.images[m.id].push_back(t.id);
    }
  }
  return map;
}

CheckReport verify_totality(const CorrespondenceMap& map, const SearchTree& partial) {
  CheckReport r{"totality", {}};
  for (const auto& u : partial.nodes) {
    const auto& img = map.images.at(u.id);
    if (img.empty()) {
      r.violations.push_back({u.id, "empty image"});
      continue;
    }
    const std::uint64_t expected = count_linearizations(u.node.plan);
    if (img.size() != expected) {
      r.violations.push_back(
          {u.id, "image has " + std::to_string(img.size()) + " plans, expected " + std::to_string(expected)});
    }
  }
  return r;
}

namespace {

bool is_ancestor(const SearchTree& tree, std::size_t a, std::size_t b) {
  for (auto p = tree.nodes[b].parent; p; p = tree.nodes[*p].parent) {
    if (*p == a) return true;
  }
  return false;
}

}  // namespace

CheckReport verify_disjointness(const CorrespondenceMap& map, const SearchTree& partial, bool skip_ancestors) {
  CheckReport r{"disjointness", {}};
  std::vector<std::vector<std::size_t>> owners;
  for (std::size_t u = 0; u < map.images.size(); ++u) {
    for (std::size_t t : map.images[u]) {
      if (t >= owners.size()) owners.resize(t + 1);
      owners[t].push_back(u);
    }
  }
  for (std::size_t t = 0; t < owners.size(); ++t) {
    const auto& o = owners[t];
    for (std::size_t i = 0; i < o.size(); ++i) {
      for (std::size_t j = i + 1; j < o.size(); ++j) {
        if (skip_ancestors && (is_ancestor(partial, o[i], o[j]) || is_ancestor(partial, o[j], o[i]))) continue;
        r.violations.push_back({o[j], "shares total-order node " + std::to_string(t) + " with node " +
                                          std::to_string(o[i])});
      }
    }
  }
  return r;
}

CheckReport verify_partition(const CorrespondenceMap& map, const SearchTree& total) {
  CheckReport r{"partition", {}};
  std::vector<std::size_t> hits(total.size(), 0);
  for (const auto& img : map.images) {
    for (std::size_t t : img) ++hits.at(t);
  }
  for (std::size_t t = 0; t < hits.size(); ++t) {
    if (hits[t] != 1) r.violations.push_back({t, "covered " + std::to_string(hits[t]) + " times"});
  }
  return r;
}

namespace {

// Runs check(i) for i in [0, n) and gathers the failures in index order.
// The parallel path writes one slot per index, so both paths agree.
CheckReport gather(std::string name, std::size_t n, Exec exec,
                   const std::function<std::optional<Violation>(std::size_t)>& check) {
  std::vector<std::optional<Violation>> slot(n);
  if (exec == Exec::parallel) {
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < count; ++i) slot[static_cast<std::size_t>(i)] = check(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) slot[i] = check(i);
  }
  CheckReport r{std::move(name), {}};
  for (auto& v : slot) {
    if (v) r.violations.push_back(std::move(*v));
  }
  return r;
}

}  // namespace

CheckReport verify_unambiguity(const SearchTree& tree, Exec exec) {
  return gather("unambiguity", tree.size(), exec, [&](std::size_t i) -> std::optional<Violation> {
    if (is_unambiguous(tree.nodes[i].node.plan)) return std::nullopt;
    return Violation{i, "ambiguous plan"};
  });
}

CheckReport verify_total_orders(const SearchTree& tree) {
  CheckReport r{"total-order", {}};
  for (const auto& t : tree.nodes) {
    if (!t.node.plan.totally_ordered()) r.violations.push_back({t.id, "not totally ordered"});
  }
  return r;
}

bool satisfies_to_extension(const Generator& gen, const OpenPlan& t0, const Plan& t1) {
  const Plan& p0 = t0.plan;
  const std::size_t n0 = p0.size();
  if (t1.size() != n0 + 1 || !p0.totally_ordered() || !t1.totally_ordered() || t0.solved()) return false;
  for (Label a = 0; a < n0; ++a) {
    if (!p0.step(a).same_kind(t1.step(a))) return false;
    for (Label b = 0; b < n0; ++b) {
      if (p0.before(a, b) && !t1.before(a, b)) return false;
    }
  }
  const auto add = static_cast<Label>(n0);
  const GoalEntry goal = gen.select_goal(t0.goals);
  if (!t1.step(add).fields().adds_prop(goal.condition)) return false;
  if (!t1.before(add, goal.needer)) return false;
  const Label del = last_deleter(t1, goal.condition, goal.needer);
  return t1.before(del, add);
}

std::vector<Plan> to_extension_oracle(const Generator& gen, const OpenPlan& parent) {
  std::vector<Plan> out;
  const std::vector<Label> seq = parent.plan.linear_order();
  const auto& lib = gen.problem().library();
  for (std::size_t i = 0; i < lib.size(); ++i) {
    for (std::size_t k = 1; k < seq.size(); ++k) {
      Plan p = parent.plan.extend();
      const Label add = p.add_step({static_cast<int>(i), gen.library_op(i)});
      std::vector<Label> s = seq;
      s.insert(s.begin() + static_cast<std::ptrdiff_t>(k), add);
      Plan t1 = p.with_total_order(s);
      if (satisfies_to_extension(gen, parent, t1)) out.push_back(std::move(t1));
    }
  }
  return out;
}

namespace {

std::vector<std::uint64_t> closure_of(const Plan& p) {
  std::vector<std::uint64_t> c(p.size());
  for (Label s = 0; s < p.size(); ++s) c[s] = p.successors(s);
  return c;
}

bool strict_subset(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  bool smaller = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] & ~b[i]) return false;
    if (a[i] != b[i]) smaller = true;
  }
  return smaller;
}

}  // namespace

std::vector<Plan> ua_extension_oracle(const Generator& gen, const OpenPlan& parent) {
  const Plan& u0 = parent.plan;
  const GoalEntry goal = gen.select_goal(parent.goals);
  const std::size_t middle = u0.size() - 2;
  if (middle > 12) throw Error("too many steps for the brute-force extension oracle");
  std::size_t assignments = 1;
  for (std::size_t k = 0; k < middle; ++k) assignments *= 3;

  std::vector<Plan> out;
  const auto& lib = gen.problem().library();
  for (std::size_t i = 0; i < lib.size(); ++i) {
    if (!lib[i].adds_prop(goal.condition)) continue;
    std::vector<Plan> valid;
    for (std::size_t code = 0; code < assignments; ++code) {
      Plan p = u0.extend();
      const Label add = p.add_step({static_cast<int>(i), gen.library_op(i)});
      p.add_order(kInitialStep, add);
      p.add_order(add, kFinalStep);
      bool consistent = true;
      std::size_t rest = code;
      for (Label s = 2; s < add && consistent; ++s, rest /= 3) {
        switch (rest % 3) {
          case 1:
            consistent = p.add_order(s, add);
            break;
          case 2:
            consistent = p.add_order(add, s);
            break;
          default:
            break;
        }
      }
      if (!consistent || !p.before(add, goal.needer)) continue;
      Label del;
      try {
        del = last_deleter(p, goal.condition, goal.needer);
      } catch (const Error&) {
        continue;
      }
      if (!p.before(del, add)) continue;
      bool clean = true;
      for (Label s = 0; s < p.size() && clean; ++s) {
        if (s != add && interacts(p, s, add, InteractionMode::basic)) clean = false;
      }
      if (clean) valid.push_back(std::move(p));
    }
    // Keep the inclusion-minimal orderings, once each.
    std::vector<std::vector<std::uint64_t>> closures;
    for (const auto& v : valid) closures.push_back(closure_of(v));
    std::vector<std::vector<std::uint64_t>> kept;
    for (std::size_t a = 0; a < valid.size(); ++a) {
      bool minimal = std::none_of(closures.begin(), closures.end(),
                                  [&](const auto& other) { return strict_subset(other, closures[a]); });
      if (!minimal || std::find(kept.begin(), kept.end(), closures[a]) != kept.end()) continue;
      kept.push_back(closures[a]);
      out.push_back(std::move(valid[a]));
    }
  }
  return out;
}

bool same_plans_up_to_equivalence(const std::vector<Plan>& a, const std::vector<Plan>& b) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& x : a) {
    bool found = false;
    for (std::size_t j = 0; j < b.size() && !found; ++j) {
      if (!used[j] && equivalent(x, b[j])) {
        used[j] = true;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

CheckReport verify_mapping_lemma(const Generator& total_gen, const SearchTree& partial, const SearchTree& total,
                                 const CorrespondenceMap& map, Exec exec) {
  return gather("mapping-lemma", partial.size(), exec, [&](std::size_t u1) -> std::optional<Violation> {
    const auto& un = partial.nodes[u1];
    if (!un.parent) return std::nullopt;
    const Plan& u0 = partial.nodes[*un.parent].node.plan;
    for (std::size_t t1 : map.images[u1]) {
      const auto& tn = total.nodes[t1];
      const auto& t0 = total.nodes[*tn.parent].node;
      if (!is_labelled_linearization(t0.plan, u0)) {
        return Violation{u1, "parent of total-order node " + std::to_string(t1) + " is not a linearization"};
      }
      if (!satisfies_to_extension(total_gen, t0, tn.node.plan)) {
        return Violation{u1, "total-order node " + std::to_string(t1) + " is not a TO-extension of its parent"};
      }
      std::vector<Label> keep;
      for (Label s = 0; s + 1 < tn.node.plan.size(); ++s) keep.push_back(s);
      if (!is_labelled_linearization(tn.node.plan.restrict_to(keep), u0)) {
        return Violation{u1, "dropping the added step from node " + std::to_string(t1) +
                                 " does not leave a linearization"};
      }
    }
    return std::nullopt;
  });
}

LeafStats leaf_sequence_stats(const std::vector<bool>& solution_leaves) {
  LeafStats s;
  s.leaf_count = solution_leaves.size();
  std::vector<double> gaps;
  std::optional<std::size_t> last;
  std::size_t run = 0;
  for (std::size_t i = 0; i < solution_leaves.size(); ++i) {
    if (!solution_leaves[i]) {
      run = 0;
      continue;
    }
    ++s.solution_leaf_count;
    s.max_run_length = std::max(s.max_run_length, ++run);
    if (last) gaps.push_back(static_cast<double>(i - *last - 1));
    last = i;
  }
  if (s.leaf_count) s.solution_density = static_cast<double>(s.solution_leaf_count) / static_cast<double>(s.leaf_count);
  if (!gaps.empty()) {
    double sum = 0;
    for (double g : gaps) sum += g;
    s.mean_gap = sum / static_cast<double>(gaps.size());
    double var = 0;
    for (double g : gaps) var += (g - s.mean_gap) * (g - s.mean_gap);
    s.gap_variance = var / static_cast<double>(gaps.size());
  }
  return s;
}

TreeStats tree_stats(const SearchTree& tree, int depth_bound) {
  TreeStats st;
  st.per_level.assign(static_cast<std::size_t>(std::max(depth_bound, 0)) + 1, 0);
  std::vector<bool> leaves;
  for (const auto& n : tree.nodes) {
    if (n.depth > depth_bound) continue;
    ++st.node_count;
    ++st.per_level[static_cast<std::size_t>(n.depth)];
    if (!n.node.plan.totally_ordered()) ++st.partially_ordered_nodes;
    const bool leaf = n.depth == depth_bound || n.children.empty();
    if (leaf) leaves.push_back(n.solution);
  }
  st.leaves = leaf_sequence_stats(leaves);
  return st;
}

double cost_ratio(const SearchTree& partial, const CorrespondenceMap& map) {
  double num = 0;
  double den = 0;
  for (const auto& u : partial.nodes) {
    num += static_cast<double>(u.node.plan.size()) * static_cast<double>(map.images.at(u.id).size());
    den += static_cast<double>(u.node.plan.reduced_edge_count());
  }
  if (den == 0) throw Error("cost ratio of an empty tree");
  return num / den;
}

CostMaxima cost_maxima(const SearchTree& tree) {
  CostMaxima m;
  for (const auto& n : tree.nodes) {
    const auto& c = n.node.cost;
    const auto e = static_cast<double>(std::max<std::size_t>(n.node.plan.edge_count(), 1));
    const auto s = static_cast<double>(n.node.plan.size());
    m.step4_edge_visits = std::max(m.step4_edge_visits, c.step4_edge_visits);
    m.step5_visits = std::max(m.step5_visits, c.step5_visits);
    m.step4_per_edge = std::max(m.step4_per_edge, static_cast<double>(c.step4_edge_visits) / e);
    m.step5_per_edge = std::max(m.step5_per_edge, static_cast<double>(c.step5_visits) / e);
    m.step5_per_step = std::max(m.step5_per_step, static_cast<double>(c.step5_visits) / s);
  }
  return m;
}

nlohmann::json tree_to_json(const SearchTree& tree, const Problem& problem) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& n : tree.nodes) {
    const Plan& p = n.node.plan;
    nlohmann::json ops = nlohmann::json::array();
    for (Label l : p.linear_order()) {
      if (l != kInitialStep && l != kFinalStep) ops.push_back(p.step(l).fields().name);
    }
    nlohmann::json edges = nlohmann::json::array();
    for (const Edge& e : p.edges()) edges.push_back({e.from, e.to});
    nlohmann::json goals = nlohmann::json::array();
    for (const auto& g : n.node.goals) goals.push_back({{"needer", g.needer}, {"condition", problem.prop_name(g.condition)}});
    arr.push_back({{"id", n.id},
                   {"parent", n.parent ? nlohmann::json(*n.parent) : nlohmann::json(nullptr)},
                   {"depth", n.depth},
                   {"operator_sequence", ops},
                   {"edges", edges},
                   {"goals", goals},
                   {"solution", n.solution},
                   {"dead_end", n.dead_end}});
  }
  return arr;
}

nlohmann::json map_to_json(const CorrespondenceMap& map) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t u = 0; u < map.images.size(); ++u) arr.push_back({{"ua_id", u}, {"to_ids", map.images[u]}});
  return arr;
}

std::vector<DumpedNode> tree_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error("tree dump must be a JSON array");
  std::vector<DumpedNode> out;
  try {
    for (const auto& x : j) {
      DumpedNode n;
      n.id = x.at("id").get<std::size_t>();
      if (!x.at("parent").is_null()) n.parent = x.at("parent").get<std::size_t>();
      n.depth = x.at("depth").get<int>();
      n.operator_sequence = x.at("operator_sequence").get<std::vector<std::string>>();
      for (const auto& e : x.at("edges")) n.edges.emplace_back(e.at(0).get<Label>(), e.at(1).get<Label>());
      for (const auto& g : x.at("goals")) n.goals.emplace_back(g.at("needer").get<Label>(), g.at("condition").get<std::string>());
      n.solution = x.at("solution").get<bool>();
      n.dead_end = x.at("dead_end").get<bool>();
      out.push_back(std::move(n));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed tree dump: ") + e.what());
  }
  return out;
}

}  // namespace planlab
