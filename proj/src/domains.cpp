#include "planlab/domains.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "planlab/oracle.hpp"
#include "planlab/rng.hpp"

namespace planlab {

std::string block_name(int b) { return std::string(1, static_cast<char>('a' + b)); }

namespace {

std::string on(int x, int y) { return "on_" + block_name(x) + "_" + block_name(y); }
std::string on_table(int x) { return "on_table_" + block_name(x); }
std::string clear(int x) { return "clear_" + block_name(x); }

std::vector<int> random_forest(int n, Rng& rng) {
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  rng.shuffle(order);
  std::vector<int> below(static_cast<std::size_t>(n), kTable);
  std::vector<int> tops;
  for (int b : order) {
    auto k = static_cast<std::size_t>(rng.below(tops.size() + 1));
    if (k == tops.size()) {
      tops.push_back(b);
    } else {
      below[static_cast<std::size_t>(b)] = tops[k];
      tops[k] = b;
    }
  }
  return below;
}

void check_forest(const std::vector<std::pair<int, int>>& on_pairs, int n, const char* what) {
  std::vector<int> below(static_cast<std::size_t>(n), -2);
  std::vector<bool> covered(static_cast<std::size_t>(n), false);
  for (auto [x, y] : on_pairs) {
    if (x < 0 || x >= n || y < kTable || y >= n) throw Error(std::string(what) + ": block index out of range");
    if (x == y) throw Error(std::string(what) + ": block " + block_name(x) + " placed on itself");
    if (below[static_cast<std::size_t>(x)] != -2) {
      throw Error(std::string(what) + ": block " + block_name(x) + " has two supports");
    }
    below[static_cast<std::size_t>(x)] = y;
    if (y != kTable) {
      if (covered[static_cast<std::size_t>(y)]) {
        throw Error(std::string(what) + ": two blocks on " + block_name(y));
      }
      covered[static_cast<std::size_t>(y)] = true;
    }
  }
  for (int start = 0; start < n; ++start) {
    int x = start;
    for (int hops = 0; hops <= n; ++hops) {
      int y = below[static_cast<std::size_t>(x)];
      if (y < 0) break;
      if (hops == n) throw Error(std::string(what) + ": stacking cycle through " + block_name(start));
      x = y;
    }
  }
}

bool goals_hold(const std::vector<int>& below, const std::vector<std::pair<int, int>>& goal_on) {
  return std::all_of(goal_on.begin(), goal_on.end(),
                     [&](const auto& g) { return below[static_cast<std::size_t>(g.first)] == g.second; });
}

}  // namespace

BlocksworldSpec random_blocksworld(int n_blocks, std::uint64_t seed) {
  if (n_blocks < 2 || n_blocks > 6) throw Error("blocksworld needs 2 to 6 blocks");
  Rng rng(seed);
  BlocksworldSpec spec;
  spec.n_blocks = n_blocks;
  spec.seed = seed;
  for (;;) {
    spec.initial_below = random_forest(n_blocks, rng);
    auto goal_below = random_forest(n_blocks, rng);
    spec.goal_on.clear();
    for (int x = 0; x < n_blocks; ++x) {
      if (goal_below[static_cast<std::size_t>(x)] != kTable) {
        spec.goal_on.emplace_back(x, goal_below[static_cast<std::size_t>(x)]);
      }
    }
    if (!spec.goal_on.empty() && !goals_hold(spec.initial_below, spec.goal_on)) return spec;
  }
}

Problem blocksworld_problem(const BlocksworldSpec& spec) {
  const int n = spec.n_blocks;
  if (n < 2 || n > 6) throw Error("blocksworld needs 2 to 6 blocks");
  if (spec.initial_below.size() != static_cast<std::size_t>(n)) {
    throw Error("initial configuration must place every block");
  }
  std::vector<std::pair<int, int>> init_pairs;
  for (int x = 0; x < n; ++x) init_pairs.emplace_back(x, spec.initial_below[static_cast<std::size_t>(x)]);
  check_forest(init_pairs, n, "initial configuration");
  check_forest(spec.goal_on, n, "goal configuration");

  ProblemBuilder b(spec.name.empty() ? "blocksworld_" + std::to_string(n) + "_" + std::to_string(spec.seed)
                                     : spec.name);
  std::vector<std::string> init;
  std::vector<bool> covered(static_cast<std::size_t>(n), false);
  for (auto [x, y] : init_pairs) {
    if (y == kTable) {
      init.push_back(on_table(x));
    } else {
      init.push_back(on(x, y));
      covered[static_cast<std::size_t>(y)] = true;
    }
  }
  for (int x = 0; x < n; ++x) {
    if (!covered[static_cast<std::size_t>(x)]) init.push_back(clear(x));
  }
  std::vector<std::string> goals;
  for (auto [x, y] : spec.goal_on) goals.push_back(y == kTable ? on_table(x) : on(x, y));
  b.init(init).goals(goals);

  const std::string from = "_from_";
  const std::string to = "_to_";
  for (int x = 0; x < n; ++x) {
    const std::string bx = "move_" + block_name(x);
    for (int y = 0; y < n; ++y) {
      if (y == x) continue;
      for (int z = 0; z < n; ++z) {
        if (z == x || z == y) continue;
        b.op({bx + from + block_name(y) + to + block_name(z),
              {on(x, y), clear(x), clear(z)},
              {on(x, z), clear(y)},
              {on(x, y), clear(z)},
              {},
              {}});
      }
    }
    for (int z = 0; z < n; ++z) {
      if (z == x) continue;
      b.op({bx + from + "table" + to + block_name(z),
            {on_table(x), clear(x), clear(z)},
            {on(x, z)},
            {on_table(x), clear(z)},
            {},
            {}});
    }
    for (int y = 0; y < n; ++y) {
      if (y == x) continue;
      b.op({bx + from + block_name(y) + to + "table",
            {on(x, y), clear(x)},
            {on_table(x), clear(y)},
            {on(x, y)},
            {},
            {}});
    }
  }
  return b.build();
}

Problem d1s1_problem(const std::vector<int>& goal_indices, bool with_i0) {
  if (goal_indices.empty()) throw Error("D1S1 needs at least one goal");
  constexpr int kOps = 15;
  auto i = [](int k) { return "i" + std::to_string(k); };
  auto g = [](int k) { return "g" + std::to_string(k); };
  std::string name = "d1s1";
  std::vector<std::string> goals;
  for (int k : goal_indices) {
    if (k < 1 || k > kOps) throw Error("D1S1 goal index out of range 1..15");
    goals.push_back(g(k));
    name += "_" + std::to_string(k);
  }
  std::vector<std::string> init;
  for (int k = with_i0 ? 0 : 1; k <= kOps; ++k) init.push_back(i(k));
  ProblemBuilder b(name);
  b.init(init).goals(goals);
  for (int k = 1; k <= kOps; ++k) {
    OperatorSpec op{"o" + std::to_string(k), {i(k)}, {g(k)}, {}, {}, {}};
    if (k > 1 || with_i0) {
      op.pre.push_back(i(k - 1));
      op.dels.push_back(i(k - 1));
    }
    b.op(std::move(op));
  }
  return b.build();
}

std::vector<std::string> fixture_names() { return {"sussman", "fig2", "fig4", "fig9", "fig13", "fig17", "unsolvable", "empty"};
}

Problem fixture(std::string_view name) {
  if (name == "sussman") {
    BlocksworldSpec spec;
    spec.n_blocks = 3;
    spec.initial_below = {kTable, kTable, 0};
    spec.goal_on = {{0, 1}, {1, 2}};
    spec.name = "sussman";
    return blocksworld_problem(spec);
  }
  if (name == "fig2" || name == "fig4") {
    // fig4's op_a needs q, which op_add also adds.
    const bool partial = name == "fig4";
    ProblemBuilder b{std::string(name)};
    b.init(partial ? std::vector<std::string>{"c", "q"} : std::vector<std::string>{"c"}).goals({"g"});
    b.op({"op_del", {"c"}, {"d"}, {"c"}, {}, {}});
    b.op({"op_a", partial ? std::vector<std::string>{"q"} : std::vector<std::string>{}, {"a"}, {}, {}, {}});
    b.op({"op_b", {}, {"b"}, {}, {}, {}});
    b.op({"op_need", {"c"}, {"g"}, {}, {}, {}});
    b.op({"op_add", {}, partial ? std::vector<std::string>{"c", "q"} : std::vector<std::string>{"c"}, {}, {}, {}});
    return b.build();
  }
  if (name == "fig9") {
    ProblemBuilder b("fig9");
    b.init({}).goals({"g", "q"});
    b.op({"o1", {"p"}, {"g"}, {}, {}, {}});
    b.op({"o2", {}, {"q"}, {}, {}, {}});
    b.op({"o3", {"q"}, {"p"}, {}, {}, {}});
    return b.build();
  }
  if (name == "fig13") {
    ProblemBuilder b("fig13");
    b.init({"p", "t"}).goals({"g", "q"});
    b.op({"op_a", {"p"}, {"q"}, {}, {{{"t"}, "u"}}, {}});
    b.op({"op_b", {"q"}, {}, {}, {{{"u"}, "s"}}, {}});
    b.op({"op_c", {"s"}, {"g"}, {}, {}, {}});
    return b.build();
  }
  if (name == "fig17") {
    ProblemBuilder b("fig17");
    b.init({}).goals({"g1", "g2", "g3"});
    for (int k = 1; k <= 3; ++k) {
      const std::string s = std::to_string(k);
      b.op({"o" + s, {"p" + s}, {"g" + s, "p1", "p2", "p3"}, {}, {}, {}});
    }
    return b.build();
  }
  if (name == "unsolvable") {
    // Nothing adds h.
    ProblemBuilder b("unsolvable");
    b.init({"p"}).goals({"g", "h"});
    b.op({"o1", {"p"}, {"g"}, {}, {}, {}});
    return b.build();
  }
  if (name == "empty") {
    ProblemBuilder b("empty");
    b.init({"p"}).goals({});
    b.op({"o1", {"p"}, {"g"}, {}, {}, {}});
    return b.build();
  }
  throw Error("unknown fixture '" + std::string(name) + "'");
}

namespace {

Step library_step(const Problem& problem, std::string_view name) {
  const auto& lib = problem.library();
  for (std::size_t i = 0; i < lib.size(); ++i) {
    if (lib[i].name == name) return {static_cast<int>(i), std::make_shared<const Operator>(lib[i])};
  }
  throw Error("no operator named '" + std::string(name) + "'");
}

}  // namespace

std::optional<Plan> depicted_plan(std::string_view name, const Problem& problem) {
  if (name == "fig2" || name == "fig4") {
    Plan p = Plan::initial(problem).extend();
    Label del = p.add_step(library_step(problem, "op_del"));
    Label a = p.add_step(library_step(problem, "op_a"));
    Label b = p.add_step(library_step(problem, "op_b"));
    Label need = p.add_step(library_step(problem, "op_need"));
    for (Label s : {del, a, b, need}) {
      p.add_order(kInitialStep, s);
      p.add_order(s, kFinalStep);
    }
    p.add_order(del, a);
    p.add_order(del, b);
    p.add_order(a, need);
    p.add_order(b, need);
    if (name == "fig2") p.add_order(a, b);
    return p;
  }
  if (name == "fig9" || name == "fig17") {
    std::vector<std::string> ops = name == "fig9" ? std::vector<std::string>{"o1", "o2"}
                                                  : std::vector<std::string>{"o1", "o2", "o3"};
    Plan p = Plan::initial(problem).extend();
    for (const auto& op : ops) {
      Label s = p.add_step(library_step(problem, op));
      p.add_order(kInitialStep, s);
      p.add_order(s, kFinalStep);
    }
    return p;
  }
  if (name == "sussman" || name == "fig13" || name == "unsolvable" || name == "empty") return std::nullopt;
  throw Error("unknown fixture '" + std::string(name) + "'");
}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

bool is_prop(const std::string& s) {
  if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_'; });
}

bool is_name(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
  });
}

// Splits one line into words, with '(' ')' '&' "->" as separate tokens and
// "key:" kept whole.
std::vector<Token> tokenize(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '(' || c == ')' || c == '&') {
      out.push_back({std::string(1, c), line_no, i + 1});
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      out.push_back({"->", line_no, i + 1});
      i += 2;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#' &&
           line[i] != '(' && line[i] != ')' && line[i] != '&' && !(line[i] == '-' && i + 1 < line.size() && line[i + 1] == '>')) {
      ++i;
    }
    out.push_back({std::string(line.substr(start, i - start)), line_no, start + 1});
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      ++line_no;
      auto toks = tokenize(text.substr(pos, end - pos), line_no);
      if (!toks.empty()) lines_.push_back(std::move(toks));
      last_line_ = line_no;
      pos = end + 1;
    }
  }

  Problem run() {
    if (lines_.empty()) throw ParseError(last_line_, 1, "expected 'problem', found end of input");
    const auto& head = lines_[0];
    expect_keyword(head[0], "problem");
    if (head.size() < 2) throw ParseError(head[0].line, head[0].column + 7, "expected problem name");
    if (!is_name(head[1].text)) unexpected(head[1], "problem name");
    if (head.size() > 2) unexpected(head[2], "end of line");
    ProblemBuilder builder(head[1].text);

    bool seen_init = false;
    bool seen_goal = false;
    std::size_t i = 1;
    for (; i < lines_.size(); ++i) {
      const auto& l = lines_[i];
      if (l[0].text == "init:") {
        if (seen_init) unexpected(l[0], "'goal:' or 'operator'");
        seen_init = true;
        builder.init(prop_list(l, 1));
      } else if (l[0].text == "goal:") {
        if (seen_goal) unexpected(l[0], "'init:' or 'operator'");
        seen_goal = true;
        builder.goals(prop_list(l, 1));
      } else {
        break;
      }
    }
    std::vector<std::pair<OperatorSpec, Token>> ops;
    while (i < lines_.size()) {
      const auto& l = lines_[i];
      expect_keyword(l[0], "operator");
      if (l.size() < 2) throw ParseError(l[0].line, l[0].column + 8, "expected operator name");
      if (!is_name(l[1].text)) unexpected(l[1], "operator name");
      if (l.size() > 2) unexpected(l[2], "end of line");
      OperatorSpec op;
      op.name = l[1].text;
      Token at = l[0];
      std::set<std::string> fields;
      ++i;
      for (;; ++i) {
        if (i >= lines_.size()) throw ParseError(last_line_ + 1, 1, "expected 'end', found end of input");
        const auto& f = lines_[i];
        const std::string& key = f[0].text;
        if (key == "end") {
          if (f.size() > 1) unexpected(f[1], "end of line");
          ++i;
          break;
        }
        if (key != "pre:" && key != "add:" && key != "del:" && key != "cadd:" && key != "cdel:") {
          unexpected(f[0], "'pre:', 'add:', 'del:', 'cadd:', 'cdel:' or 'end'");
        }
        if (!fields.insert(key).second) unexpected(f[0], "each field at most once");
        if (key == "pre:") op.pre = prop_list(f, 1);
        if (key == "add:") op.adds = prop_list(f, 1);
        if (key == "del:") op.dels = prop_list(f, 1);
        if (key == "cadd:") op.cadds = cond_list(f);
        if (key == "cdel:") op.cdels = cond_list(f);
      }
      ops.emplace_back(std::move(op), at);
    }
    for (auto& [op, at] : ops) {
      // Semantic checks carry the operator's position.
      ProblemBuilder single("check");
      single.op(op);
      try {
        single.build();
      } catch (const Error& e) {
        throw ParseError(at.line, at.column, e.what());
      }
      builder.op(std::move(op));
    }
    try {
      return builder.build();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(ops.empty() ? 1 : ops.back().second.line, 1, e.what());
    }
  }

 private:
  [[noreturn]] static void unexpected(const Token& t, const std::string& expected) {
    throw ParseError(t.line, t.column, "expected " + expected + ", found '" + t.text + "'");
  }

  static void expect_keyword(const Token& t, const std::string& kw) {
    if (t.text != kw) unexpected(t, "'" + kw + "'");
  }

  static std::vector<std::string> prop_list(const std::vector<Token>& l, std::size_t from) {
    std::vector<std::string> out;
    for (std::size_t k = from; k < l.size(); ++k) {
      if (!is_prop(l[k].text)) unexpected(l[k], "proposition");
      out.push_back(l[k].text);
    }
    return out;
  }

  static std::vector<CondEffectSpec> cond_list(const std::vector<Token>& l) {
    std::vector<CondEffectSpec> out;
    std::size_t k = 1;
    auto at_end = [&](const char* expected) {
      if (k >= l.size()) {
        const Token& last = l.back();
        throw ParseError(last.line, last.column + last.text.size(), std::string("expected ") + expected + ", found end of line");
      }
    };
    while (k < l.size()) {
      if (l[k].text != "(") unexpected(l[k], "'('");
      ++k;
      CondEffectSpec ce;
      for (;;) {
        at_end("proposition");
        if (!is_prop(l[k].text)) unexpected(l[k], "proposition");
        ce.deps.push_back(l[k].text);
        ++k;
        at_end("'&' or '->'");
        if (l[k].text == "&") {
          ++k;
          continue;
        }
        if (l[k].text != "->") unexpected(l[k], "'&' or '->'");
        ++k;
        break;
      }
      at_end("proposition");
      if (!is_prop(l[k].text)) unexpected(l[k], "proposition");
      ce.effect = l[k].text;
      ++k;
      at_end("')'");
      if (l[k].text != ")") unexpected(l[k], "')'");
      ++k;
      out.push_back(std::move(ce));
    }
    return out;
  }

  std::vector<std::vector<Token>> lines_;
  std::size_t last_line_ = 0;
};

std::vector<std::string> names_of(const Problem& p, const PropList& props) {
  std::vector<std::string> out;
  for (Prop q : props) out.push_back(p.prop_name(q));
  return out;
}

void write_props(std::ostream& os, const Problem& p, const PropList& props) {
  for (Prop q : props) os << ' ' << p.prop_name(q);
}

void write_conds(std::ostream& os, const Problem& p, const std::vector<CondEffect>& effects) {
  for (const auto& ce : effects) {
    os << " (";
    for (std::size_t k = 0; k < ce.deps.size(); ++k) {
      os << (k ? " & " : "") << p.prop_name(ce.deps[k]);
    }
    os << " -> " << p.prop_name(ce.effect) << ')';
  }
}

}  // namespace

Problem parse_problem(std::string_view text) { return Parser(text).run(); }

std::string serialize_problem(const Problem& problem) {
  std::ostringstream os;
  os << "problem " << problem.name() << '\n';
  os << "init:";
  write_props(os, problem, problem.init());
  os << "\ngoal:";
  write_props(os, problem, problem.goals());
  os << '\n';
  for (const auto& op : problem.library()) {
    os << "operator " << op.name << '\n';
    os << "  pre:";
    write_props(os, problem, op.pre);
    os << "\n  add:";
    write_props(os, problem, op.adds);
    os << "\n  del:";
    write_props(os, problem, op.dels);
    os << '\n';
    if (!op.cadds.empty()) {
      os << "  cadd:";
      write_conds(os, problem, op.cadds);
      os << '\n';
    }
    if (!op.cdels.empty()) {
      os << "  cdel:";
      write_conds(os, problem, op.cdels);
      os << '\n';
    }
    os << "end\n";
  }
  return os.str();
}

Problem load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open problem file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

bool same_problem(const Problem& a, const Problem& b) {
  if (a.name() != b.name()) return false;
  if (names_of(a, a.init()) != names_of(b, b.init())) return false;
  if (names_of(a, a.goals()) != names_of(b, b.goals())) return false;
  if (a.library().size() != b.library().size()) return false;
  auto conds = [](const Problem& p, const std::vector<CondEffect>& effects) {
    std::vector<std::pair<std::vector<std::string>, std::string>> out;
    for (const auto& ce : effects) out.emplace_back(names_of(p, ce.deps), p.prop_name(ce.effect));
    return out;
  };
  for (std::size_t i = 0; i < a.library().size(); ++i) {
    const Operator& x = a.library()[i];
    const Operator& y = b.library()[i];
    if (x.name != y.name || names_of(a, x.pre) != names_of(b, y.pre) || names_of(a, x.adds) != names_of(b, y.adds) ||
        names_of(a, x.dels) != names_of(b, y.dels) || conds(a, x.cadds) != conds(b, y.cadds) ||
        conds(a, x.cdels) != conds(b, y.cdels)) {
      return false;
    }
  }
  return true;
}

SuiteEntry suite_entry(int length_class, int n_blocks, std::uint64_t seed) {
  return {length_class, n_blocks, seed, blocksworld_problem(random_blocksworld(n_blocks, seed))};
}

std::vector<SuiteEntry> generate_suite(const SuiteSpec& spec, std::size_t max_draws) {
  if (spec.block_counts.empty() || spec.lengths.empty() || spec.per_class < 1) throw Error("empty suite spec");
  std::map<int, std::vector<SuiteEntry>> classes;
  for (int len : spec.lengths) classes[len];
  std::size_t filled = 0;
  for (std::size_t draw = 0; draw < max_draws && filled < spec.lengths.size(); ++draw) {
    const std::uint64_t seed = spec.base_seed + draw;
    const int n = spec.block_counts[draw % spec.block_counts.size()];
    Problem p = blocksworld_problem(random_blocksworld(n, seed));
    auto len = shortest_solution_length(p).length;
    if (!len) continue;
    auto it = classes.find(static_cast<int>(*len));
    if (it == classes.end() || it->second.size() >= static_cast<std::size_t>(spec.per_class)) continue;
    it->second.push_back({it->first, n, seed, std::move(p)});
    if (it->second.size() == static_cast<std::size_t>(spec.per_class)) ++filled;
  }
  if (filled < spec.lengths.size()) throw Error("could not fill every length class within the draw budget");
  std::vector<SuiteEntry> out;
  for (int len : spec.lengths) {
    for (auto& e : classes[len]) out.push_back(std::move(e));
  }
  return out;
}

std::string suite_seed_lines(const std::vector<SuiteEntry>& suite) {
  std::ostringstream os;
  os << "# length_class n_blocks seed\n";
  for (const auto& e : suite) os << e.length_class << ' ' << e.n_blocks << ' ' << e.seed << '\n';
  return os.str();
}

std::vector<SuiteEntry> load_suite(const std::string& seed_file) {
  std::ifstream in(seed_file);
  if (!in) throw Error("cannot open suite seed file '" + seed_file + "'");
  std::vector<SuiteEntry> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    int cls = 0;
    int n = 0;
    std::uint64_t seed = 0;
    if (!(ls >> cls)) continue;
    if (!(ls >> n >> seed)) throw Error(seed_file + ":" + std::to_string(line_no) + ": expected '<class> <n_blocks> <seed>'");
    out.push_back(suite_entry(cls, n, seed));
  }
  return out;
}

}  // namespace planlab
