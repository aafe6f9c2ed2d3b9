#pragma once

// Problem sources: ground blocksworld, the D1S1 artificial domain, small
// hand-built fixtures, and the text problem format.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "planlab/core.hpp"

namespace planlab {

inline constexpr int kTable = -1;

struct BlocksworldSpec {
  int n_blocks = 3;
  // below[x] is the block x sits on, or kTable.
  std::vector<int> initial_below;
  // (block, support) pairs; support may be kTable.
  std::vector<std::pair<int, int>> goal_on;
  std::uint64_t seed = 0;
  // Defaults to blocksworld_<n>_<seed>.
  std::string name;
};

// Random initial and goal configurations, never already solved.
BlocksworldSpec random_blocksworld(int n_blocks, std::uint64_t seed);
// Ground encoding with on_X_Y, on_table_X and clear_X propositions and
// three move operator families. Throws Error on invalid configurations.
Problem blocksworld_problem(const BlocksworldSpec& spec);
std::string block_name(int b);

// Operator i needs i_i (and i_{i-1}, which it deletes), adds g_i.
// `with_i0` gives operator 1 an i_0 to delete as well.
Problem d1s1_problem(const std::vector<int>& goal_indices, bool with_i0 = false);

// sussman, fig2, fig4, fig9, fig13, fig17, unsolvable (no adder for a goal), empty (no goals).
std::vector<std::string> fixture_names();
Problem fixture(std::string_view name);
// The plan a figure starts from, with labels in insertion order, or nothing
// when the figure starts from the initial plan.
std::optional<Plan> depicted_plan(std::string_view name, const Problem& problem);

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

Problem parse_problem(std::string_view text);
std::string serialize_problem(const Problem& problem);
Problem load_problem_file(const std::string& path);
// Name-level structural equality.
bool same_problem(const Problem& a, const Problem& b);

// 44-problem benchmark suite: four classes of eleven problems, one class per
// minimal solution length.
struct SuiteEntry {
  int length_class = 0;
  int n_blocks = 0;
  std::uint64_t seed = 0;
  Problem problem;
};
struct SuiteSpec {
  std::vector<int> lengths{2, 3, 4, 5};
  int per_class = 11;
  std::vector<int> block_counts{3, 4};
  std::uint64_t base_seed = 1;
};
// Throws Error if the classes cannot be filled within `max_draws` seeds.
std::vector<SuiteEntry> generate_suite(const SuiteSpec& spec, std::size_t max_draws = 100000);
// One "<length_class> <n_blocks> <seed>" line per entry; '#' starts a comment.
std::string suite_seed_lines(const std::vector<SuiteEntry>& suite);
std::vector<SuiteEntry> load_suite(const std::string& seed_file);
SuiteEntry suite_entry(int length_class, int n_blocks, std::uint64_t seed);

}  // namespace planlab
