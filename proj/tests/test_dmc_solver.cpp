#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "flowcut/density.hpp"
#include "flowcut/dmc_solver.hpp"
#include "flowcut/dp.hpp"
#include "flowcut/gen.hpp"
#include "flowcut/oracle.hpp"
#include "flowcut/states.hpp"
#include "flowcut/tree.hpp"
#include "support.hpp"

using namespace flowcut;
using flowcut::test::chain;

namespace {

DmcInstance star(int leaves) {
  DmcInstance d;
  d.nodes.push_back({0, kNoNode, 0, 0});
  for (int i = 1; i <= leaves; ++i) d.nodes.push_back({i, 0, 1, 1});
  return d;
}

// Complete binary tree of the given depth, unit edges.
DmcInstance complete(int depth) {
  DmcInstance d;
  d.nodes.push_back({0, kNoNode, 0, 0});
  for (std::int64_t i = 1; i < (std::int64_t{1} << (depth + 1)) - 1; ++i)
    d.nodes.push_back({i, (i - 1) / 2, 1, 1});
  return d;
}

std::vector<CellEdge> cells(std::initializer_list<std::int64_t> costs, int cls = 0) {
  std::vector<CellEdge> out;
  std::int64_t id = 1;
  for (auto c : costs) out.push_back({id++, cls, c});
  return out;
}

const Budget kUnit{1, 1};

}  // namespace

// ---- trimming and classes ----

TEST_CASE("trim_by_cmax") {
  auto eq = chain({{5, 1}, {5, 1}, {5, 1}});
  eq.paths.push_back({0, 3, 2});
  auto t = trim_by_cmax(eq, 5);
  CHECK(t.forced.empty());
  CHECK(std::count(t.selectable.begin() + 1, t.selectable.end(), 1) == 3);

  auto mixed = chain({{100, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}});
  mixed.paths.push_back({0, 10, 3});
  auto m = trim_by_cmax(mixed, 100);
  CHECK(m.n == 10);
  CHECK(m.forced.size() == 9);
  CHECK(m.forced_cost == 9);
  CHECK_FALSE(m.infeasible);

  auto low = chain({{100, 5}, {1, 1}});
  low.paths.push_back({0, 2, 4});
  CHECK(trim_by_cmax(low, 1).infeasible);
}

TEST_CASE("density_class") {
  CHECK(density_class(1, 1) == 0);
  CHECK(density_class(2, 1) == 1);
  CHECK(density_class(1, 128) == -1);
  CHECK(density_class(128, 1) == 1);
  CHECK(density_class(129, 1) == 2);
}

TEST_CASE("greedy_select_cell") {
  CHECK(greedy_select_cell({}, 0, kUnit).empty());
  auto four = cells({1, 1, 1, 1});
  CHECK(greedy_select_cell(four, 0, kUnit) == std::vector<std::int64_t>{1, 2, 3, 4});
  auto skew = cells({3, 1, 1, 1});
  CHECK(greedy_select_cell(skew, 0, kUnit) == std::vector<std::int64_t>{2, 3, 4});
  CHECK(greedy_select_cell(four, 1, kUnit).empty());
}

TEST_CASE("greedy spend stays within 6B") {
  Rng rng(51);
  for (int it = 0; it < 300; ++it) {
    std::vector<CellEdge> seg;
    const int m = std::uniform_int_distribution<int>(0, 12)(rng);
    for (int i = 0; i < m; ++i) seg.push_back({i + 1, 0, std::uniform_int_distribution<std::int64_t>(1, 20)(rng)});
    const std::int64_t B = std::int64_t{1} << std::uniform_int_distribution<int>(0, 5)(rng);
    std::int64_t spend = 0;
    for (auto id : greedy_select_cell(seg, 0, Budget{B, 1})) spend += seg[id - 1].cost;
    CHECK(spend <= 6 * B);
  }
}

TEST_CASE("select_segment") {
  // everything below tau1 and cheap: whole segment
  auto low = cells({1, 1, 1}, -1);
  CHECK(select_segment(low, 0, {}, Budget{4, 1}).size() == 3);
  // a single class at tau1 reduces to the greedy rule with the segment budget
  auto at = cells({3, 1, 1, 1}, 0);
  CHECK(select_segment(at, 0, {}, kUnit) == greedy_select_cell(at, 0, kUnit));
  // two classes: class -1 edges within budget plus greedy at class 0
  std::vector<CellEdge> mix{{1, -1, 1}, {2, 0, 1}, {3, -1, 8}, {4, 0, 1}};
  CHECK(select_segment(mix, 0, {}, Budget{2, 1}) == std::vector<std::int64_t>{1, 2, 4});
}

// ---- tree shape ----

TEST_CASE("binarize") {
  auto bin = complete(2);
  CHECK(binarize(bin).size() == bin.size());

  DmcInstance d;
  d.nodes.push_back({0, kNoNode, 0, 0, -1, 0, 3});
  d.nodes.push_back({1, 0, 1, 1, -1, 0, 1});
  d.nodes.push_back({2, 0, 1, 1, -1, 2, 1});
  d.nodes.push_back({3, 0, 1, 1, -1, 4, 2});
  auto b = binarize(d);
  REQUIRE(b.size() == 5);
  CHECK(b.nodes[4].synthetic);
  CHECK(b.nodes[4].lo == 0);
  CHECK(b.nodes[4].level == 2);
  CHECK(b.nodes[1].parent == 4);
  CHECK(b.nodes[2].parent == 4);
  CHECK(b.nodes[3].parent == 0);
  CHECK(b.nodes[4].cost == 0);
  CHECK(b.nodes[4].size == 0);

  auto s = binarize(star(4));
  CHECK(s.size() == 7);
  auto depth = node_depths(s);
  for (int leaf = 1; leaf <= 4; ++leaf) CHECK(depth[leaf] == 2);
}

TEST_CASE("build_reduced_tree") {
  auto path = chain({{1, 1}, {1, 1}, {1, 1}});
  auto rp = build_reduced_tree(path);
  CHECK(rp.segments.size() == 1);
  CHECK(rp.H == 1);

  auto rc = build_reduced_tree(complete(3));
  CHECK(rc.segments.size() == 14);
  CHECK(rc.H == 3);

  // root - 1 - 2, branching at 2 into two chains
  DmcInstance f = chain({{1, 1}, {1, 1}});
  f.nodes.push_back({3, 2, 1, 1});
  f.nodes.push_back({4, 3, 1, 1});
  f.nodes.push_back({5, 2, 1, 1});
  auto rf = build_reduced_tree(f);
  CHECK(rf.segments.size() == 3);
  CHECK(rf.H == 2);
}

// ---- states ----

TEST_CASE("state counts") {
  int n = 0;
  enumerate_states({0, 0, 0, 5}, [&](const DpState& s) { n += s.cells.empty(); });
  CHECK(n == 1);
  for (int L = 1; L <= 6; ++L) {
    const auto c = enumerate_states({1, 0, 0, L}, [](const DpState&) {});
    CHECK(c == static_cast<std::uint64_t>(L * (L + 1) / 2));
  }
}

TEST_CASE("enumerated states are valid, bounded and match count_states") {
  for (int k = 1; k <= 3; ++k)
    for (int d = 0; d <= 2; ++d)
      for (int L = 1; L <= 4; ++L) {
        StateSpace sp{k, -1, -1 + d, L};
        std::uint64_t seen = 0;
        enumerate_states(sp, [&](const DpState& s) {
          ++seen;
          CHECK(is_valid_state(s, sp));
          CHECK(static_cast<int>(s.cells.size()) <= 2 * k + d + 1);
          for (std::size_t j = 0; j < s.cells.size(); ++j)
            CHECK(static_cast<int>(j) + 2 * s.cells[j].seg + s.cells[j].tau ==
                  2 * k + sp.tau_max);
        });
        CHECK(seen == static_cast<std::uint64_t>(count_states(sp)));
        CHECK(count_states(sp) <= state_space_bound(k, sp.tau_min, sp.tau_max, L));
      }
}

TEST_CASE("is_extension") {
  const int tmin = 0, tmax = 5;
  DpState parent;
  parent.seg_budget = {2, 2, 2, 2, 2};
  parent.cells = {{5, 5}, {4, 6}, {4, 5}, {3, 6}, {3, 5}, {3, 4}, {2, 5}, {1, 6}};
  parent.cell_budget = {1, 1, 1, 1, 2, 0, 1, 2};
  REQUIRE(is_valid_cell_sequence(parent.cells, 5, tmin, tmax));

  DpState child;
  child.seg_budget = {2, 2, 2, 2, 2, 3};
  child.cells = {{6, 5}, {6, 4}, {6, 3}, {6, 2}, {5, 3}, {4, 4}, {3, 5}, {3, 4}, {2, 5}, {1, 6}};
  child.cell_budget = {3, 3, 2, 1, 0, 0, 2, 0, 1, 2};
  CHECK(is_extension(child, parent, tmin, tmax));

  DpState other_budget = child;
  other_budget.seg_budget[1] = 3;
  CHECK_FALSE(is_extension(other_budget, parent, tmin, tmax));

  DpState broken_tail = child;
  broken_tail.cell_budget[7] = 1;
  CHECK_FALSE(is_extension(broken_tail, parent, tmin, tmax));

  // below a root: any sequence down S_1 qualifies
  DpState top;
  top.seg_budget = {1};
  top.cells = {{1, 5}, {1, 4}};
  top.cell_budget = {1, 0};
  CHECK(is_extension(top, DpState{}, tmin, tmax));
}

// ---- DP and solver ----

TEST_CASE("single unit edge: root entry is the edge cost") {
  // the second edge is cheap enough to be forced, leaving edge 1 to the table
  DmcInstance d = chain({{4, 2}});
  d.nodes.push_back({2, 0, 1, 1});
  d.paths.push_back({0, 1, 1});
  auto rt = build_reduced_tree(d);
  auto trim = trim_by_cmax(d, 4);
  auto dc = assign_density_classes(trim.dmc, trim.selectable);
  DpTable table(trim.dmc, rt, dc, trim.n);
  CHECK(table.root_value() == dc.scaled[1]);
  CHECK(trim.forced == std::vector<std::int64_t>{2});
  CHECK(table.extract() == std::vector<std::int64_t>{1});
}

TEST_CASE("spanning path through a branching vertex") {
  // root - 1 - 2 branching into 3 and 4; the path from 1 to 3 crosses vertex 2
  DmcInstance d = chain({{4, 2}, {8, 1}});
  d.nodes.push_back({3, 2, 8, 2});
  d.nodes.push_back({4, 2, 1, 1});
  d.paths.push_back({1, 3, 2});
  auto res = solve(d);
  REQUIRE(res.feasible);
  CHECK(verify_dmc_solution(d, res.selected));
  CHECK(res.cost >= 8);
  CHECK(std::find(res.selected.begin(), res.selected.end(), 3) != res.selected.end());
}

TEST_CASE("uncoverable path is infeasible") {
  DmcInstance d = chain({{1, 1}, {1, 1}});
  d.paths.push_back({0, 2, 5});
  CHECK_FALSE(solve(d).feasible);
}

TEST_CASE("no paths: empty selection") {
  auto res = solve(complete(2));
  CHECK(res.feasible);
  CHECK(res.selected.empty());
  CHECK(res.cost == 0);
}

TEST_CASE("solve_segment_confined") {
  DmcInstance one = chain({{3, 2}});
  one.paths.push_back({0, 1, 2});
  CHECK(solve_segment_confined(one, one.paths) == std::vector<std::int64_t>{1});

  DmcInstance d = chain({{1, 2}, {1, 2}, {5, 3}});
  d.paths.push_back({0, 3, 3});
  auto sel = solve_segment_confined(d, d.paths);
  CHECK(sel == std::vector<std::int64_t>{1, 2});
  CHECK(edge_set_cost(d, sel) == 2);
}

TEST_CASE("confined search matches brute force on nested 0-1 paths") {
  Rng rng(52);
  for (int it = 0; it < 100; ++it) {
    DmcInstance d;
    d.nodes.push_back({0, kNoNode, 0, 0});
    const int m = std::uniform_int_distribution<int>(2, 12)(rng);
    for (int i = 1; i <= m; ++i)
      d.nodes.push_back({i, i - 1, std::uniform_int_distribution<std::int64_t>(1, 9)(rng),
                         std::uniform_int_distribution<std::int64_t>(0, 1)(rng)});
    const int k = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int p = 0; p < k; ++p) {
      const std::int64_t top = std::uniform_int_distribution<std::int64_t>(0, m - 1)(rng);
      const std::int64_t bot = std::uniform_int_distribution<std::int64_t>(top + 1, m)(rng);
      std::int64_t room = 0;
      for (auto v = bot; v != top; v = d.nodes[v].parent) room += d.nodes[v].size;
      if (room > 0) d.paths.push_back({top, bot, std::uniform_int_distribution<std::int64_t>(1, room)(rng)});
    }
    d.paths = dedupe_paths(d.paths);
    auto sel = solve_segment_confined(d, d.paths);
    CHECK(verify_dmc_solution(d, sel));
    CHECK(edge_set_cost(d, sel) == brute_force_dmc(d).cost);
  }
}

TEST_CASE("table value equals the scaled cost of the extracted set") {
  Rng rng(53);
  int spanning = 0;
  for (int it = 0; it < 150; ++it) {
    auto d = random_dmc({10, 6, 64, 8, true}, rng);
    auto bin = binarize(d);
    auto rt = build_reduced_tree(bin);
    DmcInstance span = bin;
    span.paths.clear();
    for (const auto& p : bin.paths)
      if (!is_confined(bin, rt, p)) span.paths.push_back(p);
    if (span.paths.empty()) continue;
    std::set<std::int64_t> costs;
    for (const auto& v : bin.nodes)
      if (v.parent != kNoNode && v.size > 0) costs.insert(v.cost);
    for (auto g : costs) {
      auto trim = trim_by_cmax(span, g);
      if (trim.infeasible) continue;
      auto dc = assign_density_classes(trim.dmc, trim.selectable);
      DpTable table(trim.dmc, rt, dc, trim.n);
      const auto value = table.root_value();
      if (value == DpTable::kInf) continue;
      auto edges = table.extract();
      CHECK(table.scaled_cost(edges) == value);
      std::vector<std::int64_t> all = edges;
      all.insert(all.end(), trim.forced.begin(), trim.forced.end());
      CHECK(verify_dmc_solution(span, all));
      ++spanning;
    }
  }
  CHECK(spanning > 50);
}

TEST_CASE("random instances: feasible, at least the optimum, deterministic") {
  Rng rng(54);
  for (int it = 0; it < 150; ++it) {
    auto d = random_dmc({12, 8, 64, 8, it % 2 == 0}, rng);
    auto a = solve(d);
    auto b = solve(d);
    REQUIRE(a.feasible);
    CHECK(verify_dmc_solution(d, a.selected));
    CHECK(a.cost == edge_set_cost(d, a.selected));
    CHECK(a.cost >= brute_force_dmc(d).cost);
    CHECK(a.selected == b.selected);
    CHECK(a.guesses.size() == b.guesses.size());
  }
}
