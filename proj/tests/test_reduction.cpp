#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "flowcut/gen.hpp"
#include "flowcut/oracle.hpp"
#include "flowcut/reduction.hpp"
#include "support.hpp"

using namespace flowcut;
using flowcut::test::jobs;

namespace {

struct Built {
  WftInstance inst;
  std::vector<SegmentList> segs;
  CoverModel ip2;
  Reduction red;
};

Built build(const WftInstance& raw, int lp = 1) {
  Built b;
  b.inst = pad_to_power_of_two(raw);
  b.segs = all_segments(b.inst);
  b.ip2 = build_ip2(b.inst, b.segs);
  b.red = reduce_to_dmc(b.inst, b.segs, b.ip2, lp);
  return b;
}

}  // namespace

TEST_CASE("first job's segments each hang from the root") {
  auto b = build(jobs({{8, 1, 0}}));
  const auto& d = b.red.dmc;
  REQUIRE(d.size() == 5);
  for (std::int64_t v = 1; v < 5; ++v) CHECK(d.nodes[v].parent == 0);
  CHECK(d.nodes[4].cost == 4);
  CHECK(d.nodes[4].size == 8);
  for (const auto& p : d.paths) CHECK(p.top == 0);
}

TEST_CASE("second job hangs under the first job's containing segments") {
  auto b = build(jobs({{5, 1, 0}, {3, 1, 3}}));
  const auto& d = b.red.dmc;
  // job 1: [3,4] under [2,4]; [4,6] and [6,8] under [4,8]
  const auto& n0 = b.red.node_of[0];
  const auto& n1 = b.red.node_of[1];
  CHECK(d.nodes[n1[0]].parent == n0[2]);
  CHECK(d.nodes[n1[1]].parent == n0[3]);
  CHECK(d.nodes[n1[2]].parent == n0[3]);
}

TEST_CASE("node count and path shape") {
  Rng rng(41);
  for (int it = 0; it < 100; ++it) {
    auto raw = busy_decompose(random_instance({5, 4, 4, 7}, rng))[0];
    auto b = build(raw);
    std::size_t total = 1;
    for (const auto& l : b.segs) total += l.size();
    CHECK(b.red.dmc.size() == total);
    validate_dmc(b.red.dmc);
    for (const auto& p : b.red.dmc.paths) {
      CHECK(is_ancestor(b.red.dmc, p.top, p.bottom));
      CHECK(p.demand > 0);
    }
  }
}

TEST_CASE("preselect_short_edges") {
  auto b = build(jobs({{8, 1, 0}}));
  auto unit = preselect_short_edges(b.red, 1);
  CHECK(unit.forced == std::vector<std::int64_t>{1, 2});
  auto two = preselect_short_edges(b.red, 2);
  CHECK(two.forced == std::vector<std::int64_t>{1, 2, 3});
  CHECK(two.forced_cost == 4);
  // Every prefix path ending at a forced edge is met by the contraction.
  for (const auto& p : two.contracted.dmc.paths) CHECK(p.bottom != 0);
  CHECK_FALSE(two.contracted.infeasible);
}

TEST_CASE("preselection cost stays within 4 w p per job") {
  Rng rng(42);
  for (int it = 0; it < 100; ++it) {
    auto b = build(busy_decompose(random_instance({5, 4, 4, 7}, rng))[0]);
    auto pre = preselect_short_edges(b.red, b.inst.min_processing(false));
    std::int64_t bound = 0;
    for (const auto& j : b.inst.jobs) bound += 4 * j.w * j.p;
    CHECK(pre.forced_cost <= bound);
  }
}

TEST_CASE("lift_solution") {
  auto b = build(jobs({{1, 3, 0}}));
  std::vector<std::int64_t> all;
  for (std::int64_t v = 1; v < static_cast<std::int64_t>(b.red.dmc.size()); ++v) all.push_back(v);
  auto y = lift_solution(b.inst, b.segs, b.red, all);
  CHECK(check_feasible(b.inst, b.ip2, y));
  auto first = lift_solution(b.inst, b.segs, b.red, {1});
  CHECK(check_feasible(b.inst, b.ip2, first));
  CHECK(first.cost == 3);
  CHECK_THROWS_AS(lift_solution(b.inst, b.segs, b.red, {}), Error);
}

TEST_CASE("oracle DMC optimum lifts to a feasible IP2 solution of equal cost") {
  Rng rng(43);
  int checked = 0;
  for (int it = 0; it < 200 && checked < 60; ++it) {
    auto b = build(busy_decompose(random_instance({4, 3, 4, 6}, rng))[0]);
    std::size_t edges = b.red.dmc.size() - 1;
    if (edges > 22) continue;
    auto opt = brute_force_dmc(b.red.dmc);
    REQUIRE(opt.feasible);
    auto y = lift_solution(b.inst, b.segs, b.red, opt.edges);
    CHECK(check_feasible(b.inst, b.ip2, y));
    CHECK(y.cost == opt.cost);
    CHECK(y.cost == edge_set_cost(b.red.dmc, opt.edges));
    ++checked;
  }
  CHECK(checked >= 30);
}

TEST_CASE("lp costs are w(j,S)^p per edge") {
  auto b = build(jobs({{3, 2, 0}, {2, 3, 1}}), 2);
  for (std::size_t v = 1; v < b.red.dmc.size(); ++v) {
    const auto& n = b.red.dmc.nodes[v];
    const auto& job = b.inst.jobs[b.red.job_of[v]];
    const std::int64_t w = job.w * (std::int64_t{1} << n.level);
    CHECK(n.cost == w * w);
  }
}
