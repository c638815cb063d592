#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "flowcut/gen.hpp"
#include "flowcut/io.hpp"
#include "flowcut/oracle.hpp"
#include "flowcut/pipeline.hpp"
#include "support.hpp"

using namespace flowcut;
using flowcut::test::jobs;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("flowcut_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run(const std::string& args, const std::string& out = "/dev/null",
        const std::string& env = "") {
  const std::string cmd = env + " " FLOWCUT_CLI " " + args + " > " + out + " 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("instance and schedule round trip through JSON") {
  auto inst = jobs({{2, 1, 3}, {1, 5, 0}});
  auto back = instance_from_json(instance_to_json(inst));
  CHECK(back.jobs == inst.jobs);
  Schedule s{{1, kIdle, 0, 0}};
  CHECK(schedule_from_json(schedule_to_json(s)) == s);
  CHECK(schedule_from_json(Json::parse("[0, null, 1]")) == Schedule{{0, kIdle, 1}});
}

TEST_CASE("parse errors") {
  auto expect = [](const std::string& text, ErrorCode code) {
    try {
      instance_from_json(Json::parse(text));
      FAIL("accepted " << text);
    } catch (const Error& e) {
      CHECK(e.code() == code);
    }
  };
  expect(R"({"format":"other","jobs":[]})", ErrorCode::kParseError);
  expect(R"({"jobs":[{"id":0,"p":1.5,"w":1,"r":0}]})", ErrorCode::kNonIntegralField);
  expect(R"({"jobs":[{"id":0,"w":1,"r":0}]})", ErrorCode::kParseError);
  expect(R"({"jobs":[]})", ErrorCode::kEmptyInstance);
}

TEST_CASE("DMC round trip") {
  auto d = test::chain({{3, 1}, {4, 2}});
  d.paths.push_back({0, 2, 2});
  auto back = dmc_from_json(dmc_to_json(d));
  REQUIRE(back.size() == d.size());
  CHECK(back.paths == d.paths);
  CHECK(back.nodes[2].cost == 4);
}

TEST_CASE("generator bounds and determinism") {
  Rng a(5), b(5);
  CHECK(instance_to_json(random_instance({5, 4, 4, 7}, a)).dump() ==
        instance_to_json(random_instance({5, 4, 4, 7}, b)).dump());
  Rng c(6);
  auto inst = random_instance({5, 4, 9, 7}, c);
  CHECK(inst.size() == 5);
  for (const auto& j : inst.jobs) CHECK((j.p >= 1 && j.p <= 4));
  CHECK_THROWS_AS(random_instance({0, 4, 4, 7}, c), Error);
}

TEST_CASE("pipeline: single job runs at its release") {
  auto res = solve_instance(jobs({{3, 2, 4}}));
  CHECK(res.cost == 6);
  CHECK(res.schedule == Schedule{{kIdle, kIdle, kIdle, kIdle, 0, 0, 0}});
}

TEST_CASE("pipeline: worked two-job instance") {
  auto res = solve_instance(jobs({{2, 1, 0}, {1, 3, 1}}));
  CHECK(is_feasible_schedule(jobs({{2, 1, 0}, {1, 3, 1}}), res.schedule));
  CHECK(res.cost >= 6);
}

TEST_CASE("pipeline: padding never shows in the schedule") {
  auto inst = jobs({{3, 1, 0}, {2, 2, 1}});  // T = 5, padded to 8
  auto res = solve_instance(inst);
  for (JobId o : res.schedule.slot_owner) CHECK((o == kIdle || o == 0 || o == 1));
  CHECK(is_feasible_schedule(inst, res.schedule));
}

TEST_CASE("pipeline: random instances give feasible schedules at or above the optimum") {
  Rng rng(71);
  for (int it = 0; it < 60; ++it) {
    auto inst = random_instance({5, 4, 4, 7}, rng);
    for (int lp : {1, 2}) {
      auto res = solve_instance(inst, lp);
      REQUIRE(is_feasible_schedule(inst, res.schedule));
      CHECK(res.cost == evaluate_schedule(inst, res.schedule, lp));
      WftInstance local = inst;
      const auto shift = inst.jobs.front().r;
      for (auto& j : local.jobs) j.r -= shift;
      CHECK(res.cost >= brute_force_wft(local, lp).cost);
    }
  }
}

TEST_CASE("cli: exit codes") {
  auto dir = scratch("exit");
  CHECK(run("") == 1);
  CHECK(run("frobnicate") == 1);
  CHECK(run("gen --n 0") == 1);
  CHECK(run("gen --seed 1 --n 3 --out " + (dir / "a.json").string()) == 0);
  CHECK(run("solve " + (dir / "a.json").string() + " --schedule-out " +
            (dir / "s.json").string()) == 0);
  CHECK(run("verify " + (dir / "a.json").string() + " " + (dir / "s.json").string()) == 0);
  std::ofstream(dir / "bad.json") << R"({"format":"flowcut-v1","slots":[null]})";
  CHECK(run("verify " + (dir / "a.json").string() + " " + (dir / "bad.json").string()) == 2);
  CHECK(run("solve " + (dir / "bad.json").string()) == 1);
  CHECK(run("solve " + (dir / "a.json").string() + " --format xml") == 1);
}

TEST_CASE("cli: gen is byte-identical for a seed") {
  auto dir = scratch("gen");
  run("gen --seed 9 --n 5 --p-max 4", (dir / "a").string());
  run("gen --seed 9 --n 5 --p-max 4", (dir / "b").string());
  CHECK(slurp(dir / "a") == slurp(dir / "b"));
  CHECK(!slurp(dir / "a").empty());
}

TEST_CASE("cli: compare output does not depend on thread count") {
  auto dir = scratch("compare");
  REQUIRE(run("gen --seed 4 --count 12 --out-dir " + (dir / "corpus").string()) == 0);
  CHECK(run("compare " + (dir / "corpus").string() + " --format csv", (dir / "one").string(),
            "FLOWCUT_THREADS=1") == 0);
  CHECK(run("compare " + (dir / "corpus").string() + " --format csv", (dir / "four").string(),
            "FLOWCUT_THREADS=4") == 0);
  CHECK(slurp(dir / "one") == slurp(dir / "four"));
  CHECK(run("compare " + (dir / "corpus").string(), "/dev/null", "FLOWCUT_THREADS=zero") == 1);
}

TEST_CASE("cli: singleton corpus has ratio 1") {
  auto dir = scratch("single");
  fs::create_directories(dir / "c");
  for (int i = 0; i < 3; ++i)
    std::ofstream(dir / "c" / ("s" + std::to_string(i) + ".json"))
        << R"({"format":"flowcut-v1","jobs":[{"id":0,"p":)" << i + 1
        << R"(,"w":2,"r":)" << i << "}]}";
  REQUIRE(run("compare " + (dir / "c").string() + " --format csv", (dir / "out").string()) == 0);
  std::istringstream rows(slurp(dir / "out"));
  std::string line;
  std::getline(rows, line);
  int n = 0;
  while (std::getline(rows, line)) {
    CHECK(line.find(",1.000000,") != std::string::npos);
    ++n;
  }
  CHECK(n == 3);
}
