#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>

#include "flowcut/gen.hpp"
#include "flowcut/segments.hpp"
#include "support.hpp"

using namespace flowcut;

namespace {

std::vector<std::pair<std::int64_t, std::int64_t>> bounds(const SegmentList& l) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (const auto& s : l) out.push_back({s.lo(), s.hi()});
  return out;
}

using Pairs = std::vector<std::pair<std::int64_t, std::int64_t>>;

}  // namespace

TEST_CASE("form_segments") {
  CHECK(bounds(form_segments(0, 8)) == Pairs{{0, 1}, {1, 2}, {2, 4}, {4, 8}});
  CHECK(bounds(form_segments(3, 8)) == Pairs{{3, 4}, {4, 6}, {6, 8}});
  CHECK(bounds(form_segments(6, 8)) == Pairs{{6, 7}, {7, 8}});
}

TEST_CASE("segment_containing") {
  auto a = form_segments(0, 8);
  CHECK(bounds({segment_containing(a, 2)}) == Pairs{{2, 4}});
  CHECK(bounds({segment_containing(a, 0)}) == Pairs{{0, 1}});
  CHECK(bounds({segment_containing(form_segments(3, 8), 7)}) == Pairs{{6, 8}});
}

TEST_CASE("DyadicSegment only builds aligned intervals") {
  CHECK_THROWS_AS(DyadicSegment::make(2, 2), Error);
  auto s = DyadicSegment::make(4, 2);
  CHECK(s.hi() == 8);
  CHECK(s.contains(DyadicSegment::make(6, 1)));
}

TEST_CASE("check_nesting") {
  auto one = test::jobs({{4, 1, 0}});
  CHECK(check_nesting(one, all_segments(one)));
  auto two = test::jobs({{5, 1, 0}, {3, 1, 3}});
  auto segs = all_segments(two);
  CHECK(segment_containing(segs[0], 5).level() == 2);
  CHECK(segment_containing(segs[1], 5).level() == 1);
  CHECK(check_nesting(two, segs));
}

TEST_CASE("partition, two per level, geometric prefix growth") {
  Rng rng(21);
  for (int it = 0; it < 500; ++it) {
    const std::int64_t T = std::int64_t{1} << std::uniform_int_distribution<int>(0, 12)(rng);
    const std::int64_t r = std::uniform_int_distribution<std::int64_t>(0, T - 1)(rng);
    auto l = form_segments(r, T);
    std::int64_t at = r, prefix = 0;
    std::map<int, int> per_level;
    for (const auto& s : l) {
      CHECK(s.lo() == at);
      CHECK(s.lo() % s.length() == 0);
      at = s.hi();
      prefix += s.length();
      CHECK(prefix <= 4 * s.length());
      CHECK(++per_level[s.level()] <= 2);
    }
    CHECK(at == T);
  }
}

TEST_CASE("job segments sharing a slot are laminar") {
  Rng rng(22);
  for (int it = 0; it < 100; ++it) {
    auto inst = pad_to_power_of_two(random_instance({5, 4, 4, 7}, rng));
    auto segs = all_segments(inst);
    CHECK(check_nesting(inst, segs));
    for (std::int64_t t = 0; t < inst.horizon; ++t) {
      std::vector<DyadicSegment> hit;
      for (std::size_t i = 0; i < inst.size(); ++i)
        if (inst.jobs[i].r <= t) hit.push_back(segment_containing(segs[i], t));
      for (const auto& a : hit)
        for (const auto& b : hit) CHECK((a.contains(b) || b.contains(a)));
    }
  }
}

TEST_CASE("job_segment_weight") {
  Job j{0, 3, 2, 0};
  auto s = DyadicSegment::make(4, 2);
  CHECK(job_segment_weight(j, s, 1) == 8);
  CHECK(job_segment_weight(j, s, 2) == 64);
}
