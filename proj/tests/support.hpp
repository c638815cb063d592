#pragma once

#include <initializer_list>
#include <tuple>
#include <vector>

#include "flowcut/core.hpp"
#include "flowcut/dmc.hpp"

namespace flowcut::test {

// Jobs given as (p, w, r); ids follow list position.
inline WftInstance jobs(std::initializer_list<std::tuple<std::int64_t, std::int64_t, std::int64_t>> list) {
  std::vector<Job> out;
  JobId id = 0;
  for (auto [p, w, r] : list) out.push_back(Job{id++, p, w, r});
  return validate_instance(std::move(out));
}

// Root 0 with a chain 1..n below it; edge i has the given cost and size.
inline DmcInstance chain(std::initializer_list<std::pair<std::int64_t, std::int64_t>> edges) {
  DmcInstance d;
  d.nodes.push_back({0, kNoNode, 0, 0});
  std::int64_t id = 1;
  for (auto [c, s] : edges) {
    d.nodes.push_back({id, id - 1, c, s});
    ++id;
  }
  return d;
}

inline Schedule slots(std::initializer_list<JobId> owners) { return Schedule{owners}; }

}  // namespace flowcut::test
