#pragma once

#include <cstdint>
#include <random>

#include "flowcut/core.hpp"
#include "flowcut/dmc.hpp"
#include "flowcut/oracle.hpp"

namespace flowcut {

using Rng = std::mt19937_64;

struct JobBounds {
  std::size_t n = 5;
  std::int64_t p_max = 4;
  std::int64_t w_max = 4;
  std::int64_t r_max = 7;  // releases in [0, r_max]
};

// Ids 0..n-1, fields uniform within the bounds (p, w >= 1).
WftInstance random_instance(const JobBounds& b, Rng& rng);

struct DmcBounds {
  std::size_t max_edges = 12;
  std::size_t max_paths = 8;
  std::int64_t cost_max = 64;
  std::int64_t size_max = 8;
  bool binary = true;
};

// Random rooted tree on 2..max_edges+1 nodes with ancestor-descendant paths.
// Every demand is at most the total size on its path, so selecting all edges
// is always feasible.
DmcInstance random_dmc(const DmcBounds& b, Rng& rng);

// One segment of s edges with priorities in [1, s] and up to 2s paths.
PrioritySegment random_priority_segment(std::size_t s, Rng& rng);

}  // namespace flowcut
