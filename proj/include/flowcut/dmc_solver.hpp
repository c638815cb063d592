#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flowcut/dmc.hpp"

namespace flowcut {

// Exact minimum-cost cover of paths that all lie inside one chain of edges.
// Branch and bound over the edges touched by some path, cheapest density
// first; throws TooLarge above `max_edges` such edges.
std::vector<std::int64_t> solve_segment_confined(const DmcInstance& dmc,
                                                 const std::vector<DemandPath>& paths,
                                                 std::size_t max_edges = 30);

struct GuessReport {
  std::int64_t cmax_guess = 0;
  int H = 0;
  int tau_min = 0;
  int tau_max = 0;
  std::string state_count;  // valid states of the full space, summed over vertices
  std::uint64_t dp_entries = 0;
  std::int64_t cost = -1;  // original cost of the guess's edge set, -1 if none
  std::int64_t forced_cost = 0;
};

struct SolveOptions {
  std::size_t confined_max_edges = 30;
};

struct SolveResult {
  bool feasible = false;
  std::vector<std::int64_t> selected;  // node ids of the input instance
  std::int64_t cost = 0;
  int H = 0;
  std::uint64_t dp_entries = 0;
  std::int64_t winning_guess = -1;
  std::vector<GuessReport> guesses;
};

SolveResult solve(const DmcInstance& dmc, const SolveOptions& options = {});

}  // namespace flowcut
