#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flowcut/core.hpp"
#include "flowcut/dmc_solver.hpp"

namespace flowcut {

struct StageTiming {
  std::string stage;
  double seconds = 0;
};

struct PipelineResult {
  Schedule schedule;  // absolute slots, padding removed
  std::int64_t cost = 0;
  int H = 0;  // largest over busy parts
  std::string state_count;
  std::uint64_t dp_entries = 0;
  std::size_t parts = 0;
  std::vector<StageTiming> timings;  // summed over parts, in pipeline order
  std::vector<SolveResult> part_results;
};

// decompose -> pad -> segments -> IP2 -> reduce -> preselect -> DMC solve ->
// lift -> IP1 -> EDF, per busy part. Throws PipelineInfeasible if any stage
// hands back something infeasible.
PipelineResult solve_instance(const WftInstance& inst, int lp_exponent = 1,
                              const SolveOptions& options = {});

}  // namespace flowcut
