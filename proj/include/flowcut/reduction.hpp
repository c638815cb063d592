#pragma once

#include <cstdint>
#include <vector>

#include "flowcut/covering.hpp"
#include "flowcut/dmc.hpp"

namespace flowcut {

// DMC forest built from job segments. Node 0 is the synthetic root; every
// other node is a job segment (job position, segment position).
struct Reduction {
  DmcInstance dmc;
  std::vector<std::int64_t> job_of;  // position in WftInstance::jobs, -1 for roots
  std::vector<std::int64_t> seg_of;  // position in that job's SegmentList
  std::vector<std::vector<std::int64_t>> node_of;  // [job][segment] -> node id
};

Reduction reduce_to_dmc(const WftInstance& inst, const std::vector<SegmentList>& segs,
                        const CoverModel& ip2, int lp_exponent = 1);

struct Preselection {
  std::vector<std::int64_t> forced;  // node ids in the uncontracted instance
  std::int64_t forced_cost = 0;
  Contraction contracted;
};

// Selects and contracts every edge whose segment has length <= p_min.
Preselection preselect_short_edges(const Reduction& red, std::int64_t p_min);

// IP2 solution with y(j,S) = 1 exactly on the selected edges.
CoverSolution lift_solution(const WftInstance& inst, const std::vector<SegmentList>& segs,
                            const Reduction& red, const std::vector<std::int64_t>& selected,
                            int lp_exponent = 1);

}  // namespace flowcut
