#pragma once

#include <cstdint>
#include <vector>

#include "flowcut/core.hpp"
#include "flowcut/segments.hpp"

namespace flowcut {

enum class CoverKind { kIp1, kIp2 };

// One variable of a covering constraint. For IP1 `index` is a slot t and the
// member stands for x_{job,t}; for IP2 it is the position of the job segment
// in that job's SegmentList.
struct Member {
  std::size_t job = 0;  // position in WftInstance::jobs
  std::int64_t index = 0;

  friend bool operator==(const Member&, const Member&) = default;
};

// Interval [s, t] with rhs = p(J(I)) - (t - s) > 0, one member per job
// released inside the interval, in instance order.
struct IntervalConstraint {
  std::int64_t s = 0;
  std::int64_t t = 0;
  std::int64_t rhs = 0;
  std::vector<Member> members;
};

struct CoverModel {
  CoverKind kind = CoverKind::kIp1;
  std::vector<IntervalConstraint> constraints;
};

// selected[i] lists the chosen indices of job i in increasing order: slots
// for IP1, segment positions for IP2. `cost` is cached at construction.
struct CoverSolution {
  CoverKind kind = CoverKind::kIp1;
  std::vector<std::vector<std::int64_t>> selected;
  std::int64_t cost = 0;
};

CoverModel build_ip1(const WftInstance& inst);
CoverModel build_ip2(const WftInstance& inst, const std::vector<SegmentList>& segs);

// Cost under the given objective exponent. IP1: sum_j (w_j * #slots)^p.
// IP2: sum over selected job segments of (w_j * l(S))^p.
std::int64_t cover_cost(const WftInstance& inst, const std::vector<SegmentList>& segs,
                        CoverKind kind,
                        const std::vector<std::vector<std::int64_t>>& selected,
                        int lp_exponent = 1);

CoverSolution make_solution(const WftInstance& inst,
                            const std::vector<SegmentList>& segs, CoverKind kind,
                            std::vector<std::vector<std::int64_t>> selected,
                            int lp_exponent = 1);

bool check_feasible(const WftInstance& inst, const CoverModel& model,
                    const CoverSolution& sol);

// IP1 indicator vector of a schedule: x_{j,t} = 1 for r_j <= t < C_j.
CoverSolution ip1_from_schedule(const WftInstance& inst, const Schedule& s,
                                int lp_exponent = 1);

CoverSolution ip1_to_ip2(const WftInstance& inst, const std::vector<SegmentList>& segs,
                         const CoverSolution& x, int lp_exponent = 1);
CoverSolution ip2_to_ip1(const WftInstance& inst, const std::vector<SegmentList>& segs,
                         const CoverSolution& y, int lp_exponent = 1);

// Earliest-deadline-first schedule meeting d_j = 1 + last selected slot.
Schedule edf_schedule_from_ip1(const WftInstance& inst, const CoverSolution& x);

}  // namespace flowcut
