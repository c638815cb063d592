#include "flowcut/covering.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace flowcut {
namespace {

std::vector<std::int64_t> distinct_releases(const WftInstance& inst) {
  std::vector<std::int64_t> out;
  for (const Job& j : inst.jobs) out.push_back(j.r);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool has(const std::vector<std::int64_t>& sorted, std::int64_t v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

void check_shape(const WftInstance& inst, const CoverSolution& sol) {
  if (sol.selected.size() != inst.size())
    throw Error(ErrorCode::kInvalidArgument, "solution does not match instance");
}

}  // namespace

CoverModel build_ip1(const WftInstance& inst) {
  // For a fixed t and job set, the tightest s is the smallest release in the
  // set, so s ranges over release dates only. Every t is kept because each
  // slot carries its own variables.
  CoverModel model{CoverKind::kIp1, {}};
  for (std::int64_t s : distinct_releases(inst)) {
    std::int64_t work = 0;
    std::size_t next = 0;
    while (next < inst.size() && inst.jobs[next].r < s) ++next;
    const std::size_t first = next;
    for (std::int64_t t = s; t <= inst.horizon; ++t) {
      while (next < inst.size() && inst.jobs[next].r <= t)
        work = checked_add(work, inst.jobs[next++].p);
      std::int64_t rhs = work - (t - s);
      if (rhs <= 0) continue;
      IntervalConstraint c{s, t, rhs, {}};
      for (std::size_t i = first; i < next; ++i) c.members.push_back({i, t});
      model.constraints.push_back(std::move(c));
    }
  }
  return model;
}

CoverModel build_ip2(const WftInstance& inst, const std::vector<SegmentList>& segs) {
  // Member sets only change at releases and segment starts; between two such
  // points the rhs shrinks with t, so those points dominate.
  std::set<std::int64_t> ends;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    ends.insert(inst.jobs[i].r);
    for (const DyadicSegment& seg : segs[i]) ends.insert(seg.lo());
  }
  ends.insert(0);
  ends.insert(inst.horizon);
  CoverModel model{CoverKind::kIp2, {}};
  for (std::int64_t s : distinct_releases(inst)) {
    for (std::int64_t t : ends) {
      if (t < s) continue;
      std::int64_t work = 0;
      IntervalConstraint c{s, t, 0, {}};
      for (std::size_t i = 0; i < inst.size(); ++i) {
        const Job& j = inst.jobs[i];
        if (j.r < s || j.r > t) continue;
        work = checked_add(work, j.p);
        if (t < inst.horizon)
          c.members.push_back(
              {i, static_cast<std::int64_t>(segment_index_containing(segs[i], t))});
      }
      c.rhs = work - (t - s);
      if (c.rhs > 0) model.constraints.push_back(std::move(c));
    }
  }
  return model;
}

std::int64_t cover_cost(const WftInstance& inst, const std::vector<SegmentList>& segs,
                        CoverKind kind,
                        const std::vector<std::vector<std::int64_t>>& selected,
                        int lp_exponent) {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    const Job& j = inst.jobs[i];
    if (kind == CoverKind::kIp1) {
      auto count = static_cast<std::int64_t>(selected[i].size());
      total = checked_add(total, checked_pow(checked_mul(j.w, count), lp_exponent));
    } else {
      for (std::int64_t k : selected[i])
        total = checked_add(total, job_segment_weight(j, segs[i][k], lp_exponent));
    }
  }
  return total;
}

CoverSolution make_solution(const WftInstance& inst,
                            const std::vector<SegmentList>& segs, CoverKind kind,
                            std::vector<std::vector<std::int64_t>> selected,
                            int lp_exponent) {
  for (auto& v : selected) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  CoverSolution sol{kind, std::move(selected), 0};
  check_shape(inst, sol);
  sol.cost = cover_cost(inst, segs, kind, sol.selected, lp_exponent);
  return sol;
}

bool check_feasible(const WftInstance& inst, const CoverModel& model,
                    const CoverSolution& sol) {
  if (model.kind != sol.kind)
    throw Error(ErrorCode::kKindMismatch, "model and solution kinds differ");
  check_shape(inst, sol);
  if (sol.kind == CoverKind::kIp1) {
    for (std::size_t i = 0; i < inst.size(); ++i) {
      for (std::int64_t t : sol.selected[i]) {
        if (t < inst.jobs[i].r) return false;
        if (t > inst.jobs[i].r && !has(sol.selected[i], t - 1)) return false;
      }
    }
  }
  for (const IntervalConstraint& c : model.constraints) {
    std::int64_t lhs = 0;
    for (const Member& m : c.members)
      if (has(sol.selected[m.job], m.index)) lhs += inst.jobs[m.job].p;
    if (lhs < c.rhs) return false;
  }
  return true;
}

CoverSolution ip1_from_schedule(const WftInstance& inst, const Schedule& s,
                                int lp_exponent) {
  auto outcomes = schedule_outcomes(inst, s);
  std::vector<std::vector<std::int64_t>> sel(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i)
    for (std::int64_t t = inst.jobs[i].r; t < outcomes[i].completion; ++t)
      sel[i].push_back(t);
  return make_solution(inst, {}, CoverKind::kIp1, std::move(sel), lp_exponent);
}

CoverSolution ip1_to_ip2(const WftInstance& inst, const std::vector<SegmentList>& segs,
                         const CoverSolution& x, int lp_exponent) {
  if (x.kind != CoverKind::kIp1)
    throw Error(ErrorCode::kKindMismatch, "expected an IP1 solution");
  check_shape(inst, x);
  std::vector<std::vector<std::int64_t>> sel(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (x.selected[i].empty()) continue;
    const std::int64_t last = x.selected[i].back();
    if (last >= inst.horizon)
      throw Error(ErrorCode::kInfeasibleInput, "slot beyond horizon");
    const std::size_t upto = segment_index_containing(segs[i], last);
    for (std::size_t k = 0; k <= upto; ++k) sel[i].push_back(static_cast<std::int64_t>(k));
  }
  return make_solution(inst, segs, CoverKind::kIp2, std::move(sel), lp_exponent);
}

CoverSolution ip2_to_ip1(const WftInstance& inst, const std::vector<SegmentList>& segs,
                         const CoverSolution& y, int lp_exponent) {
  if (y.kind != CoverKind::kIp2)
    throw Error(ErrorCode::kKindMismatch, "expected an IP2 solution");
  check_shape(inst, y);
  std::vector<std::vector<std::int64_t>> sel(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (y.selected[i].empty()) continue;
    const std::int64_t k = y.selected[i].back();
    if (k < 0 || k >= static_cast<std::int64_t>(segs[i].size()))
      throw Error(ErrorCode::kInfeasibleInput, "segment index out of range");
    for (std::int64_t t = inst.jobs[i].r; t < segs[i][k].hi(); ++t) sel[i].push_back(t);
  }
  return make_solution(inst, segs, CoverKind::kIp1, std::move(sel), lp_exponent);
}

Schedule edf_schedule_from_ip1(const WftInstance& inst, const CoverSolution& x) {
  if (x.kind != CoverKind::kIp1)
    throw Error(ErrorCode::kKindMismatch, "expected an IP1 solution");
  check_shape(inst, x);
  const std::size_t n = inst.size();
  std::vector<std::int64_t> deadline(n), remaining(n);
  for (std::size_t i = 0; i < n; ++i) {
    deadline[i] = x.selected[i].empty() ? inst.jobs[i].r : x.selected[i].back() + 1;
    remaining[i] = inst.jobs[i].p;
  }
  Schedule s;
  std::size_t left = n;
  for (std::int64_t t = 0; left > 0; ++t) {
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (remaining[i] == 0 || inst.jobs[i].r > t) continue;
      if (deadline[i] <= t)
        throw Error(ErrorCode::kDeadlineMiss,
                    "job " + std::to_string(inst.jobs[i].id) + " misses deadline " +
                        std::to_string(deadline[i]));
      if (pick == n || deadline[i] < deadline[pick] ||
          (deadline[i] == deadline[pick] && inst.jobs[i].id < inst.jobs[pick].id))
        pick = i;
    }
    if (pick == n) {
      s.slot_owner.push_back(kIdle);
      continue;
    }
    s.slot_owner.push_back(inst.jobs[pick].id);
    if (--remaining[pick] == 0) --left;
  }
  return s;
}

}  // namespace flowcut
