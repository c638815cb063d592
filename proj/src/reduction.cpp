#include "flowcut/reduction.hpp"

#include <string>

namespace flowcut {

Reduction reduce_to_dmc(const WftInstance& inst, const std::vector<SegmentList>& segs,
                        const CoverModel& ip2, int lp_exponent) {
  if (ip2.kind != CoverKind::kIp2)
    throw Error(ErrorCode::kKindMismatch, "reduction needs IP2 constraints");
  Reduction red;
  DmcNode root;
  root.synthetic = true;
  red.dmc.nodes.push_back(root);
  red.job_of.push_back(-1);
  red.seg_of.push_back(-1);
  red.node_of.resize(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const Job& j = inst.jobs[i];
    for (std::size_t k = 0; k < segs[i].size(); ++k) {
      const DyadicSegment& seg = segs[i][k];
      DmcNode node;
      node.id = static_cast<std::int64_t>(red.dmc.nodes.size());
      node.cost = job_segment_weight(j, seg, lp_exponent);
      node.size = j.p;
      node.origin = j.id;
      node.lo = seg.lo();
      node.level = seg.level();
      if (i == 0) {
        node.parent = 0;
      } else {
        std::size_t up = segment_index_containing(segs[i - 1], seg.lo());
        if (!segs[i - 1][up].contains(seg))
          throw Error(ErrorCode::kInvalidArgument,
                      "segments of job " + std::to_string(j.id) + " are not nested");
        node.parent = red.node_of[i - 1][up];
      }
      red.node_of[i].push_back(node.id);
      red.job_of.push_back(static_cast<std::int64_t>(i));
      red.seg_of.push_back(static_cast<std::int64_t>(k));
      red.dmc.nodes.push_back(node);
    }
  }
  std::vector<DemandPath> paths;
  for (const IntervalConstraint& c : ip2.constraints) {
    if (c.members.empty())
      throw Error(ErrorCode::kInvalidArgument, "constraint without members");
    const Member& first = c.members.front();
    const Member& last = c.members.back();
    DemandPath p;
    p.top = red.dmc.nodes[red.node_of[first.job][first.index]].parent;
    p.bottom = red.node_of[last.job][last.index];
    p.demand = c.rhs;
    if (!is_ancestor(red.dmc, p.top, p.bottom))
      throw Error(ErrorCode::kInvalidArgument, "constraint is not a tree path");
    paths.push_back(p);
  }
  red.dmc.paths = dedupe_paths(std::move(paths));
  return red;
}

Preselection preselect_short_edges(const Reduction& red, std::int64_t p_min) {
  Preselection out;
  std::vector<char> remove(red.dmc.size(), 0);
  for (const DmcNode& v : red.dmc.nodes) {
    if (v.parent == kNoNode || v.level < 0) continue;
    if ((std::int64_t{1} << v.level) <= p_min) {
      remove[v.id] = 1;
      out.forced.push_back(v.id);
      out.forced_cost = checked_add(out.forced_cost, v.cost);
    }
  }
  out.contracted = contract(red.dmc, remove);
  return out;
}

CoverSolution lift_solution(const WftInstance& inst, const std::vector<SegmentList>& segs,
                            const Reduction& red, const std::vector<std::int64_t>& selected,
                            int lp_exponent) {
  if (!verify_dmc_solution(red.dmc, selected))
    throw Error(ErrorCode::kInfeasibleEdgeSet, "edge set leaves a path uncovered");
  std::vector<std::vector<std::int64_t>> y(inst.size());
  for (std::int64_t e : selected) {
    if (red.job_of[e] < 0) continue;
    y[red.job_of[e]].push_back(red.seg_of[e]);
  }
  return make_solution(inst, segs, CoverKind::kIp2, std::move(y), lp_exponent);
}

}  // namespace flowcut
