#include "flowcut/density.hpp"

#include <algorithm>

namespace flowcut {

TrimResult trim_by_cmax(const DmcInstance& dmc, std::int64_t cmax) {
  TrimResult out;
  out.dmc = dmc;
  out.selectable.assign(dmc.size(), 0);
  std::int64_t edges = 0;
  for (const DmcNode& v : dmc.nodes)
    if (v.parent != kNoNode) ++edges;
  out.n = std::max<std::int64_t>(edges, 1);
  std::vector<char> frozen(dmc.size(), 0);
  for (DmcNode& v : out.dmc.nodes) {
    if (v.parent == kNoNode || v.size == 0) continue;
    if (v.cost > cmax) continue;
    if (checked_mul(v.cost, out.n) <= cmax) {
      frozen[v.id] = 1;
      out.forced.push_back(v.id);
      out.forced_cost = checked_add(out.forced_cost, v.cost);
      continue;
    }
    out.selectable[v.id] = 1;
  }
  out.dmc.paths.clear();
  for (const DemandPath& p : dmc.paths) {
    std::int64_t demand = p.demand, reach = 0;
    for (std::int64_t e : path_edges(dmc, p)) {
      if (frozen[e]) demand -= dmc.nodes[e].size;
      else if (out.selectable[e]) reach += dmc.nodes[e].size;
    }
    if (demand <= 0) continue;
    if (reach < demand) out.infeasible = true;
    out.dmc.paths.push_back({p.top, p.bottom, demand});
  }
  for (std::int64_t e : out.forced) out.dmc.nodes[e].size = 0;
  return out;
}

int density_class(std::int64_t cost, std::int64_t size) {
  if (cost <= 0 || size <= 0)
    throw Error(ErrorCode::kInvalidArgument, "density of a free or empty edge");
  __int128 c = cost, p = size;
  int tau = 0;
  if (c <= p) {
    // Step down while cost <= size * 128^(tau-1), i.e. cost * 128^(1-tau) <= size.
    __int128 scaled = c;
    while (scaled * 128 <= p) {
      scaled *= 128;
      --tau;
    }
    return tau;
  }
  while (p < c) {
    p *= 128;
    ++tau;
  }
  return tau;
}

DensityClasses assign_density_classes(const DmcInstance& dmc,
                                      const std::vector<char>& selectable) {
  DensityClasses out;
  out.cls.assign(dmc.size(), kNoClass);
  out.scaled.assign(dmc.size(), 0);
  for (const DmcNode& v : dmc.nodes) {
    if (!selectable[v.id] || v.size == 0) continue;
    int tau = density_class(v.cost, v.size);
    out.cls[v.id] = tau;
    if (!out.any) out.tau_min = out.tau_max = tau;
    out.tau_min = std::min(out.tau_min, tau);
    out.tau_max = std::max(out.tau_max, tau);
    out.any = true;
  }
  for (const DmcNode& v : dmc.nodes) {
    if (out.cls[v.id] == kNoClass) continue;
    std::int64_t c = v.size;
    for (int t = out.tau_min; t < out.cls[v.id]; ++t) c = checked_mul(c, 128);
    out.scaled[v.id] = c;
    out.scaled_max = std::max(out.scaled_max, c);
  }
  return out;
}

Budget grid_budget(int b, std::int64_t n, std::int64_t scaled_max) {
  Budget out{scaled_max, n};
  if (b >= 0) {
    for (int i = 0; i < b; ++i) out.num *= 2;
  } else {
    for (int i = 0; i < -b; ++i) out.den *= 2;
  }
  return out;
}

namespace {

void prefix(std::span<const CellEdge> segment, int tau, const Budget& budget,
            bool top_down, std::vector<char>& take) {
  __int128 total = 0;
  const std::size_t m = segment.size();
  for (std::size_t step = 0; step < m; ++step) {
    const std::size_t i = top_down ? step : m - 1 - step;
    const CellEdge& e = segment[i];
    if (e.cls != tau || !budget.admits(e.cost)) continue;
    take[i] = 1;
    total += e.cost;
    if (budget.exceeded(total)) break;
  }
}

std::vector<std::int64_t> collect(std::span<const CellEdge> segment,
                                  const std::vector<char>& take) {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < segment.size(); ++i)
    if (take[i]) out.push_back(segment[i].node);
  return out;
}

}  // namespace

std::vector<std::int64_t> greedy_select_cell(std::span<const CellEdge> segment, int tau,
                                             const Budget& budget) {
  std::vector<char> take(segment.size(), 0);
  prefix(segment, tau, budget, true, take);
  prefix(segment, tau, budget, false, take);
  return collect(segment, take);
}

std::vector<std::int64_t> select_segment(std::span<const CellEdge> segment, int tau1,
                                         std::span<const Budget> upper,
                                         const Budget& seg_budget) {
  std::vector<char> take(segment.size(), 0);
  for (std::size_t u = 0; u < upper.size(); ++u) {
    const int tau = tau1 + 1 + static_cast<int>(u);
    prefix(segment, tau, upper[u], true, take);
    prefix(segment, tau, upper[u], false, take);
  }
  prefix(segment, tau1, seg_budget, true, take);
  prefix(segment, tau1, seg_budget, false, take);
  for (std::size_t i = 0; i < segment.size(); ++i) {
    const CellEdge& e = segment[i];
    if (e.cls != kNoClass && e.cls < tau1 && seg_budget.admits(e.cost)) take[i] = 1;
  }
  return collect(segment, take);
}

}  // namespace flowcut
