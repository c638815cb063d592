#include "flowcut/dmc.hpp"

#include <algorithm>
#include <string>

namespace flowcut {

void validate_dmc(const DmcInstance& dmc) {
  const auto n = static_cast<std::int64_t>(dmc.size());
  for (std::int64_t i = 0; i < n; ++i) {
    const DmcNode& v = dmc.nodes[i];
    if (v.id != i) throw Error(ErrorCode::kInvalidArgument, "node ids must be dense");
    if (v.parent != kNoNode && (v.parent < 0 || v.parent >= n || v.parent == i))
      throw Error(ErrorCode::kInvalidArgument, "bad parent of node " + std::to_string(i));
    if (v.cost < 0 || v.size < 0)
      throw Error(ErrorCode::kInvalidArgument, "negative cost or size at node " +
                                                   std::to_string(i));
  }
  // Cycle check: every node reaches a root within n steps.
  for (std::int64_t i = 0; i < n; ++i) {
    std::int64_t v = i;
    for (std::int64_t steps = 0; v != kNoNode; ++steps) {
      if (steps > n) throw Error(ErrorCode::kInvalidArgument, "parent cycle");
      v = dmc.nodes[v].parent;
    }
  }
  for (const DemandPath& p : dmc.paths) {
    if (p.top < 0 || p.top >= n || p.bottom < 0 || p.bottom >= n || p.top == p.bottom ||
        !is_ancestor(dmc, p.top, p.bottom))
      throw Error(ErrorCode::kInvalidArgument, "path is not ancestor-descendant");
    if (p.demand <= 0) throw Error(ErrorCode::kInvalidArgument, "nonpositive demand");
  }
}

std::vector<std::vector<std::int64_t>> children_of(const DmcInstance& dmc) {
  std::vector<std::vector<std::int64_t>> out(dmc.size());
  for (const DmcNode& v : dmc.nodes)
    if (v.parent != kNoNode) out[v.parent].push_back(v.id);
  return out;
}

std::vector<std::int64_t> topological_order(const DmcInstance& dmc) {
  auto kids = children_of(dmc);
  std::vector<std::int64_t> order;
  order.reserve(dmc.size());
  for (const DmcNode& v : dmc.nodes)
    if (v.parent == kNoNode) order.push_back(v.id);
  for (std::size_t head = 0; head < order.size(); ++head)
    for (std::int64_t c : kids[order[head]]) order.push_back(c);
  return order;
}

std::vector<int> node_depths(const DmcInstance& dmc) {
  std::vector<int> depth(dmc.size(), 0);
  for (std::int64_t v : topological_order(dmc))
    if (dmc.nodes[v].parent != kNoNode) depth[v] = depth[dmc.nodes[v].parent] + 1;
  return depth;
}

bool is_ancestor(const DmcInstance& dmc, std::int64_t a, std::int64_t b) {
  for (std::int64_t v = b; v != kNoNode; v = dmc.nodes[v].parent)
    if (v == a) return true;
  return false;
}

std::vector<std::int64_t> path_edges(const DmcInstance& dmc, const DemandPath& path) {
  std::vector<std::int64_t> out;
  for (std::int64_t v = path.bottom; v != path.top; v = dmc.nodes[v].parent) {
    if (v == kNoNode)
      throw Error(ErrorCode::kInvalidArgument, "path top is not an ancestor");
    out.push_back(v);
  }
  return out;
}

std::int64_t edge_set_cost(const DmcInstance& dmc, std::span<const std::int64_t> edges) {
  std::int64_t total = 0;
  for (std::int64_t e : edges) total = checked_add(total, dmc.nodes[e].cost);
  return total;
}

bool verify_dmc_solution(const DmcInstance& dmc, std::span<const std::int64_t> edges) {
  std::vector<char> chosen(dmc.size(), 0);
  for (std::int64_t e : edges) {
    if (e < 0 || e >= static_cast<std::int64_t>(dmc.size()) || dmc.is_root(e)) return false;
    chosen[e] = 1;
  }
  for (const DemandPath& p : dmc.paths) {
    std::int64_t got = 0;
    for (std::int64_t v = p.bottom; v != p.top && v != kNoNode; v = dmc.nodes[v].parent)
      if (chosen[v]) got += dmc.nodes[v].size;
    if (got < p.demand) return false;
  }
  return true;
}

std::vector<DemandPath> dedupe_paths(std::vector<DemandPath> paths) {
  std::sort(paths.begin(), paths.end(), [](const DemandPath& a, const DemandPath& b) {
    if (a.top != b.top) return a.top < b.top;
    if (a.bottom != b.bottom) return a.bottom < b.bottom;
    return a.demand > b.demand;
  });
  std::vector<DemandPath> out;
  for (const DemandPath& p : paths)
    if (out.empty() || out.back().top != p.top || out.back().bottom != p.bottom)
      out.push_back(p);
  return out;
}

Contraction contract(const DmcInstance& dmc, const std::vector<char>& remove) {
  Contraction out;
  out.image.assign(dmc.size(), kNoNode);
  for (std::int64_t v : topological_order(dmc)) {
    const DmcNode& node = dmc.nodes[v];
    if (remove[v] && node.parent != kNoNode) {
      out.image[v] = out.image[node.parent];
      continue;
    }
    DmcNode copy = node;
    copy.id = static_cast<std::int64_t>(out.dmc.nodes.size());
    copy.parent = node.parent == kNoNode ? kNoNode : out.image[node.parent];
    out.image[v] = copy.id;
    out.original.push_back(v);
    out.dmc.nodes.push_back(copy);
  }
  std::vector<DemandPath> paths;
  for (const DemandPath& p : dmc.paths) {
    std::int64_t demand = p.demand;
    for (std::int64_t e : path_edges(dmc, p))
      if (remove[e]) demand -= dmc.nodes[e].size;
    if (demand <= 0) continue;
    DemandPath q{out.image[p.top], out.image[p.bottom], demand};
    if (q.top == q.bottom) {
      out.infeasible = true;
      continue;
    }
    paths.push_back(q);
  }
  out.dmc.paths = dedupe_paths(std::move(paths));
  return out;
}

}  // namespace flowcut
