#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "flowcut/core.hpp"

namespace flowcut {

inline constexpr std::int64_t kNoNode = -1;

// A tree node together with the edge to its parent. Node ids are dense:
// nodes[i].id == i. `origin` is the job id of a reduction node (-1 otherwise);
// (lo, level) is its dyadic interval, level -1 when the node has none.
struct DmcNode {
  std::int64_t id = 0;
  std::int64_t parent = kNoNode;
  std::int64_t cost = 0;
  std::int64_t size = 0;
  std::int64_t origin = -1;
  std::int64_t lo = 0;
  int level = -1;
  bool synthetic = false;
};

struct DemandPath {
  std::int64_t top = 0;
  std::int64_t bottom = 0;
  std::int64_t demand = 0;

  friend bool operator==(const DemandPath&, const DemandPath&) = default;
};

struct DmcInstance {
  std::vector<DmcNode> nodes;
  std::vector<DemandPath> paths;

  std::size_t size() const { return nodes.size(); }
  bool is_root(std::int64_t v) const { return nodes[v].parent == kNoNode; }
};

// Throws InvalidArgument unless ids are dense, parents form a forest, all
// costs and sizes are nonnegative and every path runs from an ancestor down
// to a strict descendant with positive demand.
void validate_dmc(const DmcInstance& dmc);

std::vector<std::vector<std::int64_t>> children_of(const DmcInstance& dmc);
std::vector<int> node_depths(const DmcInstance& dmc);
bool is_ancestor(const DmcInstance& dmc, std::int64_t a, std::int64_t b);

// Edges (child node ids) of the path, bottom first.
std::vector<std::int64_t> path_edges(const DmcInstance& dmc, const DemandPath& path);

// Roots first, then every node after its parent.
std::vector<std::int64_t> topological_order(const DmcInstance& dmc);

std::int64_t edge_set_cost(const DmcInstance& dmc, std::span<const std::int64_t> edges);

bool verify_dmc_solution(const DmcInstance& dmc, std::span<const std::int64_t> edges);

// Removes the given non-root nodes. Children move up to the nearest kept
// ancestor, path endpoints map the same way and demands drop by the size of
// removed edges on the path. Paths left with nonpositive demand vanish; a path
// that shrinks to a single vertex with demand left marks `infeasible`.
// Duplicate (top, bottom) pairs keep the larger demand.
struct Contraction {
  DmcInstance dmc;
  std::vector<std::int64_t> original;  // new id -> old id
  std::vector<std::int64_t> image;     // old id -> new id of nearest kept ancestor-or-self
  bool infeasible = false;
};
Contraction contract(const DmcInstance& dmc, const std::vector<char>& remove);

// Sorts by (top, bottom) and keeps the largest demand per pair.
std::vector<DemandPath> dedupe_paths(std::vector<DemandPath> paths);

}  // namespace flowcut
