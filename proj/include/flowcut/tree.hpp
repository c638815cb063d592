#pragma once

#include <cstdint>
#include <vector>

#include "flowcut/dmc.hpp"

namespace flowcut {

// Every node with more than two children gets its children regrouped under
// zero-cost, zero-size synthetic nodes. Original ids are kept; synthetic
// nodes are appended. Children with dyadic intervals are grouped by the half
// of the parent interval they fall in, anything else by a balanced split.
DmcInstance binarize(const DmcInstance& dmc);

// Maximal chain of edges between two reduced vertices.
struct TreeSegment {
  std::int64_t top = 0;     // reduced vertex above
  std::int64_t bottom = 0;  // reduced vertex below
  std::vector<std::int64_t> edges;  // child node ids, top to bottom
  int parent = -1;                  // segment ending at `top`, -1 below a root
  int depth = 1;                    // 1 for segments hanging from a root
};

struct ReducedTree {
  std::vector<std::int64_t> roots;
  std::vector<std::int64_t> vertices;  // roots and nodes with child count != 1
  std::vector<TreeSegment> segments;
  std::vector<int> segment_of;                   // per node: segment of its edge, -1 at roots
  std::vector<std::vector<int>> child_segments;  // per node, nonempty only at reduced vertices
  int H = 0;

  // Segments S_1..S_k from the root down to the given reduced vertex.
  std::vector<int> segments_above(std::int64_t vertex) const;
  // Hop distance between segments as edges of the reduced tree, -1 across trees.
  std::vector<std::vector<int>> segment_distances() const;
};

ReducedTree build_reduced_tree(const DmcInstance& dmc);

// A path is confined when all its edges lie in one segment.
bool is_confined(const DmcInstance& dmc, const ReducedTree& rt, const DemandPath& p);

}  // namespace flowcut
