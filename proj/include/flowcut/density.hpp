#pragma once

#include <climits>
#include <cstdint>
#include <span>
#include <vector>

#include "flowcut/dmc.hpp"

namespace flowcut {

inline constexpr int kNoClass = INT_MIN;

// Edges costing more than c_max become unselectable; edges with
// cost * n <= c_max (n = number of edges) are forced. Forced edges stay in the
// tree with size 0 and the demands of paths through them drop accordingly.
struct TrimResult {
  DmcInstance dmc;
  std::vector<std::int64_t> forced;
  std::int64_t forced_cost = 0;
  std::vector<char> selectable;  // per node
  std::int64_t n = 1;
  bool infeasible = false;  // some path cannot be covered by selectable edges
};
TrimResult trim_by_cmax(const DmcInstance& dmc, std::int64_t cmax);

// Smallest integer tau with cost <= size * 128^tau.
int density_class(std::int64_t cost, std::int64_t size);

// Class and class-rounded cost of every selectable edge. Rounded costs are
// kept as integers relative to the lowest class: scaled = size * 128^(tau - tau_min).
struct DensityClasses {
  std::vector<int> cls;  // kNoClass when the edge carries no class
  std::vector<std::int64_t> scaled;
  int tau_min = 0;
  int tau_max = 0;
  std::int64_t scaled_max = 0;
  bool any = false;
};
DensityClasses assign_density_classes(const DmcInstance& dmc,
                                      const std::vector<char>& selectable);

// Rational budget num/den in the units of the edge costs it is compared with.
struct Budget {
  __int128 num = 0;
  __int128 den = 1;

  bool admits(std::int64_t cost) const { return cost * den <= num; }
  // Running total strictly above twice the budget.
  bool exceeded(__int128 total) const { return total * den > 2 * num; }
};

// Grid budget 2^b in units where the largest scaled cost is worth n.
Budget grid_budget(int b, std::int64_t n, std::int64_t scaled_max);

struct CellEdge {
  std::int64_t node = 0;
  int cls = kNoClass;
  std::int64_t cost = 0;
};

// Class-tau edges of cost <= B, taken top-down until the running cost
// exceeds 2B, then the same bottom-up. Returns node ids in segment order.
std::vector<std::int64_t> greedy_select_cell(std::span<const CellEdge> segment, int tau,
                                             const Budget& budget);

// Cells tau1 + 1 .. tau1 + upper.size() use their own budgets, the cell at
// tau1 uses the segment budget, and every lower class edge within the segment
// budget is taken.
std::vector<std::int64_t> select_segment(std::span<const CellEdge> segment, int tau1,
                                         std::span<const Budget> upper,
                                         const Budget& seg_budget);

}  // namespace flowcut
