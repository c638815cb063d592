#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "flowcut/density.hpp"
#include "flowcut/dmc.hpp"
#include "flowcut/states.hpp"
#include "flowcut/tree.hpp"

namespace flowcut {

// Table D[v, state] over reduced vertices of a binary forest whose paths all
// span at least one reduced vertex. Costs are class-rounded scaled costs.
//
// Budgets live on the grid 2^b, b in [b_lo, b_hi]: no edge fits at b_lo and
// at b_hi every cell can be taken whole. The search is over budget
// representatives: two grid values are merged when they select the same
// edges, and the factor-8 ratio rules between neighbouring budgets are not
// imposed. The budget of the lowest cell of a column never influences a
// selection, so it is pinned to b_lo.
class DpTable {
 public:
  static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

  DpTable(const DmcInstance& dmc, const ReducedTree& rt, const DensityClasses& dc,
          std::int64_t n);

  std::int64_t fill(std::int64_t vertex, const DpState& state);
  // Sum over roots of D[root, empty].
  std::int64_t root_value();
  // Replays stored choices; throws CorruptTable on any inconsistency.
  std::vector<std::int64_t> extract();

  std::size_t entries() const { return memo_.size(); }
  int b_lo() const { return b_lo_; }
  int b_hi() const { return b_hi_; }
  int tau_min() const { return tau_min_; }
  int tau_max() const { return tau_max_; }
  int clamp(int b) const { return std::min(std::max(b, b_lo_), b_hi_); }
  Budget budget(int b) const { return grid_budget(b, n_, scaled_max_); }
  const std::vector<CellEdge>& segment_edges(int seg) const { return seg_edges_[seg]; }
  const std::vector<int>& seg_reps(int seg) const { return seg_reps_[seg]; }
  const std::vector<int>& cell_reps(int seg, int tau) const;
  int eligible_count(int seg, int tau, int b) const;

  // G(v): edges of S_1..S_k selected under the state.
  std::vector<std::int64_t> selection(std::int64_t vertex, const DpState& state) const;
  // Edges of segment S_i picked under the state, i counted from 1.
  std::vector<std::int64_t> column_selection(int seg, int i, const DpState& state) const;

  // Walks the forest with a prescribed state per vertex, checking every
  // parent-child pair is an extension and every path is met where the
  // table would check it. Cost is the total of the column selections.
  struct FixedRun {
    bool valid = true;
    std::int64_t cost = 0;
  };
  FixedRun run_fixed(const std::function<DpState(std::int64_t)>& state_at) const;

  std::int64_t scaled_cost(const std::vector<std::int64_t>& edges) const;

 private:
  struct Entry {
    std::int64_t value = kInf;
    std::vector<DpState> choice;  // per child segment
  };

  std::string key(std::int64_t vertex, const DpState& s) const;
  bool paths_met(int seg, const std::vector<char>& chosen) const;
  std::int64_t extract_from(std::int64_t vertex, const DpState& s,
                            std::vector<char>& out) const;

  const DmcInstance& dmc_;
  const ReducedTree& rt_;
  const DensityClasses& dc_;
  std::int64_t n_;
  std::int64_t scaled_max_ = 1;
  int tau_min_ = 0;
  int tau_max_ = 0;
  int b_lo_ = 0;
  int b_hi_ = 0;
  std::vector<std::vector<CellEdge>> seg_edges_;
  std::vector<std::vector<int>> seg_reps_;
  std::vector<std::vector<std::vector<int>>> cell_reps_;  // [seg][tau - tau_min]
  std::vector<int> single_rep_;
  std::vector<std::vector<std::size_t>> paths_by_seg_;  // by segment of bottom edge
  std::vector<std::vector<std::int64_t>> path_edges_;
  std::unordered_map<std::string, Entry> memo_;
};

}  // namespace flowcut
