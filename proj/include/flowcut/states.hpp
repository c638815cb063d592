#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace flowcut {

// Cell (S_seg, tau); seg counts from 1 at the root.
struct Cell {
  int seg = 1;
  int tau = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

// Budgets are grid exponents b, meaning a budget of 2^b.
struct DpState {
  std::vector<int> seg_budget;  // index i-1 for S_i
  std::vector<Cell> cells;
  std::vector<int> cell_budget;  // parallel to cells

  int depth() const { return static_cast<int>(seg_budget.size()); }
  friend bool operator==(const DpState&, const DpState&) = default;
};

// Starts at (S_k, tau_max), each step goes down a class or right to S_{i-1}
// one class higher, ends in S_1, and stays within [tau_min, tau_max + 1].
bool is_valid_cell_sequence(const std::vector<Cell>& cells, int k, int tau_min,
                            int tau_max);

// Cell sequence of a child at depth k + 1 that goes down S_{k+1} to tau1 and
// then right until it meets `parent` (or reaches S_1), after which it follows
// `parent`. Going right from (S_{k+1}, tau_max) first visits (S_k, tau_max+1)
// and then joins `parent` at its first cell. `merged_at` is the index in the
// result of the first cell shared with `parent` (result size if none).
struct Extension {
  std::vector<Cell> cells;
  std::size_t merged_at = 0;
  std::size_t parent_from = 0;  // index in `parent` of that shared cell
};
Extension extend_cells(const std::vector<Cell>& parent, int k, int tau1, int tau_max);

bool is_extension(const DpState& child, const DpState& parent, int tau_min, int tau_max);

// Budget grid levels 0..levels-1; the full validity rules including the
// factor-8 ratios between consecutive budgets and cell <= segment budget.
struct StateSpace {
  int k = 0;
  int tau_min = 0;
  int tau_max = 0;
  int levels = 1;
};

bool is_valid_state(const DpState& s, const StateSpace& space);

// Calls `visit` for each valid state in canonical order; stops after `limit`
// states. Returns the number visited.
std::uint64_t enumerate_states(const StateSpace& space,
                               const std::function<void(const DpState&)>& visit,
                               std::uint64_t limit = UINT64_MAX);

// Exact number of valid states.
unsigned __int128 count_states(const StateSpace& space);

// 2^(2H+d) * L * 7^H * L * 7^(2H+d) with d = tau_max - tau_min and L grid levels.
unsigned __int128 state_space_bound(int H, int tau_min, int tau_max, int levels);

std::string to_decimal(unsigned __int128 v);

}  // namespace flowcut
