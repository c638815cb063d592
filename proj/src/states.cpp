#include "flowcut/states.hpp"

#include <algorithm>
#include <cstdlib>

namespace flowcut {

bool is_valid_cell_sequence(const std::vector<Cell>& cells, int k, int tau_min,
                            int tau_max) {
  if (k == 0) return cells.empty();
  if (cells.empty() || cells.front() != Cell{k, tau_max} || cells.back().seg != 1)
    return false;
  for (std::size_t j = 0; j < cells.size(); ++j) {
    const Cell& c = cells[j];
    if (c.seg < 1 || c.seg > k || c.tau < tau_min || c.tau > tau_max + 1) return false;
    if (j == 0) continue;
    const Cell& p = cells[j - 1];
    const bool down = c.seg == p.seg && c.tau == p.tau - 1;
    const bool right = c.seg == p.seg - 1 && c.tau == p.tau + 1;
    if (!down && !right) return false;
  }
  return true;
}

Extension extend_cells(const std::vector<Cell>& parent, int k, int tau1, int tau_max) {
  Extension ext;
  for (int tau = tau_max; tau >= tau1; --tau) ext.cells.push_back({k + 1, tau});
  if (k == 0) {
    ext.merged_at = ext.cells.size();
    return ext;
  }
  if (tau1 == tau_max) {
    ext.cells.push_back({k, tau_max + 1});
    ext.merged_at = ext.cells.size();
    ext.parent_from = 0;
    ext.cells.insert(ext.cells.end(), parent.begin(), parent.end());
    return ext;
  }
  for (int m = 1;; ++m) {
    const Cell c{k + 1 - m, tau1 + m};
    if (c.seg < 1) {
      ext.merged_at = ext.cells.size();
      ext.parent_from = parent.size();
      return ext;
    }
    auto it = std::find(parent.begin(), parent.end(), c);
    if (it != parent.end()) {
      ext.merged_at = ext.cells.size();
      ext.parent_from = static_cast<std::size_t>(it - parent.begin());
      ext.cells.insert(ext.cells.end(), it, parent.end());
      return ext;
    }
    ext.cells.push_back(c);
  }
}

bool is_extension(const DpState& child, const DpState& parent, int tau_min, int tau_max) {
  const int k = parent.depth();
  if (child.depth() != k + 1) return false;
  if (!std::equal(parent.seg_budget.begin(), parent.seg_budget.end(),
                  child.seg_budget.begin()))
    return false;
  if (!is_valid_cell_sequence(child.cells, k + 1, tau_min, tau_max)) return false;
  int tau1 = tau_max;
  for (const Cell& c : child.cells)
    if (c.seg == k + 1) tau1 = c.tau;
  Extension ext = extend_cells(parent.cells, k, tau1, tau_max);
  if (ext.cells != child.cells) return false;
  if (child.cell_budget.size() != child.cells.size()) return false;
  for (std::size_t j = ext.merged_at; j < ext.cells.size(); ++j)
    if (child.cell_budget[j] != parent.cell_budget[ext.parent_from + (j - ext.merged_at)])
      return false;
  return true;
}

bool is_valid_state(const DpState& s, const StateSpace& space) {
  if (s.depth() != space.k) return false;
  if (!is_valid_cell_sequence(s.cells, space.k, space.tau_min, space.tau_max)) return false;
  if (s.cell_budget.size() != s.cells.size()) return false;
  auto in_grid = [&](int b) { return b >= 0 && b < space.levels; };
  for (std::size_t i = 0; i < s.seg_budget.size(); ++i) {
    if (!in_grid(s.seg_budget[i])) return false;
    if (i > 0 && std::abs(s.seg_budget[i] - s.seg_budget[i - 1]) > 3) return false;
  }
  for (std::size_t j = 0; j < s.cells.size(); ++j) {
    if (!in_grid(s.cell_budget[j])) return false;
    if (j > 0 && std::abs(s.cell_budget[j] - s.cell_budget[j - 1]) > 3) return false;
    if (s.cell_budget[j] > s.seg_budget[s.cells[j].seg - 1]) return false;
  }
  return true;
}

namespace {

// Every valid cell sequence at depth k, down moves explored before right moves.
void for_each_sequence(const StateSpace& sp, std::vector<Cell>& cur,
                       const std::function<bool(const std::vector<Cell>&)>& visit) {
  const Cell last = cur.back();
  if (last.seg == 1 && !visit(cur)) return;
  if (last.tau - 1 >= sp.tau_min) {
    cur.push_back({last.seg, last.tau - 1});
    for_each_sequence(sp, cur, visit);
    cur.pop_back();
  }
  if (last.seg > 1 && last.tau + 1 <= sp.tau_max + 1) {
    cur.push_back({last.seg - 1, last.tau + 1});
    for_each_sequence(sp, cur, visit);
    cur.pop_back();
  }
}

class StateWalker {
 public:
  StateWalker(const StateSpace& sp, const std::function<void(const DpState&)>& visit,
              std::uint64_t limit)
      : sp_(sp), visit_(visit), limit_(limit) {}

  std::uint64_t run() {
    if (sp_.k == 0) {
      visit_(DpState{});
      return 1;
    }
    std::vector<Cell> cur{{sp_.k, sp_.tau_max}};
    for_each_sequence(sp_, cur, [&](const std::vector<Cell>& cells) {
      state_.cells = cells;
      state_.seg_budget.assign(sp_.k, 0);
      state_.cell_budget.assign(cells.size(), 0);
      segs(0);
      return count_ < limit_;
    });
    return count_;
  }

 private:
  void segs(int i) {
    if (count_ >= limit_) return;
    if (i == sp_.k) {
      cells(0);
      return;
    }
    for (int b = 0; b < sp_.levels; ++b) {
      if (i > 0 && std::abs(b - state_.seg_budget[i - 1]) > 3) continue;
      state_.seg_budget[i] = b;
      segs(i + 1);
    }
  }

  void cells(std::size_t j) {
    if (count_ >= limit_) return;
    if (j == state_.cells.size()) {
      visit_(state_);
      ++count_;
      return;
    }
    const int cap = state_.seg_budget[state_.cells[j].seg - 1];
    for (int b = 0; b <= cap; ++b) {
      if (j > 0 && std::abs(b - state_.cell_budget[j - 1]) > 3) continue;
      state_.cell_budget[j] = b;
      cells(j + 1);
    }
  }

  const StateSpace& sp_;
  const std::function<void(const DpState&)>& visit_;
  std::uint64_t limit_;
  std::uint64_t count_ = 0;
  DpState state_;
};

}  // namespace

std::uint64_t enumerate_states(const StateSpace& space,
                               const std::function<void(const DpState&)>& visit,
                               std::uint64_t limit) {
  return StateWalker(space, visit, limit).run();
}

unsigned __int128 count_states(const StateSpace& sp) {
  if (sp.k == 0) return 1;
  // Forward sweep over cells in order of the potential-preserving walk: a
  // cell (i, tau) is reached only from (i, tau+1) or (i+1, tau-1). Each cell
  // carries counts per (segment level, cell level).
  const int L = sp.levels;
  const int T = sp.tau_max + 1 - sp.tau_min + 1;
  using Table = std::vector<unsigned __int128>;
  auto at = [&](int i, int tau) { return (i - 1) * T + (tau - sp.tau_min); };
  std::vector<Table> cell(static_cast<std::size_t>(sp.k * T));
  Table start(static_cast<std::size_t>(L * L), 0);
  for (int s = 0; s < L; ++s)
    for (int c = 0; c <= s; ++c) start[s * L + c] = 1;
  cell[at(sp.k, sp.tau_max)] = start;
  unsigned __int128 total = 0;
  // Process segments from S_k down to S_1, classes from high to low.
  for (int i = sp.k; i >= 1; --i) {
    for (int tau = sp.tau_max + 1; tau >= sp.tau_min; --tau) {
      Table& t = cell[at(i, tau)];
      if (t.empty()) continue;
      if (i == 1)
        for (auto v : t) total += v;
      auto push = [&](int i2, int tau2, bool new_seg) {
        if (tau2 < sp.tau_min || tau2 > sp.tau_max + 1 || i2 < 1) return;
        Table& next = cell[at(i2, tau2)];
        if (next.empty()) next.assign(static_cast<std::size_t>(L * L), 0);
        for (int s = 0; s < L; ++s)
          for (int c = 0; c <= s; ++c) {
            const auto v = t[s * L + c];
            if (v == 0) continue;
            const int s_lo = new_seg ? std::max(0, s - 3) : s;
            const int s_hi = new_seg ? std::min(L - 1, s + 3) : s;
            for (int s2 = s_lo; s2 <= s_hi; ++s2)
              for (int c2 = std::max(0, c - 3); c2 <= std::min(s2, c + 3); ++c2)
                next[s2 * L + c2] += v;
          }
      };
      push(i, tau - 1, false);
      push(i - 1, tau + 1, true);
    }
  }
  return total;
}

unsigned __int128 state_space_bound(int H, int tau_min, int tau_max, int levels) {
  const int d = tau_max - tau_min;
  unsigned __int128 out = 1;
  for (int i = 0; i < 2 * H + d; ++i) out *= 2;
  out *= static_cast<unsigned>(levels);
  for (int i = 0; i < H; ++i) out *= 7;
  out *= static_cast<unsigned>(levels);
  for (int i = 0; i < 2 * H + d; ++i) out *= 7;
  return out;
}

std::string to_decimal(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace flowcut
