#include "flowcut/dp.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace flowcut {
namespace {

using Signature = std::vector<std::int64_t>;

void append_cell_signature(Signature& sig, const std::vector<CellEdge>& edges, int tau,
                           const Budget& b) {
  std::int64_t eligible = 0;
  for (const CellEdge& e : edges)
    if (e.cls == tau && b.admits(e.cost)) ++eligible;
  sig.push_back(eligible);
  auto picked = greedy_select_cell(edges, tau, b);
  sig.push_back(static_cast<std::int64_t>(picked.size()));
  sig.insert(sig.end(), picked.begin(), picked.end());
}

}  // namespace

DpTable::DpTable(const DmcInstance& dmc, const ReducedTree& rt, const DensityClasses& dc,
                 std::int64_t n)
    : dmc_(dmc), rt_(rt), dc_(dc), n_(std::max<std::int64_t>(n, 1)) {
  const std::size_t m = rt.segments.size();
  seg_edges_.resize(m);
  std::int64_t min_scaled = 0, max_cell = 0;
  for (std::size_t s = 0; s < m; ++s) {
    std::map<int, std::int64_t> per_class;
    for (std::int64_t e : rt.segments[s].edges) {
      seg_edges_[s].push_back({e, dc.cls[e], dc.scaled[e]});
      if (dc.cls[e] == kNoClass) continue;
      per_class[dc.cls[e]] += dc.scaled[e];
      if (min_scaled == 0 || dc.scaled[e] < min_scaled) min_scaled = dc.scaled[e];
    }
    for (auto& [tau, total] : per_class) max_cell = std::max(max_cell, total);
  }
  if (dc.any) {
    tau_min_ = dc.tau_min;
    tau_max_ = dc.tau_max;
    scaled_max_ = dc.scaled_max;
    b_lo_ = 0;
    while (budget(b_lo_).admits(min_scaled)) --b_lo_;
    b_hi_ = b_lo_;
    auto enough = [&](int b) {
      Budget B = budget(b);
      return (std::int64_t{1} << std::max(b, 0)) >= 2 * n_ && b >= 0 &&
             B.admits(scaled_max_) && !B.exceeded(max_cell);
    };
    while (!enough(b_hi_)) ++b_hi_;
    if (b_hi_ - b_lo_ > 250)
      throw Error(ErrorCode::kTooLarge, "budget grid too wide");
  }
  single_rep_ = {b_lo_};
  const int classes = tau_max_ - tau_min_ + 1;
  seg_reps_.assign(m, {});
  cell_reps_.assign(m, std::vector<std::vector<int>>(classes));
  for (std::size_t s = 0; s < m; ++s) {
    std::set<int> present;
    for (const CellEdge& e : seg_edges_[s])
      if (e.cls != kNoClass) present.insert(e.cls);
    std::set<Signature> seg_seen;
    std::vector<std::set<Signature>> cell_seen(classes);
    for (int b = b_lo_; b <= b_hi_; ++b) {
      const Budget B = budget(b);
      Signature whole;
      for (int tau : present) {
        Signature sig;
        append_cell_signature(sig, seg_edges_[s], tau, B);
        if (cell_seen[tau - tau_min_].insert(sig).second)
          cell_reps_[s][tau - tau_min_].push_back(b);
        whole.push_back(tau);
        whole.insert(whole.end(), sig.begin(), sig.end());
      }
      if (seg_seen.insert(whole).second) seg_reps_[s].push_back(b);
    }
    for (auto& reps : cell_reps_[s])
      if (reps.empty()) reps = single_rep_;
  }
  paths_by_seg_.assign(m, {});
  for (std::size_t p = 0; p < dmc.paths.size(); ++p) {
    auto edges = path_edges(dmc, dmc.paths[p]);
    paths_by_seg_[rt.segment_of[edges.front()]].push_back(p);
    path_edges_.push_back(std::move(edges));
  }
}

const std::vector<int>& DpTable::cell_reps(int seg, int tau) const {
  if (tau < tau_min_ || tau > tau_max_) return single_rep_;
  return cell_reps_[seg][tau - tau_min_];
}

int DpTable::eligible_count(int seg, int tau, int b) const {
  const Budget B = budget(b);
  int count = 0;
  for (const CellEdge& e : seg_edges_[seg])
    if (e.cls == tau && B.admits(e.cost)) ++count;
  return count;
}

std::int64_t DpTable::scaled_cost(const std::vector<std::int64_t>& edges) const {
  std::int64_t total = 0;
  for (std::int64_t e : edges) total = checked_add(total, dc_.scaled[e]);
  return total;
}

std::vector<std::int64_t> DpTable::column_selection(int seg, int i,
                                                    const DpState& state) const {
  // Cells of S_i are contiguous with descending classes tau2..tau1.
  std::vector<std::pair<int, int>> column;  // (tau, budget)
  for (std::size_t j = 0; j < state.cells.size(); ++j)
    if (state.cells[j].seg == i) column.push_back({state.cells[j].tau, state.cell_budget[j]});
  if (column.empty()) throw Error(ErrorCode::kCorruptTable, "segment missing from state");
  const int tau1 = column.back().first;
  std::vector<Budget> upper;
  for (auto it = column.rbegin() + 1; it != column.rend(); ++it)
    upper.push_back(budget(it->second));
  return select_segment(seg_edges_[seg], tau1, upper, budget(state.seg_budget[i - 1]));
}

std::vector<std::int64_t> DpTable::selection(std::int64_t vertex,
                                             const DpState& state) const {
  auto above = rt_.segments_above(vertex);
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < above.size(); ++i) {
    auto part = column_selection(above[i], static_cast<int>(i) + 1, state);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::string DpTable::key(std::int64_t vertex, const DpState& s) const {
  std::string k(reinterpret_cast<const char*>(&vertex), sizeof(vertex));
  for (int b : s.seg_budget) k.push_back(static_cast<char>(b - b_lo_));
  k.push_back('|');
  for (std::size_t j = 0; j < s.cells.size(); ++j) {
    k.push_back(static_cast<char>(s.cells[j].seg));
    k.push_back(static_cast<char>(s.cells[j].tau - tau_min_));
    k.push_back(static_cast<char>(s.cell_budget[j] - b_lo_));
  }
  return k;
}

bool DpTable::paths_met(int seg, const std::vector<char>& chosen) const {
  for (std::size_t p : paths_by_seg_[seg]) {
    std::int64_t got = 0;
    for (std::int64_t e : path_edges_[p])
      if (chosen[e]) got += dmc_.nodes[e].size;
    if (got < dmc_.paths[p].demand) return false;
  }
  return true;
}

std::int64_t DpTable::fill(std::int64_t vertex, const DpState& state) {
  const auto& kids = rt_.child_segments[vertex];
  if (kids.empty()) return 0;
  const std::string k_v = key(vertex, state);
  if (auto it = memo_.find(k_v); it != memo_.end()) return it->second.value;

  const int k = state.depth();
  std::vector<char> chosen(dmc_.size(), 0);
  for (std::int64_t e : selection(vertex, state)) chosen[e] = 1;

  Entry entry;
  entry.value = 0;
  for (int c : kids) {
    const std::int64_t w = rt_.segments[c].bottom;
    std::int64_t best = kInf;
    DpState best_state;
    for (int tau1 = tau_max_; tau1 >= tau_min_; --tau1) {
      Extension ext = extend_cells(state.cells, k, tau1, tau_max_);
      DpState child;
      child.seg_budget = state.seg_budget;
      child.seg_budget.push_back(b_lo_);
      child.cells = ext.cells;
      child.cell_budget.assign(ext.cells.size(), b_lo_);
      for (std::size_t j = ext.merged_at; j < ext.cells.size(); ++j)
        child.cell_budget[j] = state.cell_budget[ext.parent_from + (j - ext.merged_at)];
      // Free budgets: column cells above tau1, positions 0 .. ups-1 (tau_max down).
      const int ups = tau_max_ - tau1;
      for (int bs : seg_reps_[c]) {
        child.seg_budget.back() = bs;
        std::vector<std::vector<int>> options(ups);
        bool empty = false;
        for (int u = 0; u < ups; ++u) {
          const int tau = tau_max_ - u;
          const int cap = eligible_count(c, tau, bs);
          for (int b : cell_reps(c, tau))
            if (eligible_count(c, tau, b) <= cap) options[u].push_back(b);
          empty = empty || options[u].empty();
        }
        if (empty) continue;
        std::vector<std::size_t> pick(ups, 0);
        while (true) {
          std::vector<Budget> upper(ups);
          for (int u = 0; u < ups; ++u) {
            child.cell_budget[u] = options[u][pick[u]];
            upper[ups - 1 - u] = budget(child.cell_budget[u]);
          }
          auto g = select_segment(seg_edges_[c], tau1, upper, budget(bs));
          const std::int64_t cost = scaled_cost(g);
          if (best == kInf || cost < best) {
            for (std::int64_t e : g) chosen[e] = 1;
            const bool ok = paths_met(c, chosen);
            for (std::int64_t e : g) chosen[e] = 0;
            if (ok) {
              const std::int64_t sub = fill(w, child);
              if (sub != kInf && (best == kInf || cost + sub < best)) {
                best = cost + sub;
                best_state = child;
              }
            }
          }
          int u = 0;
          while (u < ups && ++pick[u] == options[u].size()) pick[u++] = 0;
          if (u == ups) break;
        }
      }
    }
    if (best == kInf) {
      entry.value = kInf;
      entry.choice.clear();
      break;
    }
    entry.value = checked_add(entry.value, best);
    entry.choice.push_back(std::move(best_state));
  }
  const std::int64_t value = entry.value;
  memo_[k_v] = std::move(entry);
  return value;
}

std::int64_t DpTable::root_value() {
  std::int64_t total = 0;
  for (std::int64_t r : rt_.roots) {
    const std::int64_t d = fill(r, DpState{});
    if (d == kInf) return kInf;
    total = checked_add(total, d);
  }
  return total;
}

std::int64_t DpTable::extract_from(std::int64_t vertex, const DpState& s,
                                   std::vector<char>& out) const {
  const auto& kids = rt_.child_segments[vertex];
  if (kids.empty()) return 0;
  auto it = memo_.find(key(vertex, s));
  if (it == memo_.end() || it->second.value == kInf ||
      it->second.choice.size() != kids.size())
    throw Error(ErrorCode::kCorruptTable, "missing table entry during replay");
  const Entry& entry = it->second;
  std::vector<char> base(dmc_.size(), 0);
  for (std::int64_t e : selection(vertex, s)) base[e] = 1;
  const int k = s.depth();
  std::int64_t sum = 0;
  for (std::size_t r = 0; r < kids.size(); ++r) {
    const int c = kids[r];
    const DpState& child = entry.choice[r];
    if (!is_extension(child, s, tau_min_, tau_max_))
      throw Error(ErrorCode::kCorruptTable, "stored choice is not an extension");
    auto g = column_selection(c, k + 1, child);
    std::vector<char> allowed = base;
    for (std::int64_t e : g) allowed[e] = 1;
    for (std::int64_t e : selection(rt_.segments[c].bottom, child))
      if (!allowed[e]) throw Error(ErrorCode::kCorruptTable, "child selection escapes parent");
    if (!paths_met(c, allowed)) throw Error(ErrorCode::kCorruptTable, "path left uncovered");
    for (std::int64_t e : g) out[e] = 1;
    sum = checked_add(sum, scaled_cost(g));
    sum = checked_add(sum, extract_from(rt_.segments[c].bottom, child, out));
  }
  if (sum != entry.value)
    throw Error(ErrorCode::kCorruptTable, "replayed cost differs from table");
  return sum;
}

std::vector<std::int64_t> DpTable::extract() {
  std::vector<char> out(dmc_.size(), 0);
  for (std::int64_t r : rt_.roots) {
    if (fill(r, DpState{}) == kInf)
      throw Error(ErrorCode::kCorruptTable, "extraction from an infinite entry");
    extract_from(r, DpState{}, out);
  }
  std::vector<std::int64_t> edges;
  for (std::size_t e = 0; e < out.size(); ++e)
    if (out[e]) edges.push_back(static_cast<std::int64_t>(e));
  return edges;
}

DpTable::FixedRun DpTable::run_fixed(
    const std::function<DpState(std::int64_t)>& state_at) const {
  FixedRun run;
  std::function<void(std::int64_t, const DpState&)> walk = [&](std::int64_t v,
                                                              const DpState& s) {
    std::vector<char> base(dmc_.size(), 0);
    for (std::int64_t e : selection(v, s)) base[e] = 1;
    for (int c : rt_.child_segments[v]) {
      const std::int64_t w = rt_.segments[c].bottom;
      DpState child = state_at(w);
      if (!is_extension(child, s, tau_min_, tau_max_)) {
        run.valid = false;
        return;
      }
      auto g = column_selection(c, s.depth() + 1, child);
      std::vector<char> with = base;
      for (std::int64_t e : g) with[e] = 1;
      if (!paths_met(c, with)) run.valid = false;
      run.cost = checked_add(run.cost, scaled_cost(g));
      walk(w, child);
    }
  };
  for (std::int64_t r : rt_.roots) walk(r, DpState{});
  return run;
}

}  // namespace flowcut
