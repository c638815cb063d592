#include "flowcut/dmc_solver.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "flowcut/density.hpp"
#include "flowcut/dp.hpp"
#include "flowcut/states.hpp"
#include "flowcut/tree.hpp"

namespace flowcut {
namespace {

class ConfinedSearch {
 public:
  ConfinedSearch(const DmcInstance& dmc, const std::vector<DemandPath>& paths,
                 std::size_t max_edges)
      : dmc_(dmc) {
    std::set<std::int64_t> touched;
    for (const DemandPath& p : paths) {
      need_.push_back(p.demand);
      for (std::int64_t e : path_edges(dmc, p))
        if (dmc.nodes[e].size > 0) touched.insert(e);
    }
    edges_.assign(touched.begin(), touched.end());
    if (edges_.size() > max_edges)
      throw Error(ErrorCode::kTooLarge, "confined segment has " +
                                            std::to_string(edges_.size()) + " edges");
    std::stable_sort(edges_.begin(), edges_.end(), [&](std::int64_t a, std::int64_t b) {
      const DmcNode& x = dmc.nodes[a];
      const DmcNode& y = dmc.nodes[b];
      return static_cast<__int128>(x.cost) * y.size < static_cast<__int128>(y.cost) * x.size;
    });
    std::map<std::int64_t, std::size_t> pos;
    for (std::size_t i = 0; i < edges_.size(); ++i) pos[edges_[i]] = i;
    on_path_.assign(edges_.size(), {});
    for (std::size_t p = 0; p < paths.size(); ++p)
      for (std::int64_t e : path_edges(dmc, paths[p]))
        if (auto it = pos.find(e); it != pos.end()) on_path_[it->second].push_back(p);
  }

  std::vector<std::int64_t> run() {
    std::vector<char> take(edges_.size(), 0);
    dfs(0, 0, take);
    if (best_cost_ < 0) throw Error(ErrorCode::kInfeasibleInput, "confined paths uncoverable");
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if (best_[i]) out.push_back(edges_[i]);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  // Largest over open paths of the fractional cost of closing it with the
  // remaining edges; -1 when some path cannot be closed at all.
  std::int64_t bound(std::size_t from) const {
    std::int64_t lb = 0;
    for (std::size_t p = 0; p < need_.size(); ++p) {
      std::int64_t left = need_[p];
      if (left <= 0) continue;
      std::int64_t cost = 0;
      for (std::size_t i = from; i < edges_.size() && left > 0; ++i) {
        if (std::find(on_path_[i].begin(), on_path_[i].end(), p) == on_path_[i].end())
          continue;
        const DmcNode& e = dmc_.nodes[edges_[i]];
        if (e.size <= left) {
          cost += e.cost;
          left -= e.size;
        } else {
          cost += static_cast<std::int64_t>(
              (static_cast<__int128>(e.cost) * left + e.size - 1) / e.size);
          left = 0;
        }
      }
      if (left > 0) return -1;
      lb = std::max(lb, cost);
    }
    return lb;
  }

  void dfs(std::size_t i, std::int64_t cost, std::vector<char>& take) {
    if (best_cost_ >= 0 && cost >= best_cost_) return;
    const std::int64_t lb = bound(i);
    if (lb < 0) return;
    if (lb == 0 && std::all_of(need_.begin(), need_.end(), [](auto d) { return d <= 0; })) {
      best_cost_ = cost;
      best_ = take;
      return;
    }
    if (best_cost_ >= 0 && cost + lb >= best_cost_) return;
    if (i == edges_.size()) return;
    const DmcNode& e = dmc_.nodes[edges_[i]];
    bool useful = false;
    for (std::size_t p : on_path_[i]) useful = useful || need_[p] > 0;
    if (useful) {
      take[i] = 1;
      for (std::size_t p : on_path_[i]) need_[p] -= e.size;
      dfs(i + 1, cost + e.cost, take);
      for (std::size_t p : on_path_[i]) need_[p] += e.size;
      take[i] = 0;
    }
    dfs(i + 1, cost, take);
  }

  const DmcInstance& dmc_;
  std::vector<std::int64_t> edges_;
  std::vector<std::vector<std::size_t>> on_path_;
  std::vector<std::int64_t> need_;
  std::vector<char> best_;
  std::int64_t best_cost_ = -1;
};

std::string total_state_count(const ReducedTree& rt, const DpTable& table) {
  unsigned __int128 total = 0;
  const int levels = table.b_hi() - table.b_lo() + 1;
  for (std::int64_t v : rt.vertices) {
    const int k = static_cast<int>(rt.segments_above(v).size());
    total += count_states({k, table.tau_min(), table.tau_max(), levels});
  }
  return to_decimal(total);
}

}  // namespace

std::vector<std::int64_t> solve_segment_confined(const DmcInstance& dmc,
                                                 const std::vector<DemandPath>& paths,
                                                 std::size_t max_edges) {
  if (paths.empty()) return {};
  return ConfinedSearch(dmc, paths, max_edges).run();
}

SolveResult solve(const DmcInstance& dmc, const SolveOptions& options) {
  validate_dmc(dmc);
  SolveResult result;
  std::vector<std::int64_t> all;
  for (const DmcNode& v : dmc.nodes)
    if (v.parent != kNoNode) all.push_back(v.id);
  if (!verify_dmc_solution(dmc, all)) return result;

  const DmcInstance bin = binarize(dmc);
  const ReducedTree rt = build_reduced_tree(bin);
  result.H = rt.H;

  std::map<int, std::vector<DemandPath>> confined;
  DmcInstance spanning = bin;
  spanning.paths.clear();
  for (const DemandPath& p : bin.paths) {
    if (is_confined(bin, rt, p))
      confined[rt.segment_of[p.bottom]].push_back(p);
    else
      spanning.paths.push_back(p);
  }
  std::vector<char> base(bin.size(), 0);
  for (auto& [seg, paths] : confined)
    for (std::int64_t e : solve_segment_confined(bin, paths, options.confined_max_edges))
      base[e] = 1;

  auto finish = [&](const std::vector<char>& chosen) {
    std::vector<std::int64_t> edges;
    for (std::size_t e = 0; e < dmc.size(); ++e)
      if (chosen[e]) edges.push_back(static_cast<std::int64_t>(e));
    return edges;
  };

  if (spanning.paths.empty()) {
    result.selected = finish(base);
    result.cost = edge_set_cost(dmc, result.selected);
    result.feasible = true;
    return result;
  }

  std::set<std::int64_t> guesses;
  for (const DmcNode& v : bin.nodes)
    if (v.parent != kNoNode && v.size > 0) guesses.insert(v.cost);

  for (std::int64_t g : guesses) {
    GuessReport rep;
    rep.cmax_guess = g;
    rep.H = rt.H;
    TrimResult trim = trim_by_cmax(spanning, g);
    rep.forced_cost = trim.forced_cost;
    if (trim.infeasible) {
      result.guesses.push_back(rep);
      continue;
    }
    DensityClasses dc = assign_density_classes(trim.dmc, trim.selectable);
    DpTable table(trim.dmc, rt, dc, trim.n);
    const std::int64_t d = table.root_value();
    rep.tau_min = table.tau_min();
    rep.tau_max = table.tau_max();
    rep.dp_entries = table.entries();
    result.dp_entries += table.entries();
    rep.state_count = total_state_count(rt, table);
    if (d == DpTable::kInf) {
      result.guesses.push_back(rep);
      continue;
    }
    std::vector<char> chosen = base;
    for (std::int64_t e : trim.forced) chosen[e] = 1;
    for (std::int64_t e : table.extract()) chosen[e] = 1;
    std::vector<std::int64_t> edges;
    for (std::size_t e = 0; e < chosen.size(); ++e)
      if (chosen[e]) edges.push_back(static_cast<std::int64_t>(e));
    if (!verify_dmc_solution(bin, edges))
      throw Error(ErrorCode::kCorruptTable, "solver output misses a path");
    rep.cost = edge_set_cost(bin, edges);
    if (!result.feasible || rep.cost < result.cost) {
      result.feasible = true;
      result.cost = rep.cost;
      result.winning_guess = g;
      result.selected = finish(chosen);
    }
    result.guesses.push_back(rep);
  }
  if (result.feasible) result.cost = edge_set_cost(dmc, result.selected);
  return result;
}

}  // namespace flowcut
