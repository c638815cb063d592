#include "flowcut/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "flowcut/states.hpp"

namespace flowcut {
namespace {

class WftSearch {
 public:
  WftSearch(const WftInstance& inst, int lp) : inst_(inst), lp_(lp) {}

  std::int64_t best(std::int64_t t, std::vector<std::int64_t>& rem) {
    bool done = true;
    for (std::int64_t r : rem) done = done && r == 0;
    if (done) return 0;
    auto key = std::make_pair(t, rem);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second.first;
    const std::size_t n = rem.size();
    std::int64_t value = -1;
    std::int64_t pick = kIdle;
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (rem[i] == 0 || inst_.jobs[i].r > t) continue;
      any = true;
      --rem[i];
      std::int64_t cost = 0;
      if (rem[i] == 0) {
        const Job& j = inst_.jobs[i];
        cost = checked_pow(checked_mul(j.w, t + 1 - j.r), lp_);
      }
      cost = checked_add(cost, best(t + 1, rem));
      ++rem[i];
      if (value < 0 || cost < value) {
        value = cost;
        pick = static_cast<std::int64_t>(i);
      }
    }
    if (!any) value = best(t + 1, rem);
    memo_[key] = {value, pick};
    return value;
  }

  Schedule replay() {
    std::vector<std::int64_t> rem;
    for (const Job& j : inst_.jobs) rem.push_back(j.p);
    Schedule s;
    for (std::int64_t t = 0;; ++t) {
      bool done = true;
      for (std::int64_t r : rem) done = done && r == 0;
      if (done) break;
      best(t, rem);
      const std::int64_t pick = memo_.at({t, rem}).second;
      if (pick == kIdle) {
        s.slot_owner.push_back(kIdle);
        continue;
      }
      s.slot_owner.push_back(inst_.jobs[pick].id);
      --rem[pick];
    }
    return s;
  }

 private:
  const WftInstance& inst_;
  int lp_;
  std::map<std::pair<std::int64_t, std::vector<std::int64_t>>,
           std::pair<std::int64_t, std::int64_t>>
      memo_;
};

class DmcSearch {
 public:
  explicit DmcSearch(const DmcInstance& dmc) : dmc_(dmc) {
    for (const DmcNode& v : dmc.nodes)
      if (v.parent != kNoNode && v.size > 0) edges_.push_back(v.id);
    std::vector<std::int64_t> index(dmc.size(), -1);
    for (std::size_t i = 0; i < edges_.size(); ++i) index[edges_[i]] = static_cast<std::int64_t>(i);
    paths_of_.resize(edges_.size());
    for (std::size_t p = 0; p < dmc.paths.size(); ++p) {
      need_.push_back(dmc.paths[p].demand);
      room_.push_back(0);
      for (std::int64_t v = dmc.paths[p].bottom; v != dmc.paths[p].top; v = dmc.nodes[v].parent)
        if (index[v] >= 0) {
          paths_of_[index[v]].push_back(p);
          room_[p] += dmc.nodes[v].size;
        }
    }
  }

  std::size_t edge_count() const { return edges_.size(); }

  DmcOptimum run() {
    DmcOptimum out;
    for (std::size_t p = 0; p < need_.size(); ++p)
      if (room_[p] < need_[p]) return out;
    std::vector<char> take(edges_.size(), 0);
    dfs(0, 0, take);
    out.feasible = best_cost_ >= 0;
    out.cost = best_cost_;
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if (out.feasible && best_[i]) out.edges.push_back(edges_[i]);
    return out;
  }

 private:
  void dfs(std::size_t i, std::int64_t cost, std::vector<char>& take) {
    if (best_cost_ >= 0 && cost >= best_cost_) return;
    if (i == edges_.size()) {
      for (std::size_t p = 0; p < need_.size(); ++p)
        if (need_[p] > 0) return;
      best_cost_ = cost;
      best_ = take;
      return;
    }
    const std::int64_t size = dmc_.nodes[edges_[i]].size;
    take[i] = 1;
    for (std::size_t p : paths_of_[i]) {
      need_[p] -= size;
      room_[p] -= size;
    }
    dfs(i + 1, cost + dmc_.nodes[edges_[i]].cost, take);
    take[i] = 0;
    bool possible = true;
    for (std::size_t p : paths_of_[i]) possible = possible && room_[p] >= need_[p] + size;
    for (std::size_t p : paths_of_[i]) need_[p] += size;
    if (possible) dfs(i + 1, cost, take);
    for (std::size_t p : paths_of_[i]) room_[p] += size;
  }

  const DmcInstance& dmc_;
  std::vector<std::int64_t> edges_;
  std::vector<std::vector<std::size_t>> paths_of_;
  std::vector<std::int64_t> need_, room_;
  std::vector<char> best_;
  std::int64_t best_cost_ = -1;
};

Rational pow4_inv(int e) {
  boost::multiprecision::cpp_int d = 1;
  d <<= 2 * e;
  return Rational(1, d);
}

// Exponent b with x == 2^b for a power of two x > 0.
int log2_exact(const Rational& x) {
  const auto num = boost::multiprecision::numerator(x);
  const auto den = boost::multiprecision::denominator(x);
  return static_cast<int>(boost::multiprecision::msb(num)) -
         static_cast<int>(boost::multiprecision::msb(den));
}

}  // namespace

WftOptimum brute_force_wft(const WftInstance& inst, int lp_exponent, const OracleCaps& caps) {
  std::int64_t work = 0;
  for (const Job& j : inst.jobs) work += j.p;
  if (inst.size() > caps.max_jobs || work > caps.max_work)
    throw Error(ErrorCode::kTooLarge, "instance exceeds oracle caps");
  WftSearch search(inst, lp_exponent);
  std::vector<std::int64_t> rem;
  for (const Job& j : inst.jobs) rem.push_back(j.p);
  WftOptimum out;
  out.cost = search.best(0, rem);
  out.schedule = search.replay();
  return out;
}

DmcOptimum brute_force_dmc(const DmcInstance& dmc, const OracleCaps& caps) {
  DmcSearch search(dmc);
  if (search.edge_count() > caps.max_edges)
    throw Error(ErrorCode::kTooLarge, "instance has " + std::to_string(search.edge_count()) +
                                          " edges");
  return search.run();
}

CellTable::CellTable(std::size_t segments, int lo, int hi)
    : tau_lo(lo), tau_hi(hi),
      value(segments, std::vector<Rational>(static_cast<std::size_t>(hi - lo + 1), 0)) {}

Rational CellTable::segment_max(int seg) const {
  Rational m = 0;
  for (const Rational& v : value[seg]) m = std::max(m, v);
  return m;
}

Rational CellTable::segment_sum(int seg) const {
  Rational s = 0;
  for (const Rational& v : value[seg]) s += v;
  return s;
}

Rational CellTable::total() const {
  Rational s = 0;
  for (std::size_t i = 0; i < value.size(); ++i) s += segment_sum(static_cast<int>(i));
  return s;
}

CellTable compute_bopt(const DpTable& table, const ReducedTree& rt,
                       const std::vector<std::int64_t>& edges, std::int64_t n,
                       std::int64_t scaled_max) {
  CellTable out(rt.segments.size(), table.tau_min(), table.tau_max() + 1);
  std::set<std::int64_t> chosen(edges.begin(), edges.end());
  const Rational unit(n, scaled_max);
  for (std::size_t s = 0; s < rt.segments.size(); ++s)
    for (const CellEdge& e : table.segment_edges(static_cast<int>(s)))
      if (e.cls != kNoClass && chosen.count(e.node))
        out.at(static_cast<int>(s), e.cls) += unit * e.cost;
  return out;
}

Rational round_up_pow2(const Rational& x) {
  if (x <= 0) return 0;
  Rational p = 1;
  while (p < x) p *= 2;
  while (p / 2 >= x) p /= 2;
  return p;
}

CellTable compute_bstar(const ReducedTree& rt, const CellTable& bopt) {
  const auto dist = rt.segment_distances();
  const int m = static_cast<int>(rt.segments.size());
  CellTable out(rt.segments.size(), bopt.tau_lo, bopt.tau_hi);
  for (int s = 0; s < m; ++s)
    for (int tau = bopt.tau_lo; tau <= bopt.tau_hi; ++tau) {
      Rational sum = 0;
      for (int s2 = 0; s2 < m; ++s2) {
        if (dist[s][s2] < 0) continue;
        for (int t2 = bopt.tau_lo; t2 <= bopt.tau_hi; ++t2) {
          const Rational& b = bopt.at(s2, t2);
          if (b == 0) continue;
          sum += b * pow4_inv(dist[s][s2] + std::abs(t2 - tau));
        }
      }
      out.at(s, tau) = round_up_pow2(sum);
    }
  return out;
}

CellTable compute_bstar_literal(const ReducedTree& rt, const CellTable& bopt) {
  // A source (S', t') with d = d(S, S') and delta = t' - tau contributes
  // sum_{i >= d} 4^-(i + |delta - i|), summed in closed form.
  const auto dist = rt.segment_distances();
  const int m = static_cast<int>(rt.segments.size());
  CellTable out(rt.segments.size(), bopt.tau_lo, bopt.tau_hi);
  for (int s = 0; s < m; ++s)
    for (int tau = bopt.tau_lo; tau <= bopt.tau_hi; ++tau) {
      Rational sum = 0;
      for (int s2 = 0; s2 < m; ++s2) {
        const int d = dist[s][s2];
        if (d < 0) continue;
        for (int t2 = bopt.tau_lo; t2 <= bopt.tau_hi; ++t2) {
          const Rational& b = bopt.at(s2, t2);
          if (b == 0) continue;
          const int delta = t2 - tau;
          Rational coeff;
          if (d <= delta) {
            coeff = Rational(delta - d + 1) * pow4_inv(delta) + pow4_inv(delta) / 15;
          } else {
            // sum_{i >= d} 4^(delta - 2i) = 4^delta * 16^-d * 16/15
            coeff = pow4_inv(2 * d) * 16 / 15;
            if (delta >= 0) coeff /= pow4_inv(delta);
            else coeff *= pow4_inv(-delta);
          }
          sum += b * coeff;
        }
      }
      out.at(s, tau) = sum;
    }
  return out;
}

BStarCheck check_bstar(const ReducedTree& rt, const CellTable& bopt, const CellTable& bstar) {
  BStarCheck check;
  auto within8 = [](const Rational& a, const Rational& b) {
    if (a == 0 || b == 0) return a == b;
    return a <= 8 * b && b <= 8 * a;
  };
  for (std::size_t s = 0; s < rt.segments.size(); ++s) {
    const int si = static_cast<int>(s);
    const int parent = rt.segments[s].parent;
    for (int tau = bopt.tau_lo; tau <= bopt.tau_hi; ++tau) {
      if (bstar.at(si, tau) < bopt.at(si, tau)) check.dominates = false;
      if (tau < bopt.tau_hi && !within8(bstar.at(si, tau), bstar.at(si, tau + 1)))
        check.smooth = false;
      if (parent >= 0 && !within8(bstar.at(si, tau), bstar.at(parent, tau)))
        check.smooth = false;
    }
  }
  if (bstar.total() > 16 * bopt.total()) check.bounded = false;
  return check;
}

int critical_density(const std::vector<CellEdge>& segment, int seg, const CellTable& bstar,
                     const CellTable& bopt, int tau_min, int tau_max, const Rational& unit) {
  const Rational cap = bstar.segment_max(seg);
  Rational opt_below = 0;
  for (int tau = tau_min; tau <= tau_max; ++tau) {
    opt_below += bopt.at(seg, tau);
    Rational cheap = 0;
    for (const CellEdge& e : segment)
      if (e.cls != kNoClass && e.cls <= tau && unit * e.cost <= cap) cheap += unit * e.cost;
    if (cheap >= 4 * cap + opt_below) return tau;
  }
  return tau_max;
}

std::vector<Cell> critical_cells(const std::vector<int>& tau_star, int tau_max) {
  std::vector<Cell> out;
  int i = static_cast<int>(tau_star.size());
  int tau = tau_max;
  while (i >= 1) {
    out.push_back({i, tau});
    if (tau > tau_star[i - 1]) {
      --tau;
    } else {
      --i;
      ++tau;
    }
  }
  return out;
}

BStarPath evaluate_bstar_path(const DpTable& table, const ReducedTree& rt,
                              const CellTable& bstar, const CellTable& bopt,
                              std::int64_t n, std::int64_t scaled_max) {
  const Rational unit(n, scaled_max);
  std::vector<int> tau_star(rt.segments.size());
  for (std::size_t s = 0; s < rt.segments.size(); ++s)
    tau_star[s] = critical_density(table.segment_edges(static_cast<int>(s)),
                                   static_cast<int>(s), bstar, bopt, table.tau_min(),
                                   table.tau_max(), unit);
  auto exponent = [&](const Rational& x) {
    return x == 0 ? table.b_lo() : table.clamp(log2_exact(x));
  };
  auto state_at = [&](std::int64_t v) {
    DpState st;
    const auto above = rt.segments_above(v);
    std::vector<int> ts;
    for (int s : above) {
      ts.push_back(tau_star[s]);
      st.seg_budget.push_back(exponent(bstar.segment_max(s)));
    }
    st.cells = critical_cells(ts, table.tau_max());
    for (const Cell& c : st.cells)
      st.cell_budget.push_back(exponent(bstar.at(above[c.seg - 1], c.tau)));
    return st;
  };
  const auto run = table.run_fixed(state_at);
  BStarPath out;
  out.valid = run.valid;
  out.cost = unit * run.cost;
  return out;
}

std::size_t shallow_cell_count(const PrioritySegment& seg, std::size_t k,
                               const std::vector<std::size_t>& columns) {
  std::vector<std::size_t> cols = columns;
  if (cols.empty())
    for (std::size_t i = 0; i < seg.edge_priority.size(); ++i) cols.push_back(i);
  std::set<std::vector<std::size_t>> rows;
  for (const PriorityPath& p : seg.paths) {
    std::vector<std::size_t> row;
    for (std::size_t c : cols)
      if (c >= p.left && c <= p.right && seg.edge_priority[c] >= p.priority) row.push_back(c);
    if (!row.empty() && row.size() <= k) rows.insert(std::move(row));
  }
  return rows.size();
}

}  // namespace flowcut
