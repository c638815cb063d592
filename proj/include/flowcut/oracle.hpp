#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "flowcut/core.hpp"
#include "flowcut/dmc.hpp"
#include "flowcut/dp.hpp"
#include "flowcut/tree.hpp"

namespace flowcut {

using Rational = boost::multiprecision::cpp_rational;

struct OracleCaps {
  std::size_t max_jobs = 6;
  std::int64_t max_work = 20;
  std::size_t max_edges = 22;
};

struct WftOptimum {
  Schedule schedule;
  std::int64_t cost = 0;
};

// Exact optimum over all preemptive schedules by memoized search over
// (time, remaining work). The objective is sum_j (w_j F_j)^lp_exponent.
WftOptimum brute_force_wft(const WftInstance& inst, int lp_exponent = 1,
                           const OracleCaps& caps = {});

struct DmcOptimum {
  bool feasible = false;
  std::vector<std::int64_t> edges;
  std::int64_t cost = 0;
};

// Exact minimum-cost cover by include/exclude search over positive-size edges.
DmcOptimum brute_force_dmc(const DmcInstance& dmc, const OracleCaps& caps = {});

// Per-cell values over segments x classes [tau_lo, tau_hi].
struct CellTable {
  int tau_lo = 0;
  int tau_hi = 0;
  std::vector<std::vector<Rational>> value;  // [segment][tau - tau_lo]

  CellTable() = default;
  CellTable(std::size_t segments, int lo, int hi);
  const Rational& at(int seg, int tau) const { return value[seg][tau - tau_lo]; }
  Rational& at(int seg, int tau) { return value[seg][tau - tau_lo]; }
  Rational segment_max(int seg) const;
  Rational segment_sum(int seg) const;
  Rational total() const;
};

// Cost of the given edges per cell, in grid units (a grid budget 2^b is worth 2^b).
CellTable compute_bopt(const DpTable& table, const ReducedTree& rt,
                       const std::vector<std::int64_t>& edges, std::int64_t n,
                       std::int64_t scaled_max);

// B*(S, tau) = sum over cells (S', t') of Bopt(S', t') / 4^(d(S, S') + |t' - tau|),
// d the hop distance in the reduced tree, then rounded up to a power of two.
CellTable compute_bstar(const ReducedTree& rt, const CellTable& bopt);

// The same triple sum read with N_i(S) = segments within distance i and the
// class offset tau + i + j, before rounding. Kept to document why the
// separable form above is used instead.
CellTable compute_bstar_literal(const ReducedTree& rt, const CellTable& bopt);

// Smallest power of two >= x (x > 0); 0 stays 0.
Rational round_up_pow2(const Rational& x);

// Checks the three properties of the smoothed table against the optimum.
struct BStarCheck {
  bool dominates = true;  // B* >= Bopt cellwise
  bool bounded = true;    // sum B* <= 16 sum Bopt
  bool smooth = true;     // factor 8 between class neighbours and parent segments
};
BStarCheck check_bstar(const ReducedTree& rt, const CellTable& bopt, const CellTable& bstar);

// Smallest class tau in [tau_min, tau_max] such that the cost of edges of class
// <= tau costing at most B*(S) reaches 4 B*(S) + sum_{t <= tau} Bopt(S, t);
// tau_max when there is none. `unit` converts edge costs to grid units.
int critical_density(const std::vector<CellEdge>& segment, int seg, const CellTable& bstar,
                     const CellTable& bopt, int tau_min, int tau_max, const Rational& unit);

// Cell sequence that goes down S_i while tau > tau*_i and right otherwise.
std::vector<Cell> critical_cells(const std::vector<int>& tau_star, int tau_max);

// Runs the table along the states built from B* and the critical classes;
// reports whether every path is met and the total cost in grid units.
struct BStarPath {
  bool valid = false;
  Rational cost;
};
BStarPath evaluate_bstar_path(const DpTable& table, const ReducedTree& rt,
                              const CellTable& bstar, const CellTable& bopt,
                              std::int64_t n, std::int64_t scaled_max);

// Priority version of a single segment: edges left to right with priorities,
// paths as inclusive edge ranges with a priority demand.
struct PriorityPath {
  std::size_t left = 0;
  std::size_t right = 0;
  std::int64_t priority = 0;
};
struct PrioritySegment {
  std::vector<std::int64_t> edge_priority;
  std::vector<PriorityPath> paths;
};

// Distinct nonempty rows with at most k ones of the covering matrix restricted
// to `columns` (all columns when empty). A row has a one at each column whose
// edge lies on the path with priority at least the path's.
std::size_t shallow_cell_count(const PrioritySegment& seg, std::size_t k,
                               const std::vector<std::size_t>& columns = {});

}  // namespace flowcut
