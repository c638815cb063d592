#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "flowcut/error.hpp"

namespace flowcut {

using JobId = std::int64_t;
inline constexpr JobId kIdle = -1;

// Exact integer helpers. Overflow is an error, never a wrap.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_pow(std::int64_t base, int exponent);

bool is_power_of_two(std::int64_t x);
// Smallest power of two >= x, for x >= 1.
std::int64_t next_power_of_two(std::int64_t x);
// floor(log2(x)) for x >= 1.
int floor_log2(std::int64_t x);

struct Job {
  JobId id = 0;
  std::int64_t p = 1;  // processing requirement, in slots
  std::int64_t w = 0;  // weight
  std::int64_t r = 0;  // release slot
  bool padding = false;

  friend bool operator==(const Job&, const Job&) = default;
};

// Jobs are kept in release order (ties by id); this order is the total order
// used by the tree reduction. `offset` records the shift applied by
// busy_decompose so that schedules can be mapped back to absolute time.
struct WftInstance {
  std::vector<Job> jobs;
  std::int64_t horizon = 0;  // sum of p_j
  std::int64_t offset = 0;

  std::size_t size() const { return jobs.size(); }
  // Position of the job with the given id in `jobs`; throws if absent.
  std::size_t index_of(JobId id) const;
  // max p / min p over non-padding jobs.
  double processing_ratio() const;
  std::int64_t min_processing(bool include_padding = false) const;
};

// slot_owner[t] is the job processed during slot [t, t+1], or kIdle.
struct Schedule {
  std::vector<JobId> slot_owner;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

struct JobOutcome {
  JobId id = 0;
  std::int64_t completion = 0;
  std::int64_t flow = 0;
};

WftInstance validate_instance(std::vector<Job> jobs);

// Per-job completion and flow times; throws InfeasibleSchedule if some job
// gets the wrong number of slots or runs before its release.
std::vector<JobOutcome> schedule_outcomes(const WftInstance& inst,
                                          const Schedule& s);

// Sum of w_j (C_j - r_j); with lp_exponent > 1 the sum of p-th powers.
std::int64_t evaluate_schedule(const WftInstance& inst, const Schedule& s,
                               int lp_exponent = 1);

bool is_feasible_schedule(const WftInstance& inst, const Schedule& s);

std::vector<WftInstance> busy_decompose(const WftInstance& inst);

WftInstance pad_to_power_of_two(const WftInstance& inst);

Schedule srpt_schedule(const WftInstance& inst);

}  // namespace flowcut
