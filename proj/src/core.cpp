#include "flowcut/core.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <string>

namespace flowcut {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyInstance: return "EmptyInstance";
    case ErrorCode::kNonIntegralField: return "NonIntegralField";
    case ErrorCode::kNonPositiveProcessing: return "NonPositiveProcessing";
    case ErrorCode::kInfeasibleSchedule: return "InfeasibleSchedule";
    case ErrorCode::kReleaseOutOfRange: return "ReleaseOutOfRange";
    case ErrorCode::kSlotBeforeRelease: return "SlotBeforeRelease";
    case ErrorCode::kKindMismatch: return "KindMismatch";
    case ErrorCode::kInfeasibleInput: return "InfeasibleInput";
    case ErrorCode::kDeadlineMiss: return "DeadlineMiss";
    case ErrorCode::kInfeasibleEdgeSet: return "InfeasibleEdgeSet";
    case ErrorCode::kCorruptTable: return "CorruptTable";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kOverflow: return "Overflow";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kPipelineInfeasible: return "PipelineInfeasible";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out))
    throw Error(ErrorCode::kOverflow, "integer addition overflow");
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out))
    throw Error(ErrorCode::kOverflow, "integer multiplication overflow");
  return out;
}

std::int64_t checked_pow(std::int64_t base, int exponent) {
  if (exponent < 0) throw Error(ErrorCode::kInvalidArgument, "negative exponent");
  std::int64_t out = 1;
  for (int i = 0; i < exponent; ++i) out = checked_mul(out, base);
  return out;
}

bool is_power_of_two(std::int64_t x) { return x > 0 && (x & (x - 1)) == 0; }

std::int64_t next_power_of_two(std::int64_t x) {
  std::int64_t p = 1;
  while (p < x) p = checked_mul(p, 2);
  return p;
}

int floor_log2(std::int64_t x) {
  int k = -1;
  while (x > 0) {
    x >>= 1;
    ++k;
  }
  return k;
}

std::size_t WftInstance::index_of(JobId id) const {
  for (std::size_t i = 0; i < jobs.size(); ++i)
    if (jobs[i].id == id) return i;
  throw Error(ErrorCode::kInvalidArgument, "unknown job id " + std::to_string(id));
}

std::int64_t WftInstance::min_processing(bool include_padding) const {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (const Job& j : jobs)
    if (include_padding || !j.padding) best = std::min(best, j.p);
  return best == std::numeric_limits<std::int64_t>::max() ? 1 : best;
}

double WftInstance::processing_ratio() const {
  std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = 0;
  for (const Job& j : jobs) {
    if (j.padding) continue;
    lo = std::min(lo, j.p);
    hi = std::max(hi, j.p);
  }
  return hi == 0 ? 1.0 : static_cast<double>(hi) / static_cast<double>(lo);
}

WftInstance validate_instance(std::vector<Job> jobs) {
  if (jobs.empty()) throw Error(ErrorCode::kEmptyInstance, "no jobs");
  std::set<JobId> ids;
  for (const Job& j : jobs) {
    if (j.p < 1)
      throw Error(ErrorCode::kNonPositiveProcessing,
                  "job " + std::to_string(j.id) + " has p < 1");
    if (j.w < 0 || j.r < 0)
      throw Error(ErrorCode::kNonIntegralField,
                  "job " + std::to_string(j.id) + " has a negative field");
    if (!ids.insert(j.id).second)
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate job id " + std::to_string(j.id));
  }
  std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
    return a.r != b.r ? a.r < b.r : a.id < b.id;
  });
  WftInstance inst;
  for (const Job& j : jobs) inst.horizon = checked_add(inst.horizon, j.p);
  inst.jobs = std::move(jobs);
  return inst;
}

std::vector<JobOutcome> schedule_outcomes(const WftInstance& inst,
                                          const Schedule& s) {
  std::vector<std::int64_t> count(inst.size(), 0), last(inst.size(), -1);
  for (std::size_t t = 0; t < s.slot_owner.size(); ++t) {
    JobId owner = s.slot_owner[t];
    if (owner == kIdle) continue;
    std::size_t i;
    try {
      i = inst.index_of(owner);
    } catch (const Error&) {
      throw Error(ErrorCode::kInfeasibleSchedule,
                  "slot " + std::to_string(t) + " owned by unknown job");
    }
    if (static_cast<std::int64_t>(t) < inst.jobs[i].r)
      throw Error(ErrorCode::kInfeasibleSchedule,
                  "job " + std::to_string(owner) + " runs before release");
    ++count[i];
    last[i] = static_cast<std::int64_t>(t);
  }
  std::vector<JobOutcome> out;
  out.reserve(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const Job& j = inst.jobs[i];
    if (count[i] != j.p)
      throw Error(ErrorCode::kInfeasibleSchedule,
                  "job " + std::to_string(j.id) + " gets " +
                      std::to_string(count[i]) + " slots, needs " +
                      std::to_string(j.p));
    out.push_back({j.id, last[i] + 1, last[i] + 1 - j.r});
  }
  return out;
}

std::int64_t evaluate_schedule(const WftInstance& inst, const Schedule& s,
                               int lp_exponent) {
  if (lp_exponent < 1)
    throw Error(ErrorCode::kInvalidArgument, "lp exponent must be >= 1");
  auto outcomes = schedule_outcomes(inst, s);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    std::int64_t term = checked_mul(inst.jobs[i].w, outcomes[i].flow);
    total = checked_add(total, checked_pow(term, lp_exponent));
  }
  return total;
}

bool is_feasible_schedule(const WftInstance& inst, const Schedule& s) {
  try {
    schedule_outcomes(inst, s);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::vector<WftInstance> busy_decompose(const WftInstance& inst) {
  std::vector<WftInstance> parts;
  std::vector<Job> current;
  std::int64_t busy_until = 0;
  auto flush = [&] {
    if (current.empty()) return;
    std::int64_t shift = current.front().r;
    for (Job& j : current) j.r -= shift;
    WftInstance part = validate_instance(std::move(current));
    part.offset = inst.offset + shift;
    parts.push_back(std::move(part));
    current.clear();
  };
  for (const Job& j : inst.jobs) {
    // Released work drains strictly before this release: independent part.
    if (!current.empty() && j.r > busy_until) flush();
    busy_until = std::max(busy_until, j.r) + j.p;
    current.push_back(j);
  }
  flush();
  return parts;
}

WftInstance pad_to_power_of_two(const WftInstance& inst) {
  if (is_power_of_two(inst.horizon)) return inst;
  WftInstance out = inst;
  std::int64_t target = next_power_of_two(inst.horizon);
  JobId next_id = 0;
  for (const Job& j : inst.jobs) next_id = std::max(next_id, j.id + 1);
  out.jobs.push_back(Job{next_id, target - inst.horizon, 0, inst.horizon, true});
  out.horizon = target;
  return out;
}

Schedule srpt_schedule(const WftInstance& inst) {
  std::vector<std::int64_t> remaining;
  for (const Job& j : inst.jobs) remaining.push_back(j.p);
  std::size_t left = inst.size();
  Schedule s;
  for (std::int64_t t = 0; left > 0; ++t) {
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < inst.size(); ++i) {
      if (remaining[i] == 0 || inst.jobs[i].r > t) continue;
      if (!pick || remaining[i] < remaining[*pick] ||
          (remaining[i] == remaining[*pick] &&
           inst.jobs[i].id < inst.jobs[*pick].id))
        pick = i;
    }
    if (!pick) {
      s.slot_owner.push_back(kIdle);
      continue;
    }
    s.slot_owner.push_back(inst.jobs[*pick].id);
    if (--remaining[*pick] == 0) --left;
  }
  return s;
}

}  // namespace flowcut
