#include "flowcut/segments.hpp"

#include <algorithm>
#include <string>

namespace flowcut {

DyadicSegment DyadicSegment::make(std::int64_t lo, int level) {
  if (level < 0 || level > 61 || lo < 0 || lo % (std::int64_t{1} << level) != 0)
    throw Error(ErrorCode::kInvalidArgument,
                "misaligned dyadic segment at " + std::to_string(lo));
  return DyadicSegment(lo, level);
}

SegmentList form_segments(std::int64_t release, std::int64_t horizon) {
  if (!is_power_of_two(horizon))
    throw Error(ErrorCode::kInvalidArgument, "horizon must be a power of two");
  if (release < 0 || release >= horizon)
    throw Error(ErrorCode::kReleaseOutOfRange,
                "release " + std::to_string(release) + " outside [0, " +
                    std::to_string(horizon) + ")");
  SegmentList out;
  std::int64_t t = release;
  // Stop as soon as t reaches the horizon, even between the two appends of a
  // doubled level.
  for (int s = 0; t < horizon; ++s) {
    const std::int64_t len = std::int64_t{1} << s;
    if (t % (2 * len) == 0) {
      out.push_back(DyadicSegment::make(t, s));
      t += len;
      if (t == horizon) break;
      out.push_back(DyadicSegment::make(t, s));
      t += len;
    } else {
      out.push_back(DyadicSegment::make(t, s));
      t += len;
    }
  }
  return out;
}

std::size_t segment_index_containing(const SegmentList& list, std::int64_t t) {
  if (list.empty() || t < list.front().lo())
    throw Error(ErrorCode::kSlotBeforeRelease, "slot " + std::to_string(t));
  auto it = std::upper_bound(
      list.begin(), list.end(), t,
      [](std::int64_t v, const DyadicSegment& s) { return v < s.lo(); });
  std::size_t idx = static_cast<std::size_t>(it - list.begin()) - 1;
  if (!list[idx].contains_slot(t))
    throw Error(ErrorCode::kInvalidArgument,
                "slot " + std::to_string(t) + " beyond horizon");
  return idx;
}

DyadicSegment segment_containing(const SegmentList& list, std::int64_t t) {
  return list[segment_index_containing(list, t)];
}

std::vector<SegmentList> all_segments(const WftInstance& inst) {
  std::vector<SegmentList> out;
  out.reserve(inst.size());
  for (const Job& j : inst.jobs) out.push_back(form_segments(j.r, inst.horizon));
  return out;
}

bool check_nesting(const WftInstance& inst, const std::vector<SegmentList>& lists) {
  const std::size_t n = inst.size();
  std::vector<std::size_t> cursor(n, 0);
  for (std::int64_t t = 0; t < inst.horizon; ++t) {
    int prev_level = 1 << 30;
    for (std::size_t i = 0; i < n; ++i) {
      if (inst.jobs[i].r > t) break;  // jobs are in release order
      while (!lists[i][cursor[i]].contains_slot(t)) ++cursor[i];
      int level = lists[i][cursor[i]].level();
      if (level > prev_level) return false;
      prev_level = level;
    }
  }
  return true;
}

std::int64_t job_segment_weight(const Job& job, const DyadicSegment& seg,
                                int lp_exponent) {
  return checked_pow(checked_mul(job.w, seg.length()), lp_exponent);
}

}  // namespace flowcut
