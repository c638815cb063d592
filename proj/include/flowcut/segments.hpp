#pragma once

#include <cstdint>
#include <vector>

#include "flowcut/core.hpp"

namespace flowcut {

// A dyadic interval [lo, lo + 2^level). Stored as (lo, level) so that only
// aligned intervals can be built through `make`.
class DyadicSegment {
 public:
  DyadicSegment() = default;
  static DyadicSegment make(std::int64_t lo, int level);

  std::int64_t lo() const { return lo_; }
  int level() const { return level_; }
  std::int64_t length() const { return std::int64_t{1} << level_; }
  std::int64_t hi() const { return lo_ + length(); }
  bool contains_slot(std::int64_t t) const { return lo_ <= t && t < hi(); }
  bool contains(const DyadicSegment& other) const {
    return lo_ <= other.lo_ && other.hi() <= hi();
  }

  friend bool operator==(const DyadicSegment&, const DyadicSegment&) = default;

 private:
  DyadicSegment(std::int64_t lo, int level) : lo_(lo), level_(level) {}
  std::int64_t lo_ = 0;
  int level_ = 0;
};

using SegmentList = std::vector<DyadicSegment>;

// Partition of [r, horizon) into dyadic segments, at most two per level.
SegmentList form_segments(std::int64_t release, std::int64_t horizon);

// Index into `list` of the segment holding slot t.
std::size_t segment_index_containing(const SegmentList& list, std::int64_t t);
DyadicSegment segment_containing(const SegmentList& list, std::int64_t t);

// Segment lists for every job of a padded instance, in instance order.
std::vector<SegmentList> all_segments(const WftInstance& inst);

// For jobs in release order, the segment of an earlier job at any slot is at
// least as long as that of a later job.
bool check_nesting(const WftInstance& inst, const std::vector<SegmentList>& lists);

// Weight of a job segment: w * length, raised to lp_exponent.
std::int64_t job_segment_weight(const Job& job, const DyadicSegment& seg,
                                int lp_exponent = 1);

}  // namespace flowcut
