// diarkit/timeline.h

// Copyright 2026  The diarkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef DIARKIT_TIMELINE_H_
#define DIARKIT_TIMELINE_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "diarkit/rttm_io.h"
#include "diarkit/time.h"

namespace diarkit {

// Half-open [start, end) in milliseconds.
struct Interval {
  Millis start = 0;
  Millis end = 0;

  Millis duration() const { return end - start; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Sorted, pairwise-disjoint intervals. Touching intervals are merged, so two
// stored intervals are always separated by a positive gap.
class Timeline {
 public:
  Timeline() = default;
  // Normalizes arbitrary input: drops empty intervals, sorts, merges.
  explicit Timeline(std::vector<Interval> intervals);

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  std::size_t size() const { return intervals_.size(); }
  auto begin() const { return intervals_.begin(); }
  auto end() const { return intervals_.end(); }

  Millis TotalDuration() const;
  bool Contains(Millis t) const;

  friend bool operator==(const Timeline&, const Timeline&) = default;

 private:
  std::vector<Interval> intervals_;
};

Timeline Unite(const Timeline& a, const Timeline& b);
Timeline Intersect(const Timeline& a, const Timeline& b);
Timeline Subtract(const Timeline& a, const Timeline& b);
inline Millis TotalDuration(const Timeline& t) { return t.TotalDuration(); }

// Bridges every gap shorter than max_gap.
Timeline CloseGaps(const Timeline& t, Millis max_gap);

// Union of speaker activity. All turns must share one recording id.
Timeline ToTimeline(std::span<const Turn> turns);

struct SubSegment {
  std::string recording_id;
  Interval interval;
  std::size_t parent_index = 0;  // index of the source region

  friend bool operator==(const SubSegment&, const SubSegment&) = default;
};

// Slices each region into windows of `window` ms advanced by `shift` ms.
// Regions no longer than the window yield one sub-segment; otherwise windows
// are emitted while they fit and a final end-aligned window covers any tail.
std::vector<SubSegment> Subsegment(const Timeline& regions, Millis window, Millis shift,
                                   const std::string& recording_id = "");

// Speaker name used for cluster id `label`.
std::string ClusterSpeakerName(int label);

// Converts per-sub-segment cluster labels into speaker turns. Where
// consecutive sub-segments overlap and carry different labels the boundary
// is the midpoint of the overlap (rounded down to the millisecond).
std::vector<Turn> LabelsToTurns(std::span<const SubSegment> subsegments,
                                std::span<const int> labels);

// Per-speaker timelines of one recording, merged into maximal turns.
std::vector<Turn> NormalizeTurns(std::span<const Turn> turns);

}  // namespace diarkit

#endif  // DIARKIT_TIMELINE_H_
