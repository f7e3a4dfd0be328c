// src/timeline.cc

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

#include "diarkit/timeline.h"

#include <algorithm>
#include <map>
#include <numeric>

#include "diarkit/errors.h"

namespace diarkit {

Timeline::Timeline(std::vector<Interval> intervals) {
  std::erase_if(intervals, [](const Interval& iv) { return iv.end <= iv.start; });
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.start < b.start; });
  for (const Interval& iv : intervals) {
    if (!intervals_.empty() && iv.start <= intervals_.back().end) {
      intervals_.back().end = std::max(intervals_.back().end, iv.end);
    } else {
      intervals_.push_back(iv);
    }
  }
}

Millis Timeline::TotalDuration() const {
  Millis total = 0;
  for (const Interval& iv : intervals_) total += iv.duration();
  return total;
}

bool Timeline::Contains(Millis t) const {
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), t,
                             [](Millis v, const Interval& iv) { return v < iv.start; });
  if (it == intervals_.begin()) return false;
  --it;
  return t < it->end;
}

Timeline Unite(const Timeline& a, const Timeline& b) {
  std::vector<Interval> all = a.intervals();
  all.insert(all.end(), b.begin(), b.end());
  return Timeline(std::move(all));
}

Timeline Intersect(const Timeline& a, const Timeline& b) {
  std::vector<Interval> out;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    const Millis lo = std::max(i->start, j->start);
    const Millis hi = std::min(i->end, j->end);
    if (lo < hi) out.push_back({lo, hi});
    if (i->end < j->end) {
      ++i;
    } else {
      ++j;
    }
  }
  return Timeline(std::move(out));
}

Timeline Subtract(const Timeline& a, const Timeline& b) {
  std::vector<Interval> out;
  auto j = b.begin();
  for (const Interval& iv : a) {
    Millis cursor = iv.start;
    while (j != b.end() && j->end <= cursor) ++j;
    auto k = j;
    while (k != b.end() && k->start < iv.end) {
      if (k->start > cursor) out.push_back({cursor, k->start});
      cursor = std::max(cursor, k->end);
      if (k->end > iv.end) break;
      ++k;
    }
    if (cursor < iv.end) out.push_back({cursor, iv.end});
  }
  return Timeline(std::move(out));
}

Timeline CloseGaps(const Timeline& t, Millis max_gap) {
  std::vector<Interval> out;
  for (const Interval& iv : t) {
    if (!out.empty() && iv.start - out.back().end < max_gap) {
      out.back().end = iv.end;
    } else {
      out.push_back(iv);
    }
  }
  return Timeline(std::move(out));
}

Timeline ToTimeline(std::span<const Turn> turns) {
  std::vector<Interval> ivs;
  ivs.reserve(turns.size());
  for (const Turn& t : turns) {
    if (t.recording_id != turns.front().recording_id)
      throw UsageError("ToTimeline: turns from recordings '" + turns.front().recording_id +
                       "' and '" + t.recording_id + "'");
    ivs.push_back({t.onset, t.end()});
  }
  return Timeline(std::move(ivs));
}

std::vector<SubSegment> Subsegment(const Timeline& regions, Millis window, Millis shift,
                                   const std::string& recording_id) {
  if (window <= 0) throw UsageError("sub-segment window must be positive");
  if (shift <= 0 || shift > window)
    throw UsageError("sub-segment shift must be in (0, window]");
  std::vector<SubSegment> out;
  for (std::size_t r = 0; r < regions.size(); ++r) {
    const Interval& region = regions.intervals()[r];
    if (region.duration() <= window) {
      out.push_back({recording_id, region, r});
      continue;
    }
    Millis last_end = region.start;
    for (Millis s = region.start; s + window <= region.end; s += shift) {
      out.push_back({recording_id, {s, s + window}, r});
      last_end = s + window;
    }
    if (last_end < region.end)
      out.push_back({recording_id, {region.end - window, region.end}, r});
  }
  return out;
}

std::string ClusterSpeakerName(int label) { return "spk" + std::to_string(label); }

std::vector<Turn> LabelsToTurns(std::span<const SubSegment> subsegments,
                                std::span<const int> labels) {
  if (subsegments.size() != labels.size())
    throw UsageError("LabelsToTurns: " + std::to_string(subsegments.size()) +
                     " sub-segments but " + std::to_string(labels.size()) + " labels");
  std::vector<std::size_t> order(subsegments.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const SubSegment& x = subsegments[a];
    const SubSegment& y = subsegments[b];
    return std::tie(x.recording_id, x.interval.start, x.interval.end) <
           std::tie(y.recording_id, y.interval.start, y.interval.end);
  });

  // recording -> speaker label -> owned pieces
  std::map<std::string, std::map<int, std::vector<Interval>>> pieces;
  Millis claimed = 0;  // end of the last piece handed out in this recording
  for (std::size_t k = 0; k < order.size(); ++k) {
    const SubSegment& cur = subsegments[order[k]];
    if (k == 0 || subsegments[order[k - 1]].recording_id != cur.recording_id) claimed = 0;
    Millis lo = cur.interval.start;
    Millis hi = cur.interval.end;
    if (k > 0) {
      const SubSegment& prev = subsegments[order[k - 1]];
      if (prev.recording_id == cur.recording_id && cur.interval.start < prev.interval.end)
        lo = std::max(lo, (cur.interval.start + prev.interval.end) / 2);
    }
    if (k + 1 < order.size()) {
      const SubSegment& next = subsegments[order[k + 1]];
      if (next.recording_id == cur.recording_id && next.interval.start < cur.interval.end)
        hi = std::min(hi, (next.interval.start + cur.interval.end) / 2);
    }
    // Midpoints are monotone for equal-length windows; the clamp keeps pieces
    // disjoint when a caller supplies nested windows of mixed length.
    lo = std::max(lo, claimed);
    if (lo < hi) {
      pieces[cur.recording_id][labels[order[k]]].push_back({lo, hi});
      claimed = hi;
    }
  }

  std::vector<Turn> turns;
  for (auto& [rec, by_label] : pieces) {
    for (auto& [label, ivs] : by_label) {
      for (const Interval& iv : Timeline(std::move(ivs)))
        turns.push_back({rec, "1", ClusterSpeakerName(label), iv.start, iv.duration()});
    }
  }
  SortTurns(&turns);
  return turns;
}

std::vector<Turn> NormalizeTurns(std::span<const Turn> turns) {
  std::map<std::pair<std::string, std::string>, std::vector<Interval>> by_speaker;
  std::map<std::pair<std::string, std::string>, std::string> channel;
  for (const Turn& t : turns) {
    by_speaker[{t.recording_id, t.speaker}].push_back({t.onset, t.end()});
    channel.emplace(std::make_pair(t.recording_id, t.speaker), t.channel);
  }
  std::vector<Turn> out;
  for (auto& [key, ivs] : by_speaker) {
    for (const Interval& iv : Timeline(std::move(ivs)))
      out.push_back({key.first, channel[key], key.second, iv.start, iv.duration()});
  }
  SortTurns(&out);
  return out;
}

}  // namespace diarkit
