// tests/oracles.h

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

// Brute-force reference implementations used by the tests.  Everything here
// works on a 1 ms grid or by exhaustive enumeration and shares no code with
// the library beyond the plain data types.

#ifndef DIARKIT_TESTS_ORACLES_H_
#define DIARKIT_TESTS_ORACLES_H_

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "diarkit/random.h"
#include "diarkit/rttm_io.h"

namespace diarkit::testing {

using Raster = std::vector<std::uint8_t>;

inline Millis Extent(const std::vector<Turn>& a, const std::vector<Turn>& b = {}) {
  Millis e = 0;
  for (const Turn& t : a) e = std::max(e, t.end());
  for (const Turn& t : b) e = std::max(e, t.end());
  return e;
}

inline std::map<std::string, Raster> RasterBySpeaker(const std::vector<Turn>& turns,
                                                     Millis extent) {
  std::map<std::string, Raster> out;
  for (const Turn& t : turns) {
    Raster& r = out.try_emplace(t.speaker, Raster(extent, 0)).first->second;
    for (Millis i = t.onset; i < t.end(); ++i) r[i] = 1;
  }
  return out;
}

inline Raster RasterUnion(const std::vector<Turn>& turns, Millis extent) {
  Raster r(extent, 0);
  for (const Turn& t : turns)
    for (Millis i = t.onset; i < t.end(); ++i) r[i] = 1;
  return r;
}

inline std::int64_t RasterOverlap(const Raster& a, const Raster& b) {
  std::int64_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += a[i] && b[i];
  return n;
}

// Exhaustive maximum-weight assignment.  Rows and columns are padded to a
// square; among optimal permutations the lexicographically smallest is kept.
inline std::vector<int> BruteAssignment(const std::vector<std::vector<std::int64_t>>& w,
                                        int cols) {
  const int rows = static_cast<int>(w.size());
  const int n = std::max(rows, cols);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best;
  std::int64_t best_w = 0;
  do {
    std::int64_t total = 0;
    for (int i = 0; i < rows; ++i)
      if (perm[i] < cols) total += w[i][perm[i]];
    if (best.empty() || total > best_w) {
      best = perm;
      best_w = total;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<int> out(rows, -1);
  for (int i = 0; i < rows; ++i) out[i] = best[i] < cols ? best[i] : -1;
  return out;
}

struct FrameDer {
  std::int64_t miss = 0;
  std::int64_t false_alarm = 0;
  std::int64_t confusion = 0;
  std::int64_t scored = 0;
};

// DER counted one millisecond at a time.  The speaker mapping is found by
// exhaustive search over the rasterized overlaps.
inline FrameDer FrameGridDer(const std::vector<Turn>& ref, const std::vector<Turn>& hyp,
                             Millis collar, bool score_overlap) {
  const Millis extent = Extent(ref, hyp);
  const auto ref_r = RasterBySpeaker(ref, extent);
  const auto hyp_r = RasterBySpeaker(hyp, extent);
  std::vector<const Raster*> rr, hr;
  for (const auto& [s, r] : ref_r) rr.push_back(&r);
  for (const auto& [s, r] : hyp_r) hr.push_back(&r);

  std::vector<std::vector<std::int64_t>> w(rr.size(), std::vector<std::int64_t>(hr.size()));
  for (std::size_t i = 0; i < rr.size(); ++i)
    for (std::size_t j = 0; j < hr.size(); ++j) w[i][j] = RasterOverlap(*rr[i], *hr[j]);
  const std::vector<int> map = BruteAssignment(w, static_cast<int>(hr.size()));

  Raster no_score(extent, 0);
  for (const Raster* r : rr) {
    for (Millis t = 0; t <= extent; ++t) {
      const bool before = t > 0 && (*r)[t - 1];
      const bool after = t < extent && (*r)[t];
      if (before == after) continue;
      for (Millis i = std::max<Millis>(0, t - collar); i < std::min(extent, t + collar); ++i)
        no_score[i] = 1;
    }
  }
  FrameDer out;
  for (Millis t = 0; t < extent; ++t) {
    if (no_score[t]) continue;
    std::int64_t nr = 0, nh = 0, nc = 0;
    for (std::size_t i = 0; i < rr.size(); ++i) {
      if (!(*rr[i])[t]) continue;
      ++nr;
      if (map[i] >= 0 && (*hr[map[i]])[t]) ++nc;
    }
    for (const Raster* h : hr) nh += (*h)[t];
    if (!score_overlap && nr > 1) continue;
    out.scored += nr;
    out.miss += std::max<std::int64_t>(0, nr - nh);
    out.false_alarm += std::max<std::int64_t>(0, nh - nr);
    out.confusion += std::min(nr, nh) - nc;
  }
  return out;
}

// Random turns on a coarse grid so that touching and overlapping cases occur.
inline std::vector<Turn> RandomTurns(CounterRng& rng, const std::string& rec, int speakers,
                                     int count, Millis horizon, Millis grain = 1) {
  std::vector<Turn> out;
  for (int i = 0; i < count; ++i) {
    const Millis onset = static_cast<Millis>(rng.Below(horizon / grain)) * grain;
    const Millis dur = static_cast<Millis>(1 + rng.Below(horizon / grain / 4)) * grain;
    out.push_back({rec, "1", "s" + std::to_string(rng.Below(speakers)), onset, dur});
  }
  SortTurns(&out);
  return out;
}

}  // namespace diarkit::testing

#endif  // DIARKIT_TESTS_ORACLES_H_
