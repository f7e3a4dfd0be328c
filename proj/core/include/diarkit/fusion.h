// diarkit/fusion.h

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

#ifndef DIARKIT_FUSION_H_
#define DIARKIT_FUSION_H_

#include <vector>

#include "diarkit/rttm_io.h"

namespace diarkit {

// A system output with its trust rank (1 = most trusted).
struct RankedHypothesis {
  int rank = 1;
  std::vector<Turn> turns;
};

// Upper bound on fused systems; keeps the exact integer weights in range.
inline constexpr int kMaxFusionSystems = 32;

// Renames the speakers of every rank > 1 hypothesis to the rank-1 speaker
// they overlap most (optimal assignment). Speakers left unmapped get fresh
// labels "<speaker>@r<rank>". Output is ordered by rank.
std::vector<RankedHypothesis> MapLabels(std::vector<RankedHypothesis> hypotheses);

// Rank-weighted voting over label-mapped hypotheses. System r carries weight
// proportional to 1/r. The recording is cut at every turn boundary; in each
// piece the number of output speakers is the weighted mean active-speaker
// count rounded half up, filled by the speakers with the largest accrued
// weight (ties by id).
std::vector<Turn> Vote(const std::vector<RankedHypothesis>& mapped);

// MapLabels followed by Vote.
std::vector<Turn> Fuse(std::vector<RankedHypothesis> hypotheses);

}  // namespace diarkit

#endif  // DIARKIT_FUSION_H_
