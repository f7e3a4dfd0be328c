// diarkit/scoring.h

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

#ifndef DIARKIT_SCORING_H_
#define DIARKIT_SCORING_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "diarkit/assignment.h"
#include "diarkit/rttm_io.h"
#include "diarkit/time.h"
#include "diarkit/timeline.h"

namespace diarkit {

// One-to-one reference/hypothesis speaker correspondence. Pairs with zero
// overlap are never reported as mapped.
struct SpeakerMapping {
  std::vector<std::pair<std::string, std::string>> pairs;  // (ref, hyp), ref order
  std::vector<std::string> unmapped_ref;
  std::vector<std::string> unmapped_hyp;
  Millis total_overlap = 0;

  std::map<std::string, std::string> RefToHyp() const;
  std::map<std::string, std::string> HypToRef() const;
};

// Pairwise overlapped speech between speakers; rows/cols follow the sorted
// speaker lists written to ref_speakers/hyp_speakers.
WeightMatrix OverlapMatrix(std::span<const Turn> ref, std::span<const Turn> hyp,
                           std::vector<std::string>* ref_speakers,
                           std::vector<std::string>* hyp_speakers);

// Maximum-total-overlap assignment; ties resolve toward lexicographically
// smaller speaker ids.
SpeakerMapping OptimalMapping(std::span<const Turn> ref, std::span<const Turn> hyp);

struct DerOptions {
  Millis collar = 250;
  bool score_overlap = true;
};

// Error components in milliseconds of speaker time.
struct DerReport {
  Millis miss = 0;
  Millis false_alarm = 0;
  Millis confusion = 0;
  Millis scored_speech = 0;

  std::optional<double> der() const;
  DerReport& operator+=(const DerReport& o);
  friend bool operator==(const DerReport&, const DerReport&) = default;
};

// Regions excluded from scoring: +-collar around every reference boundary
// and, unless score_overlap, reference overlap.
Timeline NoScoreRegions(std::span<const Turn> ref, const DerOptions& options);

DerReport ComputeDer(std::span<const Turn> ref, std::span<const Turn> hyp,
                     const DerOptions& options);

struct CderReport {
  int miss_utts = 0;
  int fa_utts = 0;
  int conf_utts = 0;
  int ref_utts = 0;

  std::optional<double> cder() const;
  CderReport& operator+=(const CderReport& o);
  friend bool operator==(const CderReport&, const CderReport&) = default;
};

// Utterance-level error counting with unit weight per utterance.
//  * A reference turn is correct when its mapped hypothesis speaker covers at
//    least rho of it; otherwise it is a confusion when another hypothesis
//    speaker reaches rho, else a miss.
//  * A hypothesis utterance (maximal same-speaker run) is a false alarm when
//    its mapped reference speaker covers less than rho of it.
CderReport ComputeCder(std::span<const Turn> ref, std::span<const Turn> hyp, double rho = 0.5);

struct VadReport {
  Millis total = 0;
  Millis ref_speech = 0;
  Millis missed = 0;        // ref - hyp
  Millis false_alarm = 0;   // hyp - ref

  std::optional<double> miss() const;
  std::optional<double> fa() const;
  std::optional<double> acc() const;
  VadReport& operator+=(const VadReport& o);
};

VadReport ComputeVad(const Timeline& ref, const Timeline& hyp, const Interval& total);

struct DetOptions {
  double p_target = 0.01;
  double c_fa = 1.0;
  double c_miss = 1.0;
};

struct DetPoint {
  double threshold;  // +inf for the reject-all point
  double p_miss;     // targets scoring below threshold
  double p_fa;       // nontargets scoring at or above threshold
};

// One point per distinct score (ascending) plus a final reject-all point.
std::vector<DetPoint> DetCurve(std::span<const TrialScore> trials);

double DetectionCost(const DetPoint& point, const DetOptions& options);

struct DetReport {
  double eer = 0;        // min(raw_eer, 0.5)
  double raw_eer = 0;    // interpolated crossing of P_miss and P_fa
  double min_dcf = 0;
  double threshold_at_eer = 0;
  double threshold_at_min_dcf = 0;
};

DetReport ComputeDetMetrics(std::span<const TrialScore> trials, const DetOptions& options);

// Machine-readable report lines (no trailing newline).
std::string FormatDerLine(const std::string& recording, const DerReport& r);
std::string FormatCderLine(const std::string& recording, const CderReport& r);
std::string FormatVadLine(const std::string& recording, const VadReport& r);
std::string FormatDetLine(const DetReport& r);

}  // namespace diarkit

#endif  // DIARKIT_SCORING_H_
