// src/scoring.cc

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

#include "diarkit/scoring.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "diarkit/errors.h"

namespace diarkit {

namespace {

// Merged activity per speaker, keyed by speaker id.
std::map<std::string, Timeline> SpeakerTimelines(std::span<const Turn> turns) {
  std::map<std::string, std::vector<Interval>> raw;
  for (const Turn& t : turns) raw[t.speaker].push_back({t.onset, t.end()});
  std::map<std::string, Timeline> out;
  for (auto& [spk, ivs] : raw) out.emplace(spk, Timeline(std::move(ivs)));
  return out;
}

std::optional<double> Ratio(Millis num, Millis den) {
  if (den <= 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

std::string FormatOptional(const std::optional<double>& v) {
  return v ? FormatFixed(*v, 4) : std::string("undefined");
}

struct Event {
  Millis time;
  int index;  // speaker index; refs first, then hyps
  int delta;
};

}  // namespace

std::map<std::string, std::string> SpeakerMapping::RefToHyp() const {
  return {pairs.begin(), pairs.end()};
}

std::map<std::string, std::string> SpeakerMapping::HypToRef() const {
  std::map<std::string, std::string> out;
  for (const auto& [r, h] : pairs) out.emplace(h, r);
  return out;
}

WeightMatrix OverlapMatrix(std::span<const Turn> ref, std::span<const Turn> hyp,
                           std::vector<std::string>* ref_speakers,
                           std::vector<std::string>* hyp_speakers) {
  const auto ref_tl = SpeakerTimelines(ref);
  const auto hyp_tl = SpeakerTimelines(hyp);
  ref_speakers->clear();
  hyp_speakers->clear();
  for (const auto& [spk, tl] : ref_tl) ref_speakers->push_back(spk);
  for (const auto& [spk, tl] : hyp_tl) hyp_speakers->push_back(spk);
  WeightMatrix w(static_cast<int>(ref_tl.size()), static_cast<int>(hyp_tl.size()));
  int i = 0;
  for (const auto& [rs, rt] : ref_tl) {
    int j = 0;
    for (const auto& [hs, ht] : hyp_tl) w(i, j++) = Intersect(rt, ht).TotalDuration();
    ++i;
  }
  return w;
}

SpeakerMapping OptimalMapping(std::span<const Turn> ref, std::span<const Turn> hyp) {
  std::vector<std::string> ref_spk, hyp_spk;
  const WeightMatrix w = OverlapMatrix(ref, hyp, &ref_spk, &hyp_spk);
  const std::vector<int> assignment = MaxWeightAssignment(w);
  SpeakerMapping m;
  std::vector<char> hyp_used(hyp_spk.size(), 0);
  for (std::size_t i = 0; i < ref_spk.size(); ++i) {
    const int j = assignment[i];
    if (j >= 0 && w(static_cast<int>(i), j) > 0) {
      m.pairs.emplace_back(ref_spk[i], hyp_spk[j]);
      m.total_overlap += w(static_cast<int>(i), j);
      hyp_used[j] = 1;
    } else {
      m.unmapped_ref.push_back(ref_spk[i]);
    }
  }
  for (std::size_t j = 0; j < hyp_spk.size(); ++j)
    if (!hyp_used[j]) m.unmapped_hyp.push_back(hyp_spk[j]);
  return m;
}

std::optional<double> DerReport::der() const {
  return Ratio(miss + false_alarm + confusion, scored_speech);
}

DerReport& DerReport::operator+=(const DerReport& o) {
  miss += o.miss;
  false_alarm += o.false_alarm;
  confusion += o.confusion;
  scored_speech += o.scored_speech;
  return *this;
}

Timeline NoScoreRegions(std::span<const Turn> ref, const DerOptions& options) {
  if (options.collar < 0) throw UsageError("collar must be >= 0");
  std::vector<Interval> excluded;
  const auto ref_tl = SpeakerTimelines(ref);
  if (options.collar > 0) {
    for (const auto& [spk, tl] : ref_tl) {
      for (const Interval& iv : tl) {
        excluded.push_back({iv.start - options.collar, iv.start + options.collar});
        excluded.push_back({iv.end - options.collar, iv.end + options.collar});
      }
    }
  }
  if (!options.score_overlap) {
    std::vector<Event> events;
    for (const auto& [spk, tl] : ref_tl) {
      for (const Interval& iv : tl) {
        events.push_back({iv.start, 0, +1});
        events.push_back({iv.end, 0, -1});
      }
    }
    std::sort(events.begin(), events.end(),
              [](const Event& a, const Event& b) { return a.time < b.time; });
    int active = 0;
    for (std::size_t k = 0; k < events.size();) {
      const Millis t = events[k].time;
      while (k < events.size() && events[k].time == t) active += events[k++].delta;
      if (active >= 2 && k < events.size()) excluded.push_back({t, events[k].time});
    }
  }
  return Timeline(std::move(excluded));
}

DerReport ComputeDer(std::span<const Turn> ref, std::span<const Turn> hyp,
                     const DerOptions& options) {
  const auto ref_tl = SpeakerTimelines(ref);
  const auto hyp_tl = SpeakerTimelines(hyp);
  const SpeakerMapping mapping = OptimalMapping(ref, hyp);

  std::map<std::string, int> ref_index, hyp_index;
  for (const auto& [spk, tl] : ref_tl) ref_index.emplace(spk, static_cast<int>(ref_index.size()));
  const int n_ref = static_cast<int>(ref_index.size());
  for (const auto& [spk, tl] : hyp_tl)
    hyp_index.emplace(spk, n_ref + static_cast<int>(hyp_index.size()));
  const int n_all = n_ref + static_cast<int>(hyp_index.size());

  // mapped_to[ref index] = hyp index, or -1.
  std::vector<int> mapped_to(n_ref, -1);
  for (const auto& [r, h] : mapping.pairs) mapped_to[ref_index[r]] = hyp_index[h];

  std::vector<Event> events;
  Millis extent = 0;
  for (const auto& [spk, tl] : ref_tl) {
    for (const Interval& iv : tl) {
      events.push_back({iv.start, ref_index[spk], +1});
      events.push_back({iv.end, ref_index[spk], -1});
      extent = std::max(extent, iv.end);
    }
  }
  for (const auto& [spk, tl] : hyp_tl) {
    for (const Interval& iv : tl) {
      events.push_back({iv.start, hyp_index[spk], +1});
      events.push_back({iv.end, hyp_index[spk], -1});
      extent = std::max(extent, iv.end);
    }
  }
  const Timeline scored =
      Subtract(Timeline({{0, extent}}), NoScoreRegions(ref, options));
  for (const Interval& iv : scored) {
    events.push_back({iv.start, -1, 0});
    events.push_back({iv.end, -1, 0});
  }
  std::sort(events.begin(), events.end(),
            [](const Event& a, const Event& b) { return a.time < b.time; });

  DerReport report;
  std::vector<int> active(n_all, 0);
  for (std::size_t k = 0; k < events.size();) {
    const Millis t = events[k].time;
    while (k < events.size() && events[k].time == t) {
      if (events[k].index >= 0) active[events[k].index] += events[k].delta;
      ++k;
    }
    if (k == events.size()) break;
    const Millis width = events[k].time - t;
    if (width <= 0 || !scored.Contains(t)) continue;
    Millis n_r = 0, n_h = 0, n_correct = 0;
    for (int i = 0; i < n_ref; ++i) {
      if (active[i] <= 0) continue;
      ++n_r;
      if (mapped_to[i] >= 0 && active[mapped_to[i]] > 0) ++n_correct;
    }
    for (int i = n_ref; i < n_all; ++i)
      if (active[i] > 0) ++n_h;
    report.scored_speech += width * n_r;
    report.miss += width * std::max<Millis>(0, n_r - n_h);
    report.false_alarm += width * std::max<Millis>(0, n_h - n_r);
    report.confusion += width * (std::min(n_r, n_h) - n_correct);
  }
  return report;
}

std::optional<double> CderReport::cder() const {
  if (ref_utts <= 0) return std::nullopt;
  return static_cast<double>(miss_utts + fa_utts + conf_utts) / ref_utts;
}

CderReport& CderReport::operator+=(const CderReport& o) {
  miss_utts += o.miss_utts;
  fa_utts += o.fa_utts;
  conf_utts += o.conf_utts;
  ref_utts += o.ref_utts;
  return *this;
}

CderReport ComputeCder(std::span<const Turn> ref, std::span<const Turn> hyp, double rho) {
  if (!(rho > 0.0 && rho <= 1.0)) throw UsageError("CDER rho must lie in (0, 1]");
  const auto ref_tl = SpeakerTimelines(ref);
  const auto hyp_tl = SpeakerTimelines(hyp);
  const SpeakerMapping mapping = OptimalMapping(ref, hyp);
  const auto ref_to_hyp = mapping.RefToHyp();
  const auto hyp_to_ref = mapping.HypToRef();

  auto covers = [rho](const Timeline& tl, const Interval& utt) {
    const Millis covered = Intersect(tl, Timeline({utt})).TotalDuration();
    return static_cast<double>(covered) >= rho * static_cast<double>(utt.duration());
  };

  CderReport report;
  for (const Turn& t : ref) {
    ++report.ref_utts;
    const Interval utt{t.onset, t.end()};
    std::string mapped;
    if (auto it = ref_to_hyp.find(t.speaker); it != ref_to_hyp.end()) mapped = it->second;
    if (!mapped.empty() && covers(hyp_tl.at(mapped), utt)) continue;
    bool confused = false;
    for (const auto& [spk, tl] : hyp_tl) {
      if (spk != mapped && covers(tl, utt)) {
        confused = true;
        break;
      }
    }
    if (confused) {
      ++report.conf_utts;
    } else {
      ++report.miss_utts;
    }
  }
  for (const auto& [spk, tl] : hyp_tl) {
    const auto it = hyp_to_ref.find(spk);
    for (const Interval& utt : tl) {
      if (it == hyp_to_ref.end() || !covers(ref_tl.at(it->second), utt)) ++report.fa_utts;
    }
  }
  return report;
}

std::optional<double> VadReport::miss() const { return Ratio(missed, ref_speech); }
std::optional<double> VadReport::fa() const { return Ratio(false_alarm, total - ref_speech); }
std::optional<double> VadReport::acc() const {
  return Ratio(total - missed - false_alarm, total);
}

VadReport& VadReport::operator+=(const VadReport& o) {
  total += o.total;
  ref_speech += o.ref_speech;
  missed += o.missed;
  false_alarm += o.false_alarm;
  return *this;
}

VadReport ComputeVad(const Timeline& ref, const Timeline& hyp, const Interval& total) {
  const Timeline window({total});
  const Timeline r = Intersect(ref, window);
  const Timeline h = Intersect(hyp, window);
  VadReport report;
  report.total = std::max<Millis>(0, total.duration());
  report.ref_speech = r.TotalDuration();
  report.missed = Subtract(r, h).TotalDuration();
  report.false_alarm = Subtract(h, r).TotalDuration();
  return report;
}

std::vector<DetPoint> DetCurve(std::span<const TrialScore> trials) {
  std::vector<double> targets, nontargets;
  for (const TrialScore& t : trials)
    (t.label == TrialLabel::kTarget ? targets : nontargets).push_back(t.score);
  if (targets.empty() || nontargets.empty())
    throw UsageError("DET metrics need at least one target and one nontarget trial");
  std::sort(targets.begin(), targets.end());
  std::sort(nontargets.begin(), nontargets.end());
  std::set<double> thresholds(targets.begin(), targets.end());
  thresholds.insert(nontargets.begin(), nontargets.end());

  const double nt = static_cast<double>(targets.size());
  const double nn = static_cast<double>(nontargets.size());
  std::vector<DetPoint> curve;
  curve.reserve(thresholds.size() + 1);
  for (double th : thresholds) {
    const auto below = std::lower_bound(targets.begin(), targets.end(), th) - targets.begin();
    const auto at_or_above =
        nontargets.end() - std::lower_bound(nontargets.begin(), nontargets.end(), th);
    curve.push_back({th, static_cast<double>(below) / nt, static_cast<double>(at_or_above) / nn});
  }
  curve.push_back({std::numeric_limits<double>::infinity(), 1.0, 0.0});
  return curve;
}

double DetectionCost(const DetPoint& p, const DetOptions& o) {
  return o.c_miss * p.p_miss * o.p_target + o.c_fa * p.p_fa * (1.0 - o.p_target);
}

DetReport ComputeDetMetrics(std::span<const TrialScore> trials, const DetOptions& options) {
  if (!(options.p_target > 0.0 && options.p_target < 1.0))
    throw UsageError("p_target must lie in (0, 1)");
  if (options.c_fa < 0 || options.c_miss < 0) throw UsageError("costs must be >= 0");
  const std::vector<DetPoint> curve = DetCurve(trials);
  DetReport report;

  // P_miss rises and P_fa falls along the curve; the first point with
  // P_miss >= P_fa brackets the crossing together with its predecessor.
  std::size_t i = 0;
  while (curve[i].p_miss < curve[i].p_fa) ++i;
  if (i == 0) {
    report.raw_eer = curve[0].p_miss;
    report.threshold_at_eer = curve[0].threshold;
  } else {
    const DetPoint& a = curve[i - 1];
    const DetPoint& b = curve[i];
    const double d0 = a.p_miss - a.p_fa;
    const double d1 = b.p_miss - b.p_fa;
    const double lambda = d1 == d0 ? 0.0 : -d0 / (d1 - d0);
    report.raw_eer = a.p_miss + lambda * (b.p_miss - a.p_miss);
    report.threshold_at_eer = std::isinf(b.threshold)
                                  ? a.threshold
                                  : a.threshold + lambda * (b.threshold - a.threshold);
  }
  report.eer = std::min(report.raw_eer, 0.5);

  report.min_dcf = std::numeric_limits<double>::infinity();
  for (const DetPoint& p : curve) {
    const double cost = DetectionCost(p, options);
    if (cost < report.min_dcf) {
      report.min_dcf = cost;
      report.threshold_at_min_dcf = p.threshold;
    }
  }
  return report;
}

std::string FormatDerLine(const std::string& recording, const DerReport& r) {
  return recording + " DER " + FormatMillis(r.miss) + " " + FormatMillis(r.false_alarm) + " " +
         FormatMillis(r.confusion) + " " + FormatMillis(r.scored_speech) + " " +
         FormatOptional(r.der());
}

std::string FormatCderLine(const std::string& recording, const CderReport& r) {
  return recording + " CDER " + std::to_string(r.miss_utts) + " " + std::to_string(r.fa_utts) +
         " " + std::to_string(r.conf_utts) + " " + std::to_string(r.ref_utts) + " " +
         FormatOptional(r.cder());
}

std::string FormatVadLine(const std::string& recording, const VadReport& r) {
  return recording + " VAD " + FormatOptional(r.fa()) + " " + FormatOptional(r.miss()) + " " +
         FormatOptional(r.acc());
}

std::string FormatDetLine(const DetReport& r) {
  return "ALL EER " + FormatFixed(r.eer, 6) + " MINDCF " + FormatFixed(r.min_dcf, 6) +
         " THRESHOLD " + FormatFixed(r.threshold_at_eer, 6) + " RAW_EER " +
         FormatFixed(r.raw_eer, 6);
}

}  // namespace diarkit
