// src/fusion.cc

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

#include "diarkit/fusion.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "diarkit/errors.h"
#include "diarkit/scoring.h"
#include "diarkit/timeline.h"

namespace diarkit {

namespace {

void ValidateRanks(const std::vector<RankedHypothesis>& hyps) {
  if (hyps.size() < 2) throw UsageError("fusion needs at least two hypotheses");
  if (hyps.size() > static_cast<std::size_t>(kMaxFusionSystems))
    throw UsageError("fusion supports at most " + std::to_string(kMaxFusionSystems) + " systems");
  std::vector<int> ranks;
  for (const auto& h : hyps) ranks.push_back(h.rank);
  std::sort(ranks.begin(), ranks.end());
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (i > 0 && ranks[i] == ranks[i - 1])
      throw UsageError("duplicate fusion rank " + std::to_string(ranks[i]));
    if (ranks[i] != static_cast<int>(i) + 1)
      throw UsageError("fusion ranks must be contiguous from 1");
  }
}

std::string CommonRecording(const std::vector<RankedHypothesis>& hyps) {
  std::string rec;
  for (const auto& h : hyps) {
    for (const Turn& t : h.turns) {
      if (rec.empty()) rec = t.recording_id;
      if (t.recording_id != rec)
        throw UsageError("fusion inputs span recordings '" + rec + "' and '" + t.recording_id +
                         "'");
    }
  }
  return rec;
}

}  // namespace

std::vector<RankedHypothesis> MapLabels(std::vector<RankedHypothesis> hypotheses) {
  ValidateRanks(hypotheses);
  CommonRecording(hypotheses);
  std::sort(hypotheses.begin(), hypotheses.end(),
            [](const RankedHypothesis& a, const RankedHypothesis& b) { return a.rank < b.rank; });
  const std::vector<Turn>& anchor = hypotheses.front().turns;
  std::set<std::string> taken;
  for (const Turn& t : anchor) taken.insert(t.speaker);

  for (std::size_t i = 1; i < hypotheses.size(); ++i) {
    RankedHypothesis& h = hypotheses[i];
    const SpeakerMapping m = OptimalMapping(anchor, h.turns);
    std::map<std::string, std::string> rename;
    for (const auto& [ref, hyp] : m.pairs) rename[hyp] = ref;
    for (const std::string& spk : m.unmapped_hyp) {
      std::string fresh = spk + "@r" + std::to_string(h.rank);
      for (int n = 2; taken.count(fresh); ++n)
        fresh = spk + "@r" + std::to_string(h.rank) + "." + std::to_string(n);
      taken.insert(fresh);
      rename[spk] = fresh;
    }
    for (Turn& t : h.turns) t.speaker = rename.at(t.speaker);
    SortTurns(&h.turns);
  }
  return hypotheses;
}

std::vector<Turn> Vote(const std::vector<RankedHypothesis>& mapped) {
  ValidateRanks(mapped);
  const std::string recording = CommonRecording(mapped);

  // Exact weights: W_r = L / r with L = lcm(1..R), so sums stay integral.
  std::int64_t lcm = 1;
  for (const auto& h : mapped) lcm = std::lcm(lcm, static_cast<std::int64_t>(h.rank));
  std::int64_t total_weight = 0;
  for (const auto& h : mapped) total_weight += lcm / h.rank;

  std::vector<Millis> cuts;
  struct SystemActivity {
    std::int64_t weight;
    std::map<std::string, Timeline> speakers;
  };
  std::vector<SystemActivity> systems;
  for (const auto& h : mapped) {
    SystemActivity sys{lcm / h.rank, {}};
    std::map<std::string, std::vector<Interval>> raw;
    for (const Turn& t : h.turns) {
      raw[t.speaker].push_back({t.onset, t.end()});
      cuts.push_back(t.onset);
      cuts.push_back(t.end());
    }
    for (auto& [spk, ivs] : raw) sys.speakers.emplace(spk, Timeline(std::move(ivs)));
    systems.push_back(std::move(sys));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::map<std::string, std::vector<Interval>> output;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const Millis lo = cuts[c];
    const Millis hi = cuts[c + 1];
    std::map<std::string, std::int64_t> accrued;
    std::int64_t weighted_count = 0;
    for (const SystemActivity& sys : systems) {
      for (const auto& [spk, tl] : sys.speakers) {
        if (!tl.Contains(lo)) continue;
        accrued[spk] += sys.weight;
        weighted_count += sys.weight;
      }
    }
    // round(weighted_count / total_weight), half up, in integers.
    const std::int64_t m = (2 * weighted_count + total_weight) / (2 * total_weight);
    if (m <= 0) continue;
    std::vector<std::pair<std::string, std::int64_t>> ranked(accrued.begin(), accrued.end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    for (std::int64_t k = 0; k < m && k < static_cast<std::int64_t>(ranked.size()); ++k)
      output[ranked[k].first].push_back({lo, hi});
  }

  std::vector<Turn> turns;
  for (auto& [spk, ivs] : output)
    for (const Interval& iv : Timeline(std::move(ivs)))
      turns.push_back({recording, "1", spk, iv.start, iv.duration()});
  SortTurns(&turns);
  return turns;
}

std::vector<Turn> Fuse(std::vector<RankedHypothesis> hypotheses) {
  return Vote(MapLabels(std::move(hypotheses)));
}

}  // namespace diarkit
