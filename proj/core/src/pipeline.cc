// src/pipeline.cc

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

#include "diarkit/pipeline.h"

#include <algorithm>
#include <cstdio>

#include "diarkit/errors.h"

namespace diarkit {

std::vector<EmbeddingRecord> PoolEmbeddings(std::span<const EmbeddingRecord> records,
                                            const Timeline& regions, Millis window,
                                            Millis shift) {
  std::vector<EmbeddingRecord> out;
  if (records.empty()) return out;
  const std::size_t dim = records.front().vector.size();
  const std::string& rec = records.front().recording_id;
  for (const SubSegment& seg : Subsegment(regions, window, shift, rec)) {
    std::vector<double> contained(dim, 0.0), overlapping(dim, 0.0);
    Millis w_contained = 0, w_overlap = 0;
    for (const EmbeddingRecord& r : records) {
      const Millis lo = std::max(r.start, seg.interval.start);
      const Millis hi = std::min(r.end, seg.interval.end);
      if (hi <= lo) continue;
      const Millis overlap = hi - lo;
      for (std::size_t d = 0; d < dim; ++d) overlapping[d] += overlap * r.vector[d];
      w_overlap += overlap;
      if (r.start >= seg.interval.start && r.end <= seg.interval.end) {
        const Millis len = r.end - r.start;
        for (std::size_t d = 0; d < dim; ++d) contained[d] += len * r.vector[d];
        w_contained += len;
      }
    }
    if (w_overlap == 0) continue;
    std::vector<double>& acc = w_contained > 0 ? contained : overlapping;
    const double w = static_cast<double>(w_contained > 0 ? w_contained : w_overlap);
    for (double& x : acc) x /= w;
    out.push_back({rec, seg.interval.start, seg.interval.end, std::move(acc)});
  }
  return out;
}

std::vector<Turn> ClusterRecording(std::span<const EmbeddingRecord> records,
                                   const Timeline* vad, const ClusterOptions& options) {
  if (records.empty()) return {};
  std::vector<EmbeddingRecord> pooled;
  if (options.window || options.shift) {
    if (!options.window || !options.shift)
      throw UsageError("window and shift must be given together");
    std::vector<Interval> extents;
    for (const EmbeddingRecord& r : records) extents.push_back({r.start, r.end});
    const Timeline regions = vad ? *vad : Timeline(std::move(extents));
    pooled = PoolEmbeddings(records, regions, *options.window, *options.shift);
    records = pooled;
    if (records.empty()) return {};
  }

  std::vector<SubSegment> segments;
  segments.reserve(records.size());
  for (const EmbeddingRecord& r : records)
    segments.push_back({r.recording_id, {r.start, r.end}, 0});
  const SimilarityMatrix s = CosineSimilarity(records);
  const SpectralResult result = SpectralCluster(s, options.spectral);
  std::vector<Turn> turns = LabelsToTurns(segments, result.clusters.labels);
  if (!vad) return turns;

  std::vector<Turn> clipped;
  for (const Turn& t : turns) {
    for (const Interval& iv : Intersect(Timeline({{t.onset, t.end()}}), *vad))
      clipped.push_back({t.recording_id, t.channel, t.speaker, iv.start, iv.duration()});
  }
  SortTurns(&clipped);
  return clipped;
}

std::vector<Turn> ClusterEmbeddings(const EmbeddingSet& set,
                                    const std::map<std::string, Timeline>* vad,
                                    const ClusterOptions& options, int threads) {
  const auto by_recording = set.ByRecording();
  std::vector<const std::vector<EmbeddingRecord>*> jobs;
  for (const auto& [rec, records] : by_recording) jobs.push_back(&records);
  std::vector<std::vector<Turn>> results(jobs.size());
  ParallelFor(jobs.size(), threads, [&](std::size_t i) {
    const std::string& rec = jobs[i]->front().recording_id;
    const Timeline* regions = nullptr;
    if (vad) {
      auto it = vad->find(rec);
      static const Timeline kEmpty;
      regions = it == vad->end() ? &kEmpty : &it->second;
    }
    results[i] = ClusterRecording(*jobs[i], regions, options);
  });
  std::vector<Turn> all;
  for (auto& r : results) all.insert(all.end(), r.begin(), r.end());
  SortTurns(&all);
  return all;
}

std::vector<SweepRow> RunSweep(const SweepOptions& options) {
  if (options.durations.size() < 2) throw UsageError("sweep needs at least two durations");
  for (Millis d : options.durations)
    if (d < 4) throw UsageError("sweep durations must be at least 0.004 s");
  ValidateSimConfig(options.sim);

  const int n = options.sim.n_recordings;
  std::vector<Conversation> corpus(n);
  ParallelFor(n, options.threads,
              [&](std::size_t i) { corpus[i] = GenerateConversation(options.sim, int(i)); });

  std::vector<SweepRow> rows;
  for (Millis duration : options.durations) {
    ClusterOptions cluster;
    cluster.spectral = options.spectral;
    std::vector<DerReport> der(n);
    std::vector<CderReport> cder(n);
    ParallelFor(n, options.threads, [&](std::size_t i) {
      const Conversation& conv = corpus[i];
      const Timeline vad = SimulatedVad(conv, options.sim);
      const EmbeddingSet emb =
          GenerateEmbeddings(conv, vad, options.sim, duration, duration / 4);
      const std::vector<Turn> hyp = ClusterRecording(emb.records, nullptr, cluster);
      der[i] = ComputeDer(conv.turns, hyp, options.der);
      cder[i] = ComputeCder(conv.turns, hyp, options.rho);
    });
    SweepRow row;
    row.duration = duration;
    for (int i = 0; i < n; ++i) {  // fixed-order fold
      row.der += der[i];
      row.cder += cder[i];
    }
    rows.push_back(row);
  }
  return rows;
}

std::string FormatSweepTable(const std::vector<SweepRow>& rows) {
  std::string out = "duration_s        DER       CDER\n";
  for (const SweepRow& r : rows) {
    char buf[96];
    const auto der = r.der.der();
    const auto cder = r.cder.cder();
    std::snprintf(buf, sizeof(buf), "%10s %10s %10s\n", FormatMillis(r.duration).c_str(),
                  der ? FormatFixed(*der, 4).c_str() : "undefined",
                  cder ? FormatFixed(*cder, 4).c_str() : "undefined");
    out += buf;
  }
  return out;
}

}  // namespace diarkit
