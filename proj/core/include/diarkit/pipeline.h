// diarkit/pipeline.h

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

#ifndef DIARKIT_PIPELINE_H_
#define DIARKIT_PIPELINE_H_

#include <atomic>
#include <cstddef>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "diarkit/clustering.h"
#include "diarkit/rttm_io.h"
#include "diarkit/scoring.h"
#include "diarkit/simulate.h"
#include "diarkit/timeline.h"

namespace diarkit {

// Runs fn(i) for i in [0, n) on up to `threads` workers. Callers write
// results into slot i, so output order never depends on scheduling. The
// first exception thrown by any task is rethrown after all workers join.
template <typename Fn>
void ParallelFor(std::size_t n, int threads, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(n, threads > 1 ? threads : 1);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

struct ClusterOptions {
  SpectralOptions spectral;
  // When set, embeddings are pooled onto a fresh window/shift grid over the
  // speech regions before clustering (see PoolEmbeddings).
  std::optional<Millis> window;
  std::optional<Millis> shift;
};

// Re-segments `regions` with Subsegment(window, shift). Each new sub-segment
// takes the duration-weighted mean of the records it fully contains, or, if
// it contains none, of the records it overlaps (weighted by overlap).
// Sub-segments touching no record are dropped.
std::vector<EmbeddingRecord> PoolEmbeddings(std::span<const EmbeddingRecord> records,
                                            const Timeline& regions, Millis window,
                                            Millis shift);

// Spectral clustering of one recording's sub-segment embeddings followed by
// LabelsToTurns. With `vad`, the output is clipped to those regions.
std::vector<Turn> ClusterRecording(std::span<const EmbeddingRecord> records,
                                   const Timeline* vad, const ClusterOptions& options);

// Every recording in `set`, one task per recording; output in recording order.
std::vector<Turn> ClusterEmbeddings(const EmbeddingSet& set,
                                    const std::map<std::string, Timeline>* vad,
                                    const ClusterOptions& options, int threads);

struct SweepOptions {
  SimConfig sim;
  std::vector<Millis> durations;  // shift = duration / 4
  SpectralOptions spectral;
  DerOptions der;
  double rho = 0.5;
  int threads = 1;
};

struct SweepRow {
  Millis duration = 0;
  DerReport der;
  CderReport cder;
};

// Cluster-and-score over the simulated corpus for each sub-segment duration.
std::vector<SweepRow> RunSweep(const SweepOptions& options);

std::string FormatSweepTable(const std::vector<SweepRow>& rows);

}  // namespace diarkit

#endif  // DIARKIT_PIPELINE_H_
