// benchmarks/diarkit_bench.cc

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

#include <benchmark/benchmark.h>

#include "diarkit/assignment.h"
#include "diarkit/clustering.h"
#include "diarkit/random.h"
#include "diarkit/scoring.h"
#include "diarkit/simulate.h"

namespace diarkit {
namespace {

void BM_SpectralCluster(benchmark::State& state) {
  SimConfig cfg;
  const auto conv = GenerateConversation(cfg, 0);
  const Millis window = state.range(0);
  const auto set = GenerateEmbeddings(conv, conv.speech, cfg, window, window / 4);
  const auto sim = CosineSimilarity(std::span<const EmbeddingRecord>(set.records));
  for (auto _ : state) benchmark::DoNotOptimize(SpectralCluster(sim, SpectralOptions{}));
  state.counters["embeddings"] = static_cast<double>(set.records.size());
}
BENCHMARK(BM_SpectralCluster)->Arg(16000)->Arg(4000)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_MaxWeightAssignment(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  CounterRng rng(1);
  WeightMatrix w(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w(i, j) = static_cast<std::int64_t>(rng.Below(100000));
  for (auto _ : state) benchmark::DoNotOptimize(MaxWeightAssignment(w));
}
BENCHMARK(BM_MaxWeightAssignment)->Arg(4)->Arg(16)->Arg(64);

void BM_ComputeDer(benchmark::State& state) {
  SimConfig cfg;
  cfg.recording_length = static_cast<double>(state.range(0));
  cfg.overlap_probability = 0.2;
  const auto ref = GenerateConversation(cfg, 0).turns;
  const auto hyp = GenerateConversation(cfg, 1).turns;
  for (auto _ : state) benchmark::DoNotOptimize(ComputeDer(ref, hyp, DerOptions{}));
  state.counters["turns"] = static_cast<double>(ref.size() + hyp.size());
}
BENCHMARK(BM_ComputeDer)->Arg(120)->Arg(1800)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace diarkit

BENCHMARK_MAIN();
