// tests/pipeline_test.cc

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
#include <set>

#include "diarkit/errors.h"
#include "doctest.h"

namespace diarkit {
namespace {

TEST_CASE("simulated recordings are recovered") {
  SimConfig cfg;
  ClusterOptions opts;
  DerReport der;
  CderReport cder;
  for (int i = 0; i < 20; ++i) {
    const auto conv = GenerateConversation(cfg, i);
    const auto set = GenerateEmbeddings(conv, conv.speech, cfg, 1500, 375);
    const auto hyp = ClusterRecording(set.records, &conv.speech, opts);
    der += ComputeDer(conv.turns, hyp, DerOptions{});
    cder += ComputeCder(conv.turns, hyp);
  }
  CHECK(*der.der() < 0.05);
  CHECK(*cder.cder() < 0.10);
}

TEST_CASE("pooling onto a coarser grid") {
  std::vector<EmbeddingRecord> rows;
  for (int i = 0; i < 8; ++i) rows.push_back({"r", i * 1000, i * 1000 + 1000, {1.0 * i, 1.0}});
  const auto pooled = PoolEmbeddings(rows, Timeline({{0, 8000}}), 4000, 4000);
  REQUIRE(pooled.size() == 2);
  CHECK(pooled[0].start == 0);
  CHECK(pooled[0].end == 4000);
  CHECK(pooled[0].vector[0] == doctest::Approx(1.5));
  CHECK(pooled[1].vector[0] == doctest::Approx(5.5));
}

TEST_CASE("oracle speaker count caps the output") {
  SimConfig cfg;
  cfg.n_speakers = 3;
  ClusterOptions opts;
  opts.spectral.oracle_k = 2;
  const auto conv = GenerateConversation(cfg, 0);
  const auto set = GenerateEmbeddings(conv, conv.speech, cfg, 1500, 375);
  std::set<std::string> speakers;
  for (const Turn& t : ClusterRecording(set.records, nullptr, opts)) speakers.insert(t.speaker);
  CHECK(speakers.size() <= 2);
}

TEST_CASE("cluster output does not depend on the thread count") {
  SimConfig cfg;
  cfg.n_recordings = 6;
  EmbeddingSet set;
  set.dim = cfg.embedding_dim;
  for (int i = 0; i < cfg.n_recordings; ++i) {
    const auto conv = GenerateConversation(cfg, i);
    const auto part = GenerateEmbeddings(conv, conv.speech, cfg, 3000, 750);
    set.records.insert(set.records.end(), part.records.begin(), part.records.end());
  }
  const ClusterOptions opts;
  CHECK(ClusterEmbeddings(set, nullptr, opts, 1) == ClusterEmbeddings(set, nullptr, opts, 4));
}

TEST_CASE("ParallelFor visits every index and rethrows") {
  std::vector<int> hits(100, 0);
  ParallelFor(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  CHECK(std::count(hits.begin(), hits.end(), 1) == 100);
  CHECK_THROWS_AS(ParallelFor(10, 3,
                              [](std::size_t i) {
                                if (i == 7) throw ComputationError("boom");
                              }),
                  ComputationError);
}

TEST_CASE("sweep needs two durations") {
  SweepOptions opts;
  opts.durations = {1000};
  CHECK_THROWS_AS(RunSweep(opts), UsageError);
}

TEST_CASE("sweep is reproducible") {
  SweepOptions opts;
  opts.sim.n_recordings = 3;
  opts.sim.recording_length = 40;
  opts.sim.duration_noise = 0.45;
  opts.sim.vad_min_silence = 0.3;
  opts.durations = {1000, 4000};
  const auto a = FormatSweepTable(RunSweep(opts));
  opts.threads = 3;
  CHECK(FormatSweepTable(RunSweep(opts)) == a);
}

}  // namespace
}  // namespace diarkit
