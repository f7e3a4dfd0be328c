// tests/postprocess_test.cc

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

#include "diarkit/postprocess.h"

#include <tuple>

#include "diarkit/errors.h"
#include "doctest.h"
#include "oracles.h"

namespace diarkit {
namespace {

ProbabilityTrack OneRow(std::vector<double> row) {
  ProbabilityTrack t;
  t.recording_id = "r";
  t.speakers = {"spk0"};
  t.probs = {std::move(row)};
  return t;
}

std::vector<double> BruteMedian(const std::vector<double>& x, int w) {
  const int n = static_cast<int>(x.size()), h = w / 2;
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    std::vector<double> win;
    for (int j = i - h; j <= i + h; ++j) win.push_back(x[std::clamp(j, 0, n - 1)]);
    std::sort(win.begin(), win.end());
    out.push_back(win[h]);
  }
  return out;
}

TEST_CASE("median filter") {
  CHECK(MedianFilter(OneRow({0, 1, 0, 1, 1}), 3).probs[0] == std::vector<double>{0, 0, 1, 1, 1});
  CHECK(MedianFilter(OneRow({0.2, 0.9, 0.1}), 1).probs[0] == std::vector<double>{0.2, 0.9, 0.1});
  CHECK(MedianFilter(OneRow({0.4, 0.4, 0.4, 0.4}), 7).probs[0] ==
        std::vector<double>{0.4, 0.4, 0.4, 0.4});
  CHECK_THROWS_AS(MedianFilter(OneRow({0, 1}), 4), UsageError);
}

TEST_CASE("median filter matches a sort-per-window reference") {
  CounterRng rng(31);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<double> row(1 + rng.Below(40));
    for (double& v : row) v = rng.Uniform();
    const int w = 1 + 2 * static_cast<int>(rng.Below(6));
    REQUIRE(MedianFilter(OneRow(row), w).probs[0] == BruteMedian(row, w));
  }
}

TEST_CASE("binarize") {
  CHECK(Binarize(OneRow({0.95, 0.5}), 0.9)[0] == FrameMask{1, 0});
  CHECK(Binarize(OneRow({0.9}), 0.9)[0] == FrameMask{1});
  CHECK(Binarize(OneRow({0, 0, 0}), 0.5)[0] == FrameMask{0, 0, 0});
  CHECK_THROWS_AS(Binarize(OneRow({0.5}), 1.0), UsageError);
}

TEST_CASE("pruning short runs") {
  const std::vector<std::string> spk{"a"};
  auto run = [&](int frames) {
    FrameMask m(frames + 4, 0);
    std::fill(m.begin() + 2, m.begin() + 2 + frames, 1);
    return MasksToTurns(std::vector<FrameMask>{m}, spk, "r", 10, 100);
  };
  CHECK(run(9).empty());
  REQUIRE(run(10).size() == 1);
  CHECK(run(10)[0].onset == 20);
  CHECK(run(10)[0].duration == 100);
  const FrameMask two{1, 1, 0, 1, 1};
  CHECK(MasksToTurns(std::vector<FrameMask>{two}, spk, "r", 10, 0).size() == 2);
}

TEST_CASE("probability track format") {
  const auto tracks = ParseProbabilityTracks(
      "PROB r1 0.01 2\n0.1 0.9\n0.2 0.8\nPROB r2 0.02 1\n0.5\n");
  REQUIRE(tracks.size() == 2);
  CHECK(tracks[0].speakers == std::vector<std::string>{"spk0", "spk1"});
  CHECK(tracks[0].probs[1] == std::vector<double>{0.9, 0.8});
  CHECK(tracks[1].frame_shift == 20);
  CHECK(ParseProbabilityTracks(WriteProbabilityTrack(tracks[0]))[0].probs == tracks[0].probs);
  CHECK_THROWS_AS(ParseProbabilityTracks("PROB r 0.01 1\n1.5\n"), ValidationError);
  CHECK_THROWS_AS(ParseProbabilityTracks("PROB r 0.01 2\n0.5\n"), ParseError);
}

void SortBySpeaker(std::vector<Turn>* turns) {
  std::sort(turns->begin(), turns->end(), [](const Turn& a, const Turn& b) {
    return std::tie(a.speaker, a.onset) < std::tie(b.speaker, b.onset);
  });
}

TEST_CASE("rasterize then postprocess recovers the turns") {
  CounterRng rng(37);
  const std::vector<std::string> spk{"a", "b"};
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<Turn> ref;
    for (const auto& s : spk) {
      Millis t = 10 * static_cast<Millis>(rng.Below(50));
      while (true) {
        const Millis d = 200 + 10 * static_cast<Millis>(rng.Below(300));
        if (t + d > 30000) break;
        ref.push_back({"r", "1", s, t, d});
        t += d + 60 + 10 * static_cast<Millis>(rng.Below(200));
      }
    }
    SortBySpeaker(&ref);
    const auto track = RasterizeTurns(ref, spk, "r", 10, 3100);
    auto got = Postprocess(track, PostprocessOptions{});
    REQUIRE(got.size() == ref.size());
    SortBySpeaker(&got);
    for (std::size_t i = 0; i < ref.size(); ++i) {
      REQUIRE(got[i].speaker == ref[i].speaker);
      REQUIRE(std::abs(got[i].onset - ref[i].onset) <= 10);
      REQUIRE(std::abs(got[i].end() - ref[i].end()) <= 10);
    }
  }
}

}  // namespace
}  // namespace diarkit
