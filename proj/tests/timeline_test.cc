// tests/timeline_test.cc

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

#include "diarkit/timeline.h"

#include "diarkit/errors.h"
#include "doctest.h"
#include "oracles.h"

namespace diarkit {
namespace {

Turn T(const std::string& spk, Millis a, Millis b) { return {"r", "1", spk, a, b - a}; }

TEST_CASE("ToTimeline merges across speakers") {
  const std::vector<Turn> over{T("A", 0, 2000), T("B", 1000, 3000)};
  CHECK(ToTimeline(over).intervals() == std::vector<Interval>{{0, 3000}});
  const std::vector<Turn> touch{T("A", 0, 1000), T("A", 1000, 2000)};
  CHECK(ToTimeline(touch).intervals() == std::vector<Interval>{{0, 2000}});
  CHECK(ToTimeline(std::vector<Turn>{}).empty());
  std::vector<Turn> mixed{T("A", 0, 1)};
  mixed.push_back({"other", "1", "A", 5, 1});
  CHECK_THROWS_AS(ToTimeline(mixed), UsageError);
}

TEST_CASE("set operations") {
  CHECK(Intersect(Timeline({{0, 5}}), Timeline({{3, 8}})).intervals() ==
        std::vector<Interval>{{3, 5}});
  CHECK(Subtract(Timeline({{0, 5}}), Timeline({{1, 2}})).intervals() ==
        std::vector<Interval>{{0, 1}, {2, 5}});
  CHECK(Timeline({{0, 1000}, {2000, 4000}}).TotalDuration() == 3000);
  CHECK(CloseGaps(Timeline({{0, 10}, {15, 20}, {40, 50}}), 10).intervals() ==
        std::vector<Interval>{{0, 20}, {40, 50}});
}

TEST_CASE("set operations agree with rasters") {
  CounterRng rng(3);
  for (int iter = 0; iter < 300; ++iter) {
    auto a_turns = testing::RandomTurns(rng, "r", 1, 6, 200);
    auto b_turns = testing::RandomTurns(rng, "r", 1, 6, 200);
    const Timeline a = ToTimeline(a_turns), b = ToTimeline(b_turns);
    const auto ra = testing::RasterUnion(a_turns, 300), rb = testing::RasterUnion(b_turns, 300);
    auto check = [](const Timeline& t, auto pred) {
      for (Millis i = 0; i < 300; ++i) REQUIRE(t.Contains(i) == pred(i));
      for (std::size_t k = 1; k < t.size(); ++k)
        REQUIRE(t.intervals()[k - 1].end < t.intervals()[k].start);
    };
    check(Unite(a, b), [&](Millis i) { return ra[i] || rb[i]; });
    check(Intersect(a, b), [&](Millis i) { return ra[i] && rb[i]; });
    check(Subtract(a, b), [&](Millis i) { return ra[i] && !rb[i]; });
    CHECK(Unite(a, b).TotalDuration() + Intersect(a, b).TotalDuration() ==
          a.TotalDuration() + b.TotalDuration());
  }
}

TEST_CASE("Subsegment windows") {
  auto ivs = [](const std::vector<SubSegment>& s) {
    std::vector<Interval> out;
    for (const auto& x : s) out.push_back(x.interval);
    return out;
  };
  CHECK(ivs(Subsegment(Timeline({{0, 20000}}), 16000, 4000)) ==
        std::vector<Interval>{{0, 16000}, {4000, 20000}});
  CHECK(ivs(Subsegment(Timeline({{0, 5000}}), 16000, 4000)) == std::vector<Interval>{{0, 5000}});
  CHECK(ivs(Subsegment(Timeline({{0, 16000}}), 16000, 4000)) ==
        std::vector<Interval>{{0, 16000}});
  CHECK_THROWS_AS(Subsegment(Timeline({{0, 1}}), 0, 1), UsageError);
  CHECK_THROWS_AS(Subsegment(Timeline({{0, 1}}), 10, 11), UsageError);
}

TEST_CASE("Subsegment covers each region exactly") {
  CounterRng rng(5);
  for (int iter = 0; iter < 300; ++iter) {
    const Timeline regions = ToTimeline(testing::RandomTurns(rng, "r", 1, 5, 60000));
    const Millis window = 500 + static_cast<Millis>(rng.Below(4000));
    const Millis shift = 1 + static_cast<Millis>(rng.Below(window));
    const auto subs = Subsegment(regions, window, shift, "r");
    std::vector<Timeline> per(regions.size());
    for (const auto& s : subs) {
      const Interval& parent = regions.intervals()[s.parent_index];
      REQUIRE(s.interval.start >= parent.start);
      REQUIRE(s.interval.end <= parent.end);
      REQUIRE(s.interval.duration() == std::min(window, parent.duration()));
      per[s.parent_index] = Unite(per[s.parent_index], Timeline({s.interval}));
    }
    for (std::size_t k = 0; k < regions.size(); ++k)
      REQUIRE(per[k].intervals() == std::vector<Interval>{regions.intervals()[k]});
  }
}

TEST_CASE("LabelsToTurns") {
  const std::vector<SubSegment> two{{"r", {0, 16000}, 0}, {"r", {4000, 20000}, 0}};
  auto same = LabelsToTurns(two, std::vector<int>{0, 0});
  REQUIRE(same.size() == 1);
  CHECK(same[0].speaker == ClusterSpeakerName(0));
  CHECK(same[0].onset == 0);
  CHECK(same[0].end() == 20000);
  auto diff = LabelsToTurns(two, std::vector<int>{0, 1});
  REQUIRE(diff.size() == 2);
  CHECK(diff[0].onset == 0);
  CHECK(diff[0].end() == 10000);
  CHECK(diff[1].speaker == ClusterSpeakerName(1));
  CHECK(diff[1].onset == 10000);
  CHECK(diff[1].end() == 20000);
  const std::vector<SubSegment> one{{"r", {2000, 5000}, 0}};
  auto single = LabelsToTurns(one, std::vector<int>{0});
  REQUIRE(single.size() == 1);
  CHECK(single[0].onset == 2000);
  CHECK(single[0].end() == 5000);
}

TEST_CASE("LabelsToTurns keeps the speech and never overlaps itself") {
  CounterRng rng(9);
  for (int iter = 0; iter < 200; ++iter) {
    const Timeline regions = ToTimeline(testing::RandomTurns(rng, "r", 1, 4, 40000));
    const auto subs = Subsegment(regions, 1500 + rng.Below(3000), 250 + rng.Below(1000), "r");
    std::vector<int> labels;
    for (std::size_t i = 0; i < subs.size(); ++i) labels.push_back(rng.Below(3));
    const auto turns = LabelsToTurns(subs, labels);
    REQUIRE(ToTimeline(turns) == regions);
    Millis total = 0;
    for (const Turn& t : turns) total += t.duration;
    REQUIRE(total == regions.TotalDuration());
  }
}

}  // namespace
}  // namespace diarkit
