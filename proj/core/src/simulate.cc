// src/simulate.cc

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

#include "diarkit/simulate.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "diarkit/errors.h"
#include "diarkit/random.h"

namespace diarkit {

namespace {

// Stream ids for CounterRng(seed, recording index, stream).
constexpr std::uint64_t kTurnStream = 1;
constexpr std::uint64_t kPrototypeStream = 2;
constexpr std::uint64_t kEmbeddingNoiseStream = 3;
constexpr std::uint64_t kProbNoiseStream = 4;

void Normalize(std::vector<double>* v) {
  double norm = 0;
  for (double x : *v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm > 0)
    for (double& x : *v) x /= norm;
}

double Dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

void ValidateSimConfig(const SimConfig& cfg) {
  auto fail = [](const std::string& what) { throw ConfigError("simulation: " + what); };
  if (cfg.n_recordings < 1) fail("n_recordings must be >= 1");
  if (cfg.n_speakers < 1) fail("n_speakers must be >= 1");
  if (cfg.embedding_dim < 1) fail("embedding_dim must be >= 1");
  if (!(cfg.mean_utterance > 0)) fail("mean_utterance must be positive");
  if (!(cfg.mean_pause > 0)) fail("mean_pause must be positive");
  if (!(cfg.overlap_probability >= 0 && cfg.overlap_probability < 1))
    fail("overlap_probability must lie in [0, 1)");
  if (!(cfg.recording_length > 0)) fail("recording_length must be positive");
  if (!(cfg.noise_sigma >= 0)) fail("noise_sigma must be >= 0");
  if (!(cfg.duration_noise >= 0)) fail("duration_noise must be >= 0");
  if (!(cfg.vad_min_silence >= 0)) fail("vad_min_silence must be >= 0");
}

std::string SimRecordingId(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "sim%04d", index);
  return buf;
}

Conversation GenerateConversation(const SimConfig& cfg, int index) {
  ValidateSimConfig(cfg);
  Conversation conv;
  conv.index = index;
  conv.recording_id = SimRecordingId(index);
  for (int s = 0; s < cfg.n_speakers; ++s) conv.speakers.push_back("spk" + std::to_string(s));

  CounterRng rng(cfg.seed, static_cast<std::uint64_t>(index), kTurnStream);
  const Millis length = SecondsToMillis(cfg.recording_length);
  Millis prev_end = 0;
  Millis prev_duration = 0;
  int speaker = 0;
  for (bool first = true;; first = false) {
    // Four draws per turn, always, so the stream layout is fixed.
    const double raw_duration = rng.Exponential(cfg.mean_utterance);
    const double pause = rng.Exponential(cfg.mean_pause);
    const double overlap_draw = rng.Uniform();
    const double overlap_fraction = rng.Uniform();

    const Millis duration =
        SecondsToMillis(std::clamp(raw_duration, kMinUtterance, kMaxUtterance));
    Millis onset;
    if (!first && cfg.n_speakers > 1 && overlap_draw < cfg.overlap_probability) {
      const Millis shorter = std::min(prev_duration, duration);
      const auto overlap = static_cast<Millis>(std::floor(overlap_fraction * 0.5 * shorter));
      onset = prev_end - overlap;
    } else {
      onset = prev_end + SecondsToMillis(pause);
    }
    if (onset + duration > length) break;
    conv.turns.push_back({conv.recording_id, "1", conv.speakers[speaker], onset, duration});
    prev_end = onset + duration;
    prev_duration = duration;
    speaker = (speaker + 1) % cfg.n_speakers;
  }
  SortTurns(&conv.turns);
  conv.speech = conv.turns.empty() ? Timeline() : ToTimeline(conv.turns);
  return conv;
}

Timeline SimulatedVad(const Conversation& conv, const SimConfig& cfg) {
  return CloseGaps(conv.speech, SecondsToMillis(cfg.vad_min_silence));
}

std::vector<std::vector<double>> SpeakerPrototypes(const SimConfig& cfg, int index) {
  ValidateSimConfig(cfg);
  CounterRng rng(cfg.seed, static_cast<std::uint64_t>(index), kPrototypeStream);
  std::vector<std::vector<double>> protos;
  int attempts = 0;
  while (static_cast<int>(protos.size()) < cfg.n_speakers) {
    if (++attempts > kMaxPrototypeAttempts)
      throw ConfigError("could not draw " + std::to_string(cfg.n_speakers) +
                        " prototypes with pairwise cosine <= 0.3 in dimension " +
                        std::to_string(cfg.embedding_dim));
    std::vector<double> v(cfg.embedding_dim);
    for (double& x : v) x = rng.Normal();
    Normalize(&v);
    const bool ok = std::all_of(protos.begin(), protos.end(), [&](const auto& p) {
      return Dot(p, v) <= kMaxPrototypeCosine;
    });
    if (ok) protos.push_back(std::move(v));
  }
  return protos;
}

EmbeddingSet GenerateEmbeddings(const Conversation& conv, const Timeline& regions,
                                const SimConfig& cfg, Millis window, Millis shift) {
  const auto protos = SpeakerPrototypes(cfg, conv.index);
  const auto subsegments = Subsegment(regions, window, shift, conv.recording_id);

  std::vector<Timeline> activity;
  for (const std::string& spk : conv.speakers) {
    std::vector<Interval> ivs;
    for (const Turn& t : conv.turns)
      if (t.speaker == spk) ivs.push_back({t.onset, t.end()});
    activity.emplace_back(std::move(ivs));
  }

  const std::uint64_t stream = Mix64(kEmbeddingNoiseStream ^ Mix64(window)) ^ Mix64(~shift);
  CounterRng rng(cfg.seed, static_cast<std::uint64_t>(conv.index), stream);
  EmbeddingSet set;
  set.dim = cfg.embedding_dim;
  for (const SubSegment& seg : subsegments) {
    std::vector<double> v(cfg.embedding_dim, 0.0);
    Millis weight_total = 0;
    for (std::size_t s = 0; s < protos.size(); ++s) {
      const Millis w = Intersect(activity[s], Timeline({seg.interval})).TotalDuration();
      weight_total += w;
      for (int d = 0; d < cfg.embedding_dim; ++d) v[d] += static_cast<double>(w) * protos[s][d];
    }
    if (weight_total > 0) {
      for (double& x : v) x /= static_cast<double>(weight_total);
    } else {
      for (const auto& p : protos)
        for (int d = 0; d < cfg.embedding_dim; ++d) v[d] += p[d] / protos.size();
    }
    const double seconds = MillisToSeconds(seg.interval.duration());
    const double sigma = std::sqrt(cfg.noise_sigma * cfg.noise_sigma +
                                   cfg.duration_noise * cfg.duration_noise / seconds);
    for (double& x : v) {
      const double n = rng.Normal();  // drawn even when sigma == 0
      x += sigma * n;
    }
    Normalize(&v);
    set.records.push_back({conv.recording_id, seg.interval.start, seg.interval.end, std::move(v)});
  }
  return set;
}

ProbabilityTrack GenerateProbabilityTrack(const Conversation& conv, const SimConfig& cfg,
                                          Millis frame_shift, double noise) {
  const Millis length = SecondsToMillis(cfg.recording_length);
  const auto frames = static_cast<std::size_t>(length / frame_shift);
  ProbabilityTrack track =
      RasterizeTurns(conv.turns, conv.speakers, conv.recording_id, frame_shift, frames);
  if (noise > 0) {
    CounterRng rng(cfg.seed, static_cast<std::uint64_t>(conv.index), kProbNoiseStream);
    for (auto& row : track.probs)
      for (double& p : row) p = std::clamp(std::abs(p - std::abs(rng.Normal()) * noise), 0.0, 1.0);
  }
  return track;
}

}  // namespace diarkit
