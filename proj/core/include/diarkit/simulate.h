// diarkit/simulate.h

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

#ifndef DIARKIT_SIMULATE_H_
#define DIARKIT_SIMULATE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "diarkit/postprocess.h"
#include "diarkit/rttm_io.h"
#include "diarkit/timeline.h"

namespace diarkit {

// Synthetic conversation corpus parameters. Durations are in seconds.
struct SimConfig {
  std::uint64_t seed = 42;
  int n_recordings = 20;
  int n_speakers = 2;
  int embedding_dim = 32;
  double mean_utterance = 2.5;
  double mean_pause = 0.6;
  double overlap_probability = 0.0;
  double recording_length = 120.0;
  double noise_sigma = 0.05;
  // Extra embedding noise for short sub-segments: the per-component standard
  // deviation is sqrt(noise_sigma^2 + duration_noise^2 / seconds).
  double duration_noise = 0.0;
  // Simulated VAD regions bridge pauses shorter than this.
  double vad_min_silence = 0.0;
};

// Throws ConfigError when a field is out of range.
void ValidateSimConfig(const SimConfig& cfg);

inline constexpr double kMinUtterance = 0.3;
inline constexpr double kMaxUtterance = 10.0;
inline constexpr double kMaxPrototypeCosine = 0.3;
inline constexpr int kMaxPrototypeAttempts = 10000;

struct Conversation {
  int index = 0;
  std::string recording_id;
  std::vector<std::string> speakers;
  std::vector<Turn> turns;  // reference, canonical order
  Timeline speech;          // union of the reference turns
};

// "sim0007" for index 7.
std::string SimRecordingId(int index);

// Alternating-turn conversation. Utterance lengths are exponential
// (mean_utterance, clipped to [0.3, 10] s); pauses are exponential
// (mean_pause). With overlap_probability the next turn instead starts before
// the previous one ends, by at most half of the shorter turn. Generation
// stops before the first turn that would end past recording_length. The
// result depends only on (cfg, index).
Conversation GenerateConversation(const SimConfig& cfg, int index);

// Speech regions a VAD would report: the reference speech with pauses shorter
// than cfg.vad_min_silence bridged.
Timeline SimulatedVad(const Conversation& conv, const SimConfig& cfg);

// Unit vectors, pairwise cosine <= 0.3, one per speaker of recording `index`.
std::vector<std::vector<double>> SpeakerPrototypes(const SimConfig& cfg, int index);

// Embeddings for the window/shift sub-segments of `regions`: the
// overlap-weighted mean of the active speakers' prototypes plus Gaussian
// noise, unit-normalized. A sub-segment with no active speaker uses the mean
// of all prototypes.
EmbeddingSet GenerateEmbeddings(const Conversation& conv, const Timeline& regions,
                                const SimConfig& cfg, Millis window, Millis shift);

// Rasterized reference activity; every frame value v is replaced by
// |v - |n| * noise| with n standard normal, clamped to [0, 1].
ProbabilityTrack GenerateProbabilityTrack(const Conversation& conv, const SimConfig& cfg,
                                          Millis frame_shift, double noise);

}  // namespace diarkit

#endif  // DIARKIT_SIMULATE_H_
