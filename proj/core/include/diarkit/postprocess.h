// diarkit/postprocess.h

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

#ifndef DIARKIT_POSTPROCESS_H_
#define DIARKIT_POSTPROCESS_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "diarkit/rttm_io.h"
#include "diarkit/time.h"

namespace diarkit {

// Per-speaker frame-level speech probabilities for one recording.
struct ProbabilityTrack {
  std::string recording_id;
  Millis frame_shift = 10;
  std::vector<std::string> speakers;
  std::vector<std::vector<double>> probs;  // [speaker][frame]

  std::size_t num_frames() const { return probs.empty() ? 0 : probs.front().size(); }
};

using FrameMask = std::vector<std::uint8_t>;

// Throws ValidationError on ragged rows, values outside [0, 1] or a
// non-positive frame shift.
void ValidateTrack(const ProbabilityTrack& track);

// Running median per speaker with replicate padding. `window` must be odd.
ProbabilityTrack MedianFilter(const ProbabilityTrack& track, int window);

// mask[f] = prob[f] >= threshold, threshold in (0, 1).
std::vector<FrameMask> Binarize(const ProbabilityTrack& track, double threshold);

// Maximal runs of set frames become turns [first * shift, (last + 1) * shift).
// Turns strictly shorter than min_duration are dropped.
std::vector<Turn> MasksToTurns(std::span<const FrameMask> masks,
                               std::span<const std::string> speakers,
                               const std::string& recording_id, Millis frame_shift,
                               Millis min_duration);

struct PostprocessOptions {
  int median_window = 5;
  double threshold = 0.9;
  Millis min_duration = 100;
};

// MedianFilter -> Binarize -> MasksToTurns.
std::vector<Turn> Postprocess(const ProbabilityTrack& track, const PostprocessOptions& options);

// 1.0 on frames whose centre lies inside one of the speaker's turns.
ProbabilityTrack RasterizeTurns(std::span<const Turn> turns,
                                std::span<const std::string> speakers,
                                const std::string& recording_id, Millis frame_shift,
                                std::size_t num_frames);

// "PROB <recording> <frame_shift_s> <n_speakers>" followed by one line of
// n_speakers values per frame. Speakers are named spk0..spk{n-1}. A file may
// hold several tracks back to back.
std::vector<ProbabilityTrack> ParseProbabilityTracks(std::string_view text,
                                                     const std::string& source = "");
std::string WriteProbabilityTrack(const ProbabilityTrack& track);

}  // namespace diarkit

#endif  // DIARKIT_POSTPROCESS_H_
