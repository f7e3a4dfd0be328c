// src/postprocess.cc

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

#include <algorithm>
#include <cmath>

#include "diarkit/errors.h"
#include "diarkit/timeline.h"

namespace diarkit {

void ValidateTrack(const ProbabilityTrack& track) {
  if (track.frame_shift <= 0) throw ValidationError("frame shift must be positive");
  if (track.probs.size() != track.speakers.size())
    throw ValidationError("probability rows do not match speaker count");
  const std::size_t frames = track.num_frames();
  for (const auto& row : track.probs) {
    if (row.size() != frames) throw ValidationError("ragged probability track");
    for (double p : row)
      if (!(p >= 0.0 && p <= 1.0))
        throw ValidationError("probability outside [0, 1] in " + track.recording_id);
  }
}

ProbabilityTrack MedianFilter(const ProbabilityTrack& track, int window) {
  if (window < 1 || window % 2 == 0)
    throw UsageError("median window must be odd and >= 1, got " + std::to_string(window));
  ProbabilityTrack out = track;
  if (window == 1) return out;
  const int half = window / 2;
  std::vector<double> buf(window);
  for (std::size_t s = 0; s < track.probs.size(); ++s) {
    const auto& row = track.probs[s];
    const int n = static_cast<int>(row.size());
    for (int f = 0; f < n; ++f) {
      for (int k = -half; k <= half; ++k) buf[k + half] = row[std::clamp(f + k, 0, n - 1)];
      std::nth_element(buf.begin(), buf.begin() + half, buf.end());
      out.probs[s][f] = buf[half];
    }
  }
  return out;
}

std::vector<FrameMask> Binarize(const ProbabilityTrack& track, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0))
    throw UsageError("binarization threshold must lie in (0, 1)");
  std::vector<FrameMask> masks;
  masks.reserve(track.probs.size());
  for (const auto& row : track.probs) {
    FrameMask m(row.size());
    for (std::size_t f = 0; f < row.size(); ++f) m[f] = row[f] >= threshold ? 1 : 0;
    masks.push_back(std::move(m));
  }
  return masks;
}

std::vector<Turn> MasksToTurns(std::span<const FrameMask> masks,
                               std::span<const std::string> speakers,
                               const std::string& recording_id, Millis frame_shift,
                               Millis min_duration) {
  if (masks.size() != speakers.size()) throw UsageError("one mask per speaker required");
  if (min_duration < 0) throw UsageError("min duration must be >= 0");
  if (frame_shift <= 0) throw UsageError("frame shift must be positive");
  std::vector<Turn> turns;
  for (std::size_t s = 0; s < masks.size(); ++s) {
    const FrameMask& m = masks[s];
    std::size_t f = 0;
    while (f < m.size()) {
      if (!m[f]) {
        ++f;
        continue;
      }
      const std::size_t first = f;
      while (f < m.size() && m[f]) ++f;
      const Millis onset = static_cast<Millis>(first) * frame_shift;
      const Millis duration = static_cast<Millis>(f - first) * frame_shift;
      if (duration < min_duration) continue;
      turns.push_back({recording_id, "1", speakers[s], onset, duration});
    }
  }
  SortTurns(&turns);
  return turns;
}

std::vector<Turn> Postprocess(const ProbabilityTrack& track, const PostprocessOptions& options) {
  ValidateTrack(track);
  const ProbabilityTrack smoothed = MedianFilter(track, options.median_window);
  const auto masks = Binarize(smoothed, options.threshold);
  return MasksToTurns(masks, track.speakers, track.recording_id, track.frame_shift,
                      options.min_duration);
}

ProbabilityTrack RasterizeTurns(std::span<const Turn> turns,
                                std::span<const std::string> speakers,
                                const std::string& recording_id, Millis frame_shift,
                                std::size_t num_frames) {
  if (frame_shift <= 0) throw UsageError("frame shift must be positive");
  ProbabilityTrack track;
  track.recording_id = recording_id;
  track.frame_shift = frame_shift;
  track.speakers.assign(speakers.begin(), speakers.end());
  for (const std::string& spk : speakers) {
    std::vector<Interval> ivs;
    for (const Turn& t : turns)
      if (t.speaker == spk && t.recording_id == recording_id) ivs.push_back({t.onset, t.end()});
    const Timeline active(std::move(ivs));
    std::vector<double> row(num_frames, 0.0);
    // Centre of frame f is (2f + 1) * shift / 2; compare doubled to stay integral.
    for (std::size_t f = 0; f < num_frames; ++f) {
      const Millis twice_center = (2 * static_cast<Millis>(f) + 1) * frame_shift;
      for (const Interval& iv : active) {
        if (twice_center >= 2 * iv.start && twice_center < 2 * iv.end) {
          row[f] = 1.0;
          break;
        }
      }
    }
    track.probs.push_back(std::move(row));
  }
  return track;
}

std::vector<ProbabilityTrack> ParseProbabilityTracks(std::string_view text,
                                                     const std::string& source) {
  std::vector<ProbabilityTrack> tracks;
  std::size_t lineno = 0;
  while (!text.empty()) {
    ++lineno;
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
    const auto f = SplitFields(line);
    if (f.empty()) continue;
    if (f[0] == "PROB") {
      long long n = 0;
      double shift = 0;
      if (f.size() != 4 || !ParseDouble(f[2], &shift) || !std::isfinite(shift) ||
          !ParseInt(f[3], &n) || n < 1)
        throw ParseError(source, lineno,
                         "expected 'PROB <recording> <frame_shift_s> <n_speakers>'");
      ProbabilityTrack t;
      t.recording_id = std::string(f[1]);
      t.frame_shift = SecondsToMillis(shift);
      if (t.frame_shift <= 0 || std::abs(shift * 1000.0 - t.frame_shift) > 1e-6)
        throw ValidationError(source + ":" + std::to_string(lineno) +
                              ": frame shift must be a positive whole number of ms");
      for (long long s = 0; s < n; ++s) t.speakers.push_back("spk" + std::to_string(s));
      t.probs.assign(n, {});
      tracks.push_back(std::move(t));
      continue;
    }
    if (tracks.empty()) throw ParseError(source, lineno, "frame row before 'PROB' header");
    ProbabilityTrack& t = tracks.back();
    if (f.size() != t.speakers.size())
      throw ParseError(source, lineno,
                       "expected " + std::to_string(t.speakers.size()) + " probabilities");
    for (std::size_t s = 0; s < f.size(); ++s) {
      double p = 0;
      if (!ParseDouble(f[s], &p) || !std::isfinite(p))
        throw ParseError(source, lineno, "bad probability '" + std::string(f[s]) + "'");
      if (p < 0.0 || p > 1.0)
        throw ValidationError(source + ":" + std::to_string(lineno) +
                              ": probability outside [0, 1]");
      t.probs[s].push_back(p);
    }
  }
  return tracks;
}

std::string WriteProbabilityTrack(const ProbabilityTrack& track) {
  std::string out = "PROB " + track.recording_id + " " + FormatMillis(track.frame_shift) + " " +
                    std::to_string(track.speakers.size()) + "\n";
  for (std::size_t f = 0; f < track.num_frames(); ++f) {
    for (std::size_t s = 0; s < track.probs.size(); ++s) {
      if (s > 0) out += ' ';
      out += FormatShortest(track.probs[s][f]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace diarkit
