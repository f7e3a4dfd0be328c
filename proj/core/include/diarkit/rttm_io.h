// diarkit/rttm_io.h

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

#ifndef DIARKIT_RTTM_IO_H_
#define DIARKIT_RTTM_IO_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "diarkit/time.h"

namespace diarkit {

// One speaker-attributed utterance (an RTTM "SPEAKER" row).
struct Turn {
  std::string recording_id;
  std::string channel = "1";
  std::string speaker;
  Millis onset = 0;
  Millis duration = 0;

  Millis end() const { return onset + duration; }

  friend bool operator==(const Turn&, const Turn&) = default;
};

// Canonical turn order: recording, onset, speaker, then the remaining fields
// so that the order is total.
bool TurnLess(const Turn& a, const Turn& b);
void SortTurns(std::vector<Turn>* turns);

// Throws ValidationError if the turn violates its invariants.
void ValidateTurn(const Turn& turn);

struct RttmDocument {
  std::vector<Turn> turns;  // sorted by TurnLess

  // Turns grouped by recording id, each group in canonical order.
  std::map<std::string, std::vector<Turn>> ByRecording() const;

  friend bool operator==(const RttmDocument&, const RttmDocument&) = default;
};

// `source` only labels error messages (usually the file path).
RttmDocument ParseRttm(std::string_view text, const std::string& source = "");
std::string WriteRttm(const RttmDocument& doc);
std::string WriteRttm(std::vector<Turn> turns);

struct EmbeddingRecord {
  std::string recording_id;
  Millis start = 0;
  Millis end = 0;
  std::vector<double> vector;

  friend bool operator==(const EmbeddingRecord&, const EmbeddingRecord&) = default;
};

struct EmbeddingSet {
  int dim = 0;
  std::vector<EmbeddingRecord> records;  // sorted by (recording, start, end)

  std::map<std::string, std::vector<EmbeddingRecord>> ByRecording() const;
};

// "EMB <dim>" header, then "<recording> <start> <end> <dim floats>" rows.
EmbeddingSet ParseEmbeddings(std::string_view text, const std::string& source = "");
std::string WriteEmbeddings(const EmbeddingSet& set);

enum class TrialLabel { kTarget, kNontarget };

struct TrialScore {
  TrialLabel label;
  double score;
};

// "<target|nontarget> <score>" per line.
std::vector<TrialScore> ParseTrials(std::string_view text, const std::string& source = "");

// Splits on runs of spaces/tabs; shared by all line-oriented formats.
std::vector<std::string_view> SplitFields(std::string_view line);

}  // namespace diarkit

#endif  // DIARKIT_RTTM_IO_H_
