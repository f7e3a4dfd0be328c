// src/rttm_io.cc

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

#include "diarkit/rttm_io.h"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "diarkit/errors.h"

namespace diarkit {

namespace {

bool IsBlank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

bool HasWhitespace(std::string_view token) {
  return std::any_of(token.begin(), token.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
  });
}

// Calls fn(line_number, line) for every non-blank line.
template <typename Fn>
void ForEachLine(std::string_view text, Fn&& fn) {
  std::size_t lineno = 0;
  while (!text.empty()) {
    ++lineno;
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!IsBlank(line)) fn(lineno, line);
  }
}

double ParseSeconds(std::string_view field, const char* what, const std::string& source,
                    std::size_t lineno) {
  double value = 0;
  if (!ParseDouble(field, &value) || !std::isfinite(value)) {
    throw ParseError(source, lineno,
                     std::string("non-numeric ") + what + " '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t begin = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > begin) fields.push_back(line.substr(begin, i - begin));
  }
  return fields;
}

bool TurnLess(const Turn& a, const Turn& b) {
  return std::tie(a.recording_id, a.onset, a.speaker, a.duration, a.channel) <
         std::tie(b.recording_id, b.onset, b.speaker, b.duration, b.channel);
}

void SortTurns(std::vector<Turn>* turns) { std::sort(turns->begin(), turns->end(), TurnLess); }

void ValidateTurn(const Turn& turn) {
  if (turn.recording_id.empty() || HasWhitespace(turn.recording_id))
    throw ValidationError("recording id must be a non-empty token");
  if (turn.speaker.empty() || HasWhitespace(turn.speaker))
    throw ValidationError("speaker id must be a non-empty token");
  if (turn.channel.empty() || HasWhitespace(turn.channel))
    throw ValidationError("channel must be a non-empty token");
  if (turn.onset < 0) throw ValidationError("negative onset in " + turn.recording_id);
  if (turn.duration <= 0)
    throw ValidationError("non-positive duration for " + turn.speaker + " in " +
                          turn.recording_id + " at " + FormatMillis(turn.onset));
}

std::map<std::string, std::vector<Turn>> RttmDocument::ByRecording() const {
  std::map<std::string, std::vector<Turn>> out;
  for (const Turn& t : turns) out[t.recording_id].push_back(t);
  return out;
}

RttmDocument ParseRttm(std::string_view text, const std::string& source) {
  RttmDocument doc;
  ForEachLine(text, [&](std::size_t lineno, std::string_view line) {
    const auto f = SplitFields(line);
    if (f.size() != 10)
      throw ParseError(source, lineno,
                       "expected 10 fields, found " + std::to_string(f.size()));
    if (f[0] != "SPEAKER")
      throw ParseError(source, lineno, "unsupported RTTM type '" + std::string(f[0]) + "'");
    const double onset = ParseSeconds(f[3], "onset", source, lineno);
    const double duration = ParseSeconds(f[4], "duration", source, lineno);
    Turn turn{std::string(f[1]), std::string(f[2]), std::string(f[7]),
              SecondsToMillis(onset), SecondsToMillis(duration)};
    if (duration <= 0 || turn.duration <= 0)
      throw ValidationError((source.empty() ? "<input>" : source) + ":" +
                            std::to_string(lineno) + ": non-positive duration");
    if (onset < 0)
      throw ValidationError((source.empty() ? "<input>" : source) + ":" +
                            std::to_string(lineno) + ": negative onset");
    doc.turns.push_back(std::move(turn));
  });
  SortTurns(&doc.turns);
  return doc;
}

std::string WriteRttm(const RttmDocument& doc) {
  std::vector<Turn> turns = doc.turns;
  return WriteRttm(std::move(turns));
}

std::string WriteRttm(std::vector<Turn> turns) {
  SortTurns(&turns);
  std::string out;
  for (const Turn& t : turns) {
    out += "SPEAKER ";
    out += t.recording_id;
    out += ' ';
    out += t.channel;
    out += ' ';
    out += FormatMillis(t.onset);
    out += ' ';
    out += FormatMillis(t.duration);
    out += " <NA> <NA> ";
    out += t.speaker;
    out += " <NA> <NA>\n";
  }
  return out;
}

std::map<std::string, std::vector<EmbeddingRecord>> EmbeddingSet::ByRecording() const {
  std::map<std::string, std::vector<EmbeddingRecord>> out;
  for (const EmbeddingRecord& r : records) out[r.recording_id].push_back(r);
  return out;
}

EmbeddingSet ParseEmbeddings(std::string_view text, const std::string& source) {
  EmbeddingSet set;
  bool have_header = false;
  ForEachLine(text, [&](std::size_t lineno, std::string_view line) {
    const auto f = SplitFields(line);
    if (!have_header) {
      long long dim = 0;
      if (f.size() != 2 || f[0] != "EMB" || !ParseInt(f[1], &dim) || dim <= 0)
        throw ParseError(source, lineno, "expected header 'EMB <dim>'");
      set.dim = static_cast<int>(dim);
      have_header = true;
      return;
    }
    if (f.size() != static_cast<std::size_t>(set.dim) + 3)
      throw ParseError(source, lineno,
                       "expected " + std::to_string(set.dim) + " values, found " +
                           std::to_string(f.size() < 3 ? 0 : f.size() - 3));
    EmbeddingRecord rec;
    rec.recording_id = std::string(f[0]);
    rec.start = SecondsToMillis(ParseSeconds(f[1], "start", source, lineno));
    rec.end = SecondsToMillis(ParseSeconds(f[2], "end", source, lineno));
    if (rec.end <= rec.start)
      throw ValidationError((source.empty() ? "<input>" : source) + ":" +
                            std::to_string(lineno) + ": end <= start");
    if (rec.start < 0)
      throw ValidationError((source.empty() ? "<input>" : source) + ":" +
                            std::to_string(lineno) + ": negative start");
    rec.vector.reserve(set.dim);
    for (std::size_t i = 3; i < f.size(); ++i) {
      double v = 0;
      if (!ParseDouble(f[i], &v) || !std::isfinite(v))
        throw ParseError(source, lineno, "bad embedding value '" + std::string(f[i]) + "'");
      rec.vector.push_back(v);
    }
    set.records.push_back(std::move(rec));
  });
  if (!have_header) throw ParseError(source, 1, "missing 'EMB <dim>' header");
  std::stable_sort(set.records.begin(), set.records.end(),
                   [](const EmbeddingRecord& a, const EmbeddingRecord& b) {
                     return std::tie(a.recording_id, a.start, a.end) <
                            std::tie(b.recording_id, b.start, b.end);
                   });
  return set;
}

std::string WriteEmbeddings(const EmbeddingSet& set) {
  std::string out = "EMB " + std::to_string(set.dim) + "\n";
  for (const EmbeddingRecord& r : set.records) {
    out += r.recording_id;
    out += ' ';
    out += FormatMillis(r.start);
    out += ' ';
    out += FormatMillis(r.end);
    for (double v : r.vector) {
      out += ' ';
      out += FormatShortest(v);
    }
    out += '\n';
  }
  return out;
}

std::vector<TrialScore> ParseTrials(std::string_view text, const std::string& source) {
  std::vector<TrialScore> trials;
  ForEachLine(text, [&](std::size_t lineno, std::string_view line) {
    const auto f = SplitFields(line);
    if (f.size() != 2) throw ParseError(source, lineno, "expected '<label> <score>'");
    TrialScore t{};
    if (f[0] == "target") {
      t.label = TrialLabel::kTarget;
    } else if (f[0] == "nontarget") {
      t.label = TrialLabel::kNontarget;
    } else {
      throw ParseError(source, lineno, "unknown trial label '" + std::string(f[0]) + "'");
    }
    if (!ParseDouble(f[1], &t.score) || !std::isfinite(t.score))
      throw ParseError(source, lineno, "bad score '" + std::string(f[1]) + "'");
    trials.push_back(t);
  });
  return trials;
}

}  // namespace diarkit
