// src/time.cc

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

#include "diarkit/time.h"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <system_error>

namespace diarkit {

Millis SecondsToMillis(double seconds) {
  return static_cast<Millis>(std::llround(seconds * 1000.0));
}

std::string FormatMillis(Millis ms) {
  std::string out;
  if (ms < 0) {
    out.push_back('-');
    ms = -ms;
  }
  out += std::to_string(ms / 1000);
  out.push_back('.');
  const Millis frac = ms % 1000;
  if (frac < 100) out.push_back('0');
  if (frac < 10) out.push_back('0');
  out += std::to_string(frac);
  return out;
}

std::string FormatFixed(double value, int decimals) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, decimals);
  if (res.ec != std::errc()) return std::isnan(value) ? "nan" : "inf";
  return std::string(buf, res.ptr);
}

std::string FormatShortest(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

bool ParseDouble(std::string_view text, double* out) {
  if (text.empty()) return false;
  // from_chars rejects a leading '+', which some writers emit.
  if (text.front() == '+') text.remove_prefix(1);
  auto res = std::from_chars(text.data(), text.data() + text.size(), *out);
  return res.ec == std::errc() && res.ptr == text.data() + text.size();
}

bool ParseInt(std::string_view text, long long* out) {
  if (text.empty()) return false;
  auto res = std::from_chars(text.data(), text.data() + text.size(), *out);
  return res.ec == std::errc() && res.ptr == text.data() + text.size();
}

}  // namespace diarkit
