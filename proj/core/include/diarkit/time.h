// diarkit/time.h

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

#ifndef DIARKIT_TIME_H_
#define DIARKIT_TIME_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace diarkit {

// All timestamps are quantized to integer milliseconds on ingestion. Interval
// algebra and the scoring sweeps are therefore exact.
using Millis = std::int64_t;

// Rounds seconds to the nearest millisecond (half away from zero).
Millis SecondsToMillis(double seconds);

inline double MillisToSeconds(Millis ms) { return static_cast<double>(ms) / 1000.0; }

// "1.200", "-0.050": exact decimal rendering with three places.
std::string FormatMillis(Millis ms);

// Fixed-point rendering of a real number, locale independent.
std::string FormatFixed(double value, int decimals);

// Shortest representation that round-trips through ParseDouble.
std::string FormatShortest(double value);

// Locale-independent strict parse; returns false on trailing garbage,
// empty input or out-of-range values. Non-finite spellings ("nan", "inf")
// parse successfully and must be rejected by the caller when needed.
bool ParseDouble(std::string_view text, double* out);

bool ParseInt(std::string_view text, long long* out);

}  // namespace diarkit

#endif  // DIARKIT_TIME_H_
