// diarkit/assignment.h

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

#ifndef DIARKIT_ASSIGNMENT_H_
#define DIARKIT_ASSIGNMENT_H_

#include <cstdint>
#include <vector>

namespace diarkit {

// Dense rows x cols matrix of integer weights (overlaps in milliseconds).
class WeightMatrix {
 public:
  WeightMatrix() = default;
  WeightMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::int64_t& operator()(int r, int c) { return data_[r * cols_ + c]; }
  std::int64_t operator()(int r, int c) const { return data_[r * cols_ + c]; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::int64_t> data_;
};

// Maximum-total-weight one-to-one assignment (Kuhn-Munkres). The matrix is
// padded to square with zero-weight dummies; among all optimal padded
// assignments the one whose column sequence (row 0 first) is
// lexicographically smallest is returned. result[r] is the assigned column
// or -1 when row r went to a dummy column.
std::vector<int> MaxWeightAssignment(const WeightMatrix& weights);

// Total weight of an assignment as returned above.
std::int64_t AssignmentWeight(const WeightMatrix& weights, const std::vector<int>& assignment);

}  // namespace diarkit

#endif  // DIARKIT_ASSIGNMENT_H_
