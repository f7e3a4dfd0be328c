// src/assignment.cc

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

#include "diarkit/assignment.h"

#include <algorithm>
#include <limits>

namespace diarkit {

namespace {

using Cost = std::int64_t;
constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;

// Minimum-cost perfect matching on an n x n cost matrix (row-major), O(n^3).
// Returns the optimal cost; row_to_col receives the matching.
Cost SolveMinCost(int n, const std::vector<Cost>& cost, std::vector<int>* row_to_col) {
  std::vector<Cost> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      Cost delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const Cost cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  row_to_col->assign(n, -1);
  Cost total = 0;
  for (int j = 1; j <= n; ++j) {
    (*row_to_col)[p[j] - 1] = j - 1;
    total += cost[(p[j] - 1) * n + (j - 1)];
  }
  return total;
}

// Best total weight over the rows/cols not yet fixed.
Cost BestRemaining(const std::vector<Cost>& w, int n, const std::vector<char>& row_done,
                   const std::vector<char>& col_done) {
  std::vector<int> rows, cols;
  for (int i = 0; i < n; ++i) {
    if (!row_done[i]) rows.push_back(i);
    if (!col_done[i]) cols.push_back(i);
  }
  const int m = static_cast<int>(rows.size());
  if (m == 0) return 0;
  std::vector<Cost> cost(m * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) cost[a * m + b] = -w[rows[a] * n + cols[b]];
  std::vector<int> unused;
  return -SolveMinCost(m, cost, &unused);
}

}  // namespace

std::vector<int> MaxWeightAssignment(const WeightMatrix& weights) {
  const int r = weights.rows();
  const int c = weights.cols();
  const int n = std::max(r, c);
  if (r == 0) return {};
  if (c == 0) return std::vector<int>(r, -1);
  std::vector<Cost> w(n * n, 0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) w[i * n + j] = weights(i, j);

  std::vector<char> row_done(n, 0), col_done(n, 0);
  const Cost optimum = BestRemaining(w, n, row_done, col_done);

  // Fix rows in order to the smallest column that keeps the optimum reachable.
  std::vector<int> padded(n, -1);
  Cost fixed = 0;
  for (int i = 0; i < n; ++i) {
    row_done[i] = 1;
    for (int j = 0; j < n; ++j) {
      if (col_done[j]) continue;
      col_done[j] = 1;
      if (fixed + w[i * n + j] + BestRemaining(w, n, row_done, col_done) == optimum) {
        padded[i] = j;
        fixed += w[i * n + j];
        break;
      }
      col_done[j] = 0;
    }
  }
  std::vector<int> result(r, -1);
  for (int i = 0; i < r; ++i) result[i] = padded[i] < c ? padded[i] : -1;
  return result;
}

std::int64_t AssignmentWeight(const WeightMatrix& weights, const std::vector<int>& assignment) {
  std::int64_t total = 0;
  for (int i = 0; i < static_cast<int>(assignment.size()); ++i)
    if (assignment[i] >= 0) total += weights(i, assignment[i]);
  return total;
}

}  // namespace diarkit
