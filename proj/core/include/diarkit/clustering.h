// diarkit/clustering.h

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

#ifndef DIARKIT_CLUSTERING_H_
#define DIARKIT_CLUSTERING_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "diarkit/rttm_io.h"

namespace diarkit {

// Symmetric n x n cosine-score matrix.
struct SimilarityMatrix {
  Eigen::MatrixXd values;

  int size() const { return static_cast<int>(values.rows()); }
};

struct ClusterLabels {
  std::vector<int> labels;  // 0-based, first appearance order
  int k = 0;
};

// S[i][j] = <v_i, v_j> / (|v_i| |v_j|). Throws ComputationError naming the
// index of any zero-norm vector.
SimilarityMatrix CosineSimilarity(std::span<const std::vector<double>> vectors);
SimilarityMatrix CosineSimilarity(std::span<const EmbeddingRecord> records);

// Symmetric normalized Laplacian I - D^-1/2 A D^-1/2 of the affinity built
// from S: diagonal zeroed, negative scores clamped to 0, zero degrees floored
// at kDegreeFloor.
inline constexpr double kDegreeFloor = 1e-10;
Eigen::MatrixXd NormalizedLaplacian(const SimilarityMatrix& s);

struct SpectralOptions {
  double alpha = 0.65;                // eigenvalue threshold for estimating k
  std::optional<int> max_speakers = 2;
  std::optional<int> oracle_k;        // overrides the estimate when set
  std::uint64_t seed = 42;
};

struct SpectralResult {
  ClusterLabels clusters;
  Eigen::VectorXd eigenvalues;  // ascending
  int raw_count = 0;            // eigenvalues below alpha, before clamping
};

// Number of eigenvalues below alpha, clamped to [1, min(n, max_speakers)].
int EstimateNumClusters(const Eigen::VectorXd& eigenvalues, double alpha,
                        std::optional<int> max_speakers);

SpectralResult SpectralCluster(const SimilarityMatrix& s, const SpectralOptions& options);

// Lloyd's k-means over the rows of `points` with k-means++ seeding.
ClusterLabels KMeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed);

inline constexpr int kKMeansMaxIterations = 300;
inline constexpr double kKMeansTolerance = 1e-8;

// Chance-corrected agreement between two labelings of the same items.
double AdjustedRandIndex(std::span<const int> a, std::span<const int> b);

}  // namespace diarkit

#endif  // DIARKIT_CLUSTERING_H_
