// src/clustering.cc

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

#include "diarkit/clustering.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "diarkit/errors.h"
#include "diarkit/random.h"

namespace diarkit {

namespace {

constexpr double kSymmetryTolerance = 1e-12;
constexpr std::uint64_t kKMeansStream = 0x6b6d65616e73ULL;  // "kmeans"

// Relabels so that labels appear in first-occurrence order.
ClusterLabels Canonicalize(const std::vector<int>& raw, int k) {
  std::vector<int> remap(k, -1);
  ClusterLabels out;
  out.k = k;
  out.labels.reserve(raw.size());
  int next = 0;
  for (int l : raw) {
    if (remap[l] < 0) remap[l] = next++;
    out.labels.push_back(remap[l]);
  }
  return out;
}

int Nearest(const Eigen::MatrixXd& centers, const Eigen::RowVectorXd& p, double* dist) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int c = 0; c < centers.rows(); ++c) {
    const double d = (centers.row(c) - p).squaredNorm();
    if (d < best_d) {  // strict: ties keep the lowest index
      best_d = d;
      best = c;
    }
  }
  *dist = best_d;
  return best;
}

// Moves the point farthest from its center into each empty cluster. Only
// points from clusters with more than one member are eligible.
bool RepairEmptyClusters(const Eigen::MatrixXd& points, Eigen::MatrixXd* centers,
                         std::vector<int>* labels) {
  const int k = static_cast<int>(centers->rows());
  std::vector<int> sizes(k, 0);
  for (int l : *labels) ++sizes[l];
  bool repaired = false;
  for (int c = 0; c < k; ++c) {
    if (sizes[c] > 0) continue;
    int far = -1;
    double far_d = -1;
    for (int i = 0; i < points.rows(); ++i) {
      const int l = (*labels)[i];
      if (sizes[l] <= 1) continue;
      const double d = (points.row(i) - centers->row(l)).squaredNorm();
      if (d > far_d) {
        far_d = d;
        far = i;
      }
    }
    if (far < 0) break;  // k > n; rejected by the caller
    --sizes[(*labels)[far]];
    (*labels)[far] = c;
    ++sizes[c];
    centers->row(c) = points.row(far);
    repaired = true;
  }
  return repaired;
}

}  // namespace

SimilarityMatrix CosineSimilarity(std::span<const std::vector<double>> vectors) {
  const int n = static_cast<int>(vectors.size());
  if (n == 0) return {};
  const int dim = static_cast<int>(vectors.front().size());
  Eigen::MatrixXd unit(n, dim);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(vectors[i].size()) != dim)
      throw UsageError("CosineSimilarity: vector " + std::to_string(i) + " has dimension " +
                       std::to_string(vectors[i].size()) + ", expected " + std::to_string(dim));
    Eigen::Map<const Eigen::RowVectorXd> v(vectors[i].data(), dim);
    const double norm = v.norm();
    if (!(norm > 0) || !std::isfinite(norm))
      throw ComputationError("CosineSimilarity: vector " + std::to_string(i) +
                             " has zero or non-finite norm");
    unit.row(i) = v / norm;
  }
  SimilarityMatrix s;
  s.values = unit * unit.transpose();
  // Enforce exact symmetry and the [-1, 1] range lost to rounding.
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double v = std::clamp(s.values(i, j), -1.0, 1.0);
      s.values(i, j) = v;
      s.values(j, i) = v;
    }
  }
  return s;
}

SimilarityMatrix CosineSimilarity(std::span<const EmbeddingRecord> records) {
  std::vector<std::vector<double>> vectors;
  vectors.reserve(records.size());
  for (const EmbeddingRecord& r : records) vectors.push_back(r.vector);
  return CosineSimilarity(vectors);
}

Eigen::MatrixXd NormalizedLaplacian(const SimilarityMatrix& s) {
  const int n = s.size();
  Eigen::MatrixXd affinity = s.values.cwiseMax(0.0);
  affinity.diagonal().setZero();
  Eigen::VectorXd inv_sqrt_degree(n);
  for (int i = 0; i < n; ++i) {
    double d = affinity.row(i).sum();
    if (d == 0.0) d = kDegreeFloor;
    inv_sqrt_degree(i) = 1.0 / std::sqrt(d);
  }
  Eigen::MatrixXd laplacian =
      -(inv_sqrt_degree.asDiagonal() * affinity * inv_sqrt_degree.asDiagonal());
  laplacian.diagonal().array() += 1.0;
  // The product above is symmetric up to rounding; make it exact.
  return 0.5 * (laplacian + laplacian.transpose());
}

int EstimateNumClusters(const Eigen::VectorXd& eigenvalues, double alpha,
                        std::optional<int> max_speakers) {
  const int n = static_cast<int>(eigenvalues.size());
  int k = 0;
  for (int i = 0; i < n; ++i)
    if (eigenvalues(i) < alpha) ++k;
  int upper = n;
  if (max_speakers) upper = std::min(upper, *max_speakers);
  return std::clamp(k, 1, std::max(upper, 1));
}

SpectralResult SpectralCluster(const SimilarityMatrix& s, const SpectralOptions& options) {
  const int n = s.size();
  if (n < 1) throw UsageError("SpectralCluster: empty similarity matrix");
  if (s.values.cols() != n) throw ValidationError("SpectralCluster: matrix is not square");
  if (!(options.alpha > 0)) throw UsageError("SpectralCluster: alpha must be positive");
  if (options.max_speakers && *options.max_speakers < 1)
    throw UsageError("SpectralCluster: max_speakers must be >= 1");
  if (options.oracle_k && (*options.oracle_k < 1 || *options.oracle_k > n))
    throw UsageError("SpectralCluster: oracle k " + std::to_string(*options.oracle_k) +
                     " outside [1, " + std::to_string(n) + "]");
  if (!s.values.allFinite()) throw ValidationError("SpectralCluster: non-finite similarity");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(s.values(i, j) - s.values(j, i)) > kSymmetryTolerance)
        throw ValidationError("SpectralCluster: similarity matrix is not symmetric at (" +
                              std::to_string(i) + ", " + std::to_string(j) + ")");

  const Eigen::MatrixXd laplacian = NormalizedLaplacian(s);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian);
  if (solver.info() != Eigen::Success || !solver.eigenvalues().allFinite() ||
      !solver.eigenvectors().allFinite())
    throw ComputationError("SpectralCluster: eigendecomposition failed");

  SpectralResult result;
  result.eigenvalues = solver.eigenvalues();
  for (int i = 0; i < n; ++i)
    if (result.eigenvalues(i) < options.alpha) ++result.raw_count;
  const int k = options.oracle_k
                    ? *options.oracle_k
                    : EstimateNumClusters(result.eigenvalues, options.alpha, options.max_speakers);

  Eigen::MatrixXd embedding = solver.eigenvectors().leftCols(k);
  for (int i = 0; i < n; ++i) {
    const double norm = embedding.row(i).norm();
    if (norm > 0) embedding.row(i) /= norm;
  }
  result.clusters = KMeans(embedding, k, options.seed);
  return result;
}

ClusterLabels KMeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed) {
  const int n = static_cast<int>(points.rows());
  if (k < 1) throw UsageError("KMeans: k must be >= 1");
  if (k > n)
    throw UsageError("KMeans: k = " + std::to_string(k) + " exceeds " + std::to_string(n) +
                     " points");
  CounterRng rng(seed, kKMeansStream);

  // k-means++ seeding.
  Eigen::MatrixXd centers(k, points.cols());
  centers.row(0) = points.row(static_cast<Eigen::Index>(rng.Below(n)));
  std::vector<double> d2(n);
  for (int i = 0; i < n; ++i) d2[i] = (points.row(i) - centers.row(0)).squaredNorm();
  for (int c = 1; c < k; ++c) {
    double total = 0;
    for (double d : d2) total += d;
    int pick = 0;
    if (total > 0) {
      const double target = rng.Uniform() * total;
      double acc = 0;
      pick = n - 1;
      for (int i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc > target) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<int>(rng.Below(n));
    }
    centers.row(c) = points.row(pick);
    for (int i = 0; i < n; ++i)
      d2[i] = std::min(d2[i], (points.row(i) - centers.row(c)).squaredNorm());
  }

  std::vector<int> labels(n);
  double unused = 0;
  for (int i = 0; i < n; ++i) labels[i] = Nearest(centers, points.row(i), &unused);

  for (int iter = 0; iter < kKMeansMaxIterations; ++iter) {
    RepairEmptyClusters(points, &centers, &labels);
    Eigen::MatrixXd updated = Eigen::MatrixXd::Zero(k, points.cols());
    std::vector<int> sizes(k, 0);
    for (int i = 0; i < n; ++i) {
      updated.row(labels[i]) += points.row(i);
      ++sizes[labels[i]];
    }
    for (int c = 0; c < k; ++c) updated.row(c) /= sizes[c];
    const double movement = (updated - centers).rowwise().norm().maxCoeff();
    centers = std::move(updated);

    bool changed = false;
    for (int i = 0; i < n; ++i) {
      const int l = Nearest(centers, points.row(i), &unused);
      if (l != labels[i]) {
        labels[i] = l;
        changed = true;
      }
    }
    if (!changed || movement < kKMeansTolerance) break;
  }
  RepairEmptyClusters(points, &centers, &labels);
  return Canonicalize(labels, k);
}

double AdjustedRandIndex(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw UsageError("AdjustedRandIndex: length mismatch");
  const double n = static_cast<double>(a.size());
  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> rows, cols;
  for (std::size_t i = 0; i < a.size(); ++i) {
    joint[{a[i], b[i]}] += 1;
    rows[a[i]] += 1;
    cols[b[i]] += 1;
  }
  auto pairs = [](double x) { return x * (x - 1) / 2; };
  double index = 0, sum_rows = 0, sum_cols = 0;
  for (const auto& [key, v] : joint) index += pairs(v);
  for (const auto& [key, v] : rows) sum_rows += pairs(v);
  for (const auto& [key, v] : cols) sum_cols += pairs(v);
  const double total = pairs(n);
  const double expected = total > 0 ? sum_rows * sum_cols / total : 0;
  const double max_index = 0.5 * (sum_rows + sum_cols);
  if (max_index == expected) return index == max_index ? 1.0 : 0.0;
  return (index - expected) / (max_index - expected);
}

}  // namespace diarkit
