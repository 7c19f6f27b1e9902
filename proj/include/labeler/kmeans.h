// Copyright 2026 The Labeler Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LABELER_KMEANS_H_
#define LABELER_KMEANS_H_

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace labeler {

struct ClusterParams {
  std::size_t k = 15;
  std::uint64_t seed = 42;
  std::size_t max_iters = 300;
  double tol = 1e-6;
  std::size_t restarts = 8;

  // Throws kInvalidArgument for k, max_iters or restarts of zero, or a
  // negative tol. With `points`, also kPrecondition if points < k.
  void Validate() const;
  void Validate(std::size_t points) const;
  nlohmann::json ToJson() const;
  static ClusterParams FromJson(const nlohmann::json &j);
};

struct KMeansResult {
  std::vector<std::size_t> assignments;
  // Member means of the final assignment.
  std::vector<std::vector<double>> centroids;
  double wcss = 0.0;
  std::size_t iterations = 0;
  std::size_t restart = 0;
  // WCSS after every update step of the winning restart.
  std::vector<double> wcss_history;
};

// Lloyd's algorithm on squared Euclidean distance with k-means++ seeding.
// Restart r draws from std::mt19937_64 seeded with SplitMix64(seed + r);
// the lowest WCSS wins, ties to the lowest restart. A run stops when the
// largest centroid shift drops below tol, the assignment stops changing, or
// max_iters update steps have run. An empty cluster takes the point
// farthest from its current centroid. Restarts run concurrently; the result
// does not depend on scheduling.
KMeansResult KMeans(std::span<const std::vector<double>> points,
                    const ClusterParams &params);

double SquaredDistance(std::span<const double> a, std::span<const double> b);

// Sum of squared distances from each point to the mean of its cluster.
double Wcss(std::span<const std::vector<double>> points,
            std::span<const std::size_t> assignments, std::size_t k);

std::uint64_t SplitMix64(std::uint64_t x);

}  // namespace labeler

#endif  // LABELER_KMEANS_H_
