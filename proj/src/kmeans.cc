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

#include "labeler/kmeans.h"

#include <algorithm>
#include <cmath>
#include <future>
#include <optional>
#include <limits>
#include <random>
#include <string>

#include "labeler/error.h"

namespace labeler {
namespace {

double Uniform(std::mt19937_64 &gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

using Matrix = std::vector<std::vector<double>>;

std::vector<double> SquaredDistances(std::span<const std::vector<double>> points,
                                     const std::vector<double> &center) {
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    out[i] = SquaredDistance(points[i], center);
  }
  return out;
}

Matrix SeedPlusPlus(std::span<const std::vector<double>> points, std::size_t k,
                    std::mt19937_64 &gen) {
  const std::size_t n = points.size();
  Matrix centers;
  std::size_t first = std::min(
      n - 1, static_cast<std::size_t>(Uniform(gen) * static_cast<double>(n)));
  centers.push_back(points[first]);
  std::vector<double> nearest = SquaredDistances(points, centers.back());
  while (centers.size() < k) {
    double total = 0.0;
    for (double d : nearest) total += d;
    std::size_t pick = n - 1;
    if (total > 0.0) {
      const double target = Uniform(gen) * total;
      double cumulative = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        cumulative += nearest[i];
        if (nearest[i] > 0.0 && cumulative > target) {
          pick = i;
          break;
        }
      }
    } else {
      // Every point coincides with a center; any choice is equivalent.
      pick = std::min(n - 1, static_cast<std::size_t>(Uniform(gen) *
                                                      static_cast<double>(n)));
    }
    centers.push_back(points[pick]);
    const std::vector<double> d = SquaredDistances(points, centers.back());
    for (std::size_t i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], d[i]);
  }
  return centers;
}

std::size_t Nearest(const std::vector<double> &point, const Matrix &centers,
                    double *distance) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centers.size(); ++c) {
    const double d = SquaredDistance(point, centers[c]);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  if (distance) *distance = best_d;
  return best;
}

Matrix Means(std::span<const std::vector<double>> points,
             const std::vector<std::size_t> &assignments, std::size_t k,
             std::size_t dim) {
  Matrix sums(k, std::vector<double>(dim, 0.0));
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto &sum = sums[assignments[i]];
    for (std::size_t d = 0; d < dim; ++d) sum[d] += points[i][d];
    ++counts[assignments[i]];
  }
  for (std::size_t c = 0; c < k; ++c) {
    for (double &v : sums[c]) v /= static_cast<double>(counts[c]);
  }
  return sums;
}

// Hartigan-style single-point moves: relocate a point whenever that strictly
// lowers WCSS, accounting for the centroid shift its move causes. Lloyd fixed
// points are not always local optima under such moves; on small inputs this
// is what separates a local optimum from the global one.
void Refine(std::span<const std::vector<double>> points,
            std::vector<std::size_t> &assignments, Matrix &centers,
            std::size_t max_passes, std::vector<double> &history) {
  const std::size_t n = points.size();
  const std::size_t k = centers.size();
  const std::size_t dim = centers[0].size();
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t a : assignments) ++counts[a];
  for (std::size_t pass = 0; pass < max_passes; ++pass) {
    bool moved = false;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t from = assignments[i];
      if (counts[from] < 2) continue;
      const double nf = static_cast<double>(counts[from]);
      const double removal =
          nf / (nf - 1.0) * SquaredDistance(points[i], centers[from]);
      std::size_t to = from;
      double best = removal;
      for (std::size_t c = 0; c < k; ++c) {
        if (c == from) continue;
        const double nc = static_cast<double>(counts[c]);
        const double addition =
            nc / (nc + 1.0) * SquaredDistance(points[i], centers[c]);
        // Relative margin keeps round-off from cycling a point.
        if (addition < best * (1.0 - 1e-12)) {
          best = addition;
          to = c;
        }
      }
      if (to == from) continue;
      for (std::size_t d = 0; d < dim; ++d) {
        centers[from][d] = (centers[from][d] * nf - points[i][d]) / (nf - 1.0);
        const double nt = static_cast<double>(counts[to]);
        centers[to][d] = (centers[to][d] * nt + points[i][d]) / (nt + 1.0);
      }
      --counts[from];
      ++counts[to];
      assignments[i] = to;
      moved = true;
    }
    if (!moved) break;
    // Recompute exactly; the incremental updates above drift slightly.
    centers = Means(points, assignments, k, dim);
    history.push_back(Wcss(points, assignments, k));
  }
}

KMeansResult RunOnce(std::span<const std::vector<double>> points,
                     const ClusterParams &params, std::size_t restart) {
  const std::size_t n = points.size();
  const std::size_t k = params.k;
  const std::size_t dim = points[0].size();
  std::mt19937_64 gen(SplitMix64(params.seed + restart));
  Matrix centers = SeedPlusPlus(points, k, gen);

  KMeansResult result;
  result.restart = restart;
  std::vector<std::size_t> assignments(n, k);
  std::vector<double> distance(n);
  for (std::size_t iter = 0; iter < params.max_iters; ++iter) {
    std::vector<std::size_t> next(n);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = Nearest(points[i], centers, &distance[i]);
      ++counts[next[i]];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      // Reseed from the point farthest from its centroid, taken from a
      // cluster that can spare it.
      std::size_t far = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (counts[next[i]] > 1 && (far == n || distance[i] > distance[far])) {
          far = i;
        }
      }
      --counts[next[far]];
      next[far] = c;
      counts[c] = 1;
      distance[far] = 0.0;
      centers[c] = points[far];
    }
    const bool unchanged = next == assignments;
    assignments = std::move(next);
    Matrix updated = Means(points, assignments, k, dim);
    double shift = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      shift = std::max(shift, SquaredDistance(updated[c], centers[c]));
    }
    centers = std::move(updated);
    result.iterations = iter + 1;
    result.wcss_history.push_back(Wcss(points, assignments, k));
    if (unchanged || std::sqrt(shift) < params.tol) break;
  }
  Refine(points, assignments, centers, params.max_iters, result.wcss_history);
  result.assignments = std::move(assignments);
  result.centroids = std::move(centers);
  result.wcss = result.wcss_history.back();
  return result;
}

}  // namespace

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "dimension mismatch: " + std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

double Wcss(std::span<const std::vector<double>> points,
            std::span<const std::size_t> assignments, std::size_t k) {
  if (points.empty()) return 0.0;
  std::vector<std::size_t> a(assignments.begin(), assignments.end());
  Matrix means = Means(points, a, k, points[0].size());
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    total += SquaredDistance(points[i], means[a[i]]);
  }
  return total;
}

void ClusterParams::Validate() const {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  if (max_iters == 0) {
    throw Error(ErrorCode::kInvalidArgument, "max_iters must be >= 1");
  }
  if (restarts == 0) {
    throw Error(ErrorCode::kInvalidArgument, "restarts must be >= 1");
  }
  if (!(tol >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "tol must be >= 0");
}

void ClusterParams::Validate(std::size_t points) const {
  Validate();
  if (points < k) {
    throw Error(ErrorCode::kPrecondition,
                "cannot form " + std::to_string(k) + " clusters from " +
                    std::to_string(points) + " points");
  }
}

nlohmann::json ClusterParams::ToJson() const {
  return {{"k", k},
          {"seed", seed},
          {"max_iters", max_iters},
          {"tol", tol},
          {"restarts", restarts}};
}

ClusterParams ClusterParams::FromJson(const nlohmann::json &j) {
  ClusterParams p;
  p.k = j.value("k", p.k);
  p.seed = j.value("seed", p.seed);
  p.max_iters = j.value("max_iters", p.max_iters);
  p.tol = j.value("tol", p.tol);
  p.restarts = j.value("restarts", p.restarts);
  return p;
}

KMeansResult KMeans(std::span<const std::vector<double>> points,
                    const ClusterParams &params) {
  params.Validate(points.size());
  const std::size_t dim = points[0].size();
  for (const auto &p : points) {
    if (p.size() != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "points have mixed dimensions " + std::to_string(dim) +
                      " and " + std::to_string(p.size()));
    }
  }
  std::vector<std::future<KMeansResult>> runs;
  for (std::size_t r = 0; r < params.restarts; ++r) {
    runs.push_back(std::async(std::launch::async, RunOnce, points,
                              std::cref(params), r));
  }
  std::optional<KMeansResult> best;
  for (auto &run : runs) {
    KMeansResult result = run.get();
    if (!best || result.wcss < best->wcss) best = std::move(result);
  }
  return std::move(*best);
}

}  // namespace labeler
