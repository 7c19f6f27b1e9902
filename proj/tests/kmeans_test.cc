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

#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "test_util.h"

namespace labeler {
namespace {

using Points = std::vector<std::vector<double>>;

// Minimum two-cluster WCSS over every assignment with both clusters used.
double ExhaustiveTwoClusterWcss(const Points &points) {
  const std::size_t n = points.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
    std::vector<std::size_t> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = (mask >> i) & 1u;
    best = std::min(best, Wcss(points, a, 2));
  }
  return best;
}

Points RandomPoints(std::mt19937_64 &gen, std::size_t n) {
  Points points(n, std::vector<double>(2));
  for (auto &p : points) {
    for (double &x : p) x = testing::UniformDouble(gen) * 10.0 - 5.0;
  }
  return points;
}

TEST(KMeans, SeparatedGroupsGiveExactMeans) {
  const Points points = {{0, 0}, {0, 2}, {2, 0}, {2, 2},
                         {10, 10}, {10, 12}, {12, 10}, {12, 12}};
  ClusterParams params;
  params.k = 2;
  const auto result = KMeans(points, params);
  EXPECT_EQ(result.assignments[0], result.assignments[3]);
  EXPECT_NE(result.assignments[0], result.assignments[4]);
  const auto &low = result.centroids[result.assignments[0]];
  const auto &high = result.centroids[result.assignments[4]];
  EXPECT_EQ(low, (std::vector<double>{1, 1}));
  EXPECT_EQ(high, (std::vector<double>{11, 11}));
  EXPECT_DOUBLE_EQ(result.wcss, 16.0);
}

TEST(KMeans, IdenticalPointsCollapse) {
  const Points points = {{1, 2}, {1, 2}, {1, 2}, {5, 5}, {5, 5}};
  ClusterParams params;
  params.k = 2;
  const auto result = KMeans(points, params);
  EXPECT_DOUBLE_EQ(result.wcss, 0.0);
}

TEST(KMeans, SingleClusterIsTheMean) {
  const Points points = {{0, 0}, {4, 0}, {0, 4}, {4, 4}};
  ClusterParams params;
  params.k = 1;
  const auto result = KMeans(points, params);
  EXPECT_EQ(result.centroids[0], (std::vector<double>{2, 2}));
  EXPECT_DOUBLE_EQ(result.wcss, 32.0);
}

TEST(KMeans, KEqualsPointCountGivesZeroWcss) {
  std::mt19937_64 gen(3);
  const Points points = RandomPoints(gen, 6);
  ClusterParams params;
  params.k = 6;
  EXPECT_DOUBLE_EQ(KMeans(points, params).wcss, 0.0);
}

TEST(KMeans, DeterministicForFixedSeed) {
  std::mt19937_64 gen(17);
  const Points points = RandomPoints(gen, 60);
  ClusterParams params;
  params.k = 5;
  const auto a = KMeans(points, params);
  const auto b = KMeans(points, params);
  EXPECT_EQ(a.assignments, b.assignments);
  EXPECT_EQ(a.centroids, b.centroids);
  EXPECT_EQ(a.wcss, b.wcss);
  EXPECT_EQ(a.restart, b.restart);
}

TEST(KMeans, WcssHistoryIsNonIncreasing) {
  std::mt19937_64 gen(23);
  const Points points = RandomPoints(gen, 80);
  ClusterParams params;
  params.k = 6;
  const auto result = KMeans(points, params);
  ASSERT_FALSE(result.wcss_history.empty());
  for (std::size_t i = 1; i < result.wcss_history.size(); ++i) {
    EXPECT_LE(result.wcss_history[i], result.wcss_history[i - 1] * (1 + 1e-12));
  }
  EXPECT_NEAR(result.wcss_history.back(), result.wcss, 1e-9 * result.wcss);
  EXPECT_NEAR(Wcss(points, result.assignments, params.k), result.wcss,
              1e-9 * result.wcss);
}

TEST(KMeans, MatchesExhaustiveOptimumOnSmallInstances) {
  std::mt19937_64 gen(99);
  ClusterParams params;
  params.k = 2;
  for (int trial = 0; trial < 100; ++trial) {
    const Points points = RandomPoints(gen, 3 + gen() % 6);
    const double optimum = ExhaustiveTwoClusterWcss(points);
    EXPECT_NEAR(KMeans(points, params).wcss, optimum, 1e-9) << "trial " << trial;
  }
}

TEST(KMeans, ValidatesParameters) {
  const Points points = {{0, 0}, {1, 1}};
  ClusterParams params;
  params.k = 3;
  EXPECT_ERROR_CODE(KMeans(points, params), ErrorCode::kPrecondition);
  params.k = 0;
  EXPECT_ERROR_CODE(KMeans(points, params), ErrorCode::kInvalidArgument);
  params = ClusterParams{};
  params.k = 1;
  params.restarts = 0;
  EXPECT_ERROR_CODE(KMeans(points, params), ErrorCode::kInvalidArgument);
  params.restarts = 1;
  const Points ragged = {{0, 0}, {1}};
  EXPECT_ERROR_CODE(KMeans(ragged, params), ErrorCode::kDimensionMismatch);
}

TEST(KMeans, ParamsJsonRoundTrip) {
  ClusterParams params;
  params.k = 7;
  params.seed = 123456789012345ULL;
  params.tol = 1e-8;
  const auto back = ClusterParams::FromJson(params.ToJson());
  EXPECT_EQ(back.k, 7u);
  EXPECT_EQ(back.seed, params.seed);
  EXPECT_EQ(back.tol, 1e-8);
  EXPECT_EQ(back.restarts, params.restarts);
}

TEST(SplitMix, KnownOutput) {
  EXPECT_EQ(SplitMix64(0), 0xe220a8397b1dcdafULL);
}

}  // namespace
}  // namespace labeler
