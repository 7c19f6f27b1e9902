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

#ifndef LABELER_EMBEDDING_H_
#define LABELER_EMBEDDING_H_

#include <cstddef>
#include <span>
#include <vector>

namespace labeler {

// Dimension of the sentence-transformer embeddings the providers exchange.
inline constexpr std::size_t kEmbeddingDim = 768;

// Tolerance on |norm - 1| accepted for a unit vector.
inline constexpr double kUnitNormTolerance = 1e-6;

double Dot(std::span<const double> a, std::span<const double> b);
double Norm(std::span<const double> a);

// A unit-norm embedding. Construction either normalizes raw values or checks
// that the values already have unit norm; there is no way to build a
// non-unit EmbeddingVector.
class EmbeddingVector {
 public:
  EmbeddingVector() = default;

  // Throws kInvalidArgument for empty, non-finite or zero vectors.
  static EmbeddingVector Normalize(std::vector<double> raw);

  // Throws kInvalidArgument unless |norm - 1| <= kUnitNormTolerance.
  static EmbeddingVector FromUnit(std::vector<double> values);

  std::span<const double> values() const { return values_; }
  std::size_t dim() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  // Cosine similarity, which for unit vectors is the inner product. Throws
  // kDimensionMismatch when the dimensions differ.
  double Cosine(const EmbeddingVector &other) const;

  friend bool operator==(const EmbeddingVector &,
                         const EmbeddingVector &) = default;

 private:
  explicit EmbeddingVector(std::vector<double> values)
      : values_(std::move(values)) {}

  std::vector<double> values_;
};

}  // namespace labeler

#endif  // LABELER_EMBEDDING_H_
