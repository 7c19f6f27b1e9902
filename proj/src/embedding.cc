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

#include "labeler/embedding.h"

#include <cmath>
#include <string>

#include "labeler/error.h"

namespace labeler {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kDuplicate: return "duplicate";
    case ErrorCode::kPrecondition: return "precondition_failed";
    case ErrorCode::kDimensionMismatch: return "dimension_mismatch";
    case ErrorCode::kProvider: return "provider_error";
    case ErrorCode::kIo: return "io_error";
  }
  return "unknown";
}

double Dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "dot product of vectors with dimensions " +
                    std::to_string(a.size()) + " and " +
                    std::to_string(b.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double Norm(std::span<const double> a) { return std::sqrt(Dot(a, a)); }

EmbeddingVector EmbeddingVector::Normalize(std::vector<double> raw) {
  if (raw.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot normalize empty vector");
  }
  for (double x : raw) {
    if (!std::isfinite(x)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "embedding contains a non-finite value");
    }
  }
  const double norm = Norm(raw);
  if (norm == 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "cannot normalize zero vector");
  }
  for (double &x : raw) x /= norm;
  return EmbeddingVector(std::move(raw));
}

EmbeddingVector EmbeddingVector::FromUnit(std::vector<double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty embedding");
  }
  const double norm = Norm(values);
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kUnitNormTolerance) {
    throw Error(ErrorCode::kInvalidArgument,
                "embedding is not unit norm (norm " + std::to_string(norm) +
                    ")");
  }
  return EmbeddingVector(std::move(values));
}

double EmbeddingVector::Cosine(const EmbeddingVector &other) const {
  return Dot(values_, other.values_);
}

}  // namespace labeler
