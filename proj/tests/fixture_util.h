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

#ifndef LABELER_TESTS_FIXTURE_UTIL_H_
#define LABELER_TESTS_FIXTURE_UTIL_H_

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "labeler/embedding.h"
#include "labeler/io.h"
#include "labeler/labelspace.h"

namespace labeler::testing {

inline std::filesystem::path FixturePath(std::string_view name) {
  return std::filesystem::path(LABELER_SOURCE_DIR) / "fixtures" / name;
}

inline std::filesystem::path DataPath(std::string_view name) {
  return std::filesystem::path(LABELER_SOURCE_DIR) / "data" / name;
}

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("labeler-test-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path &path() const { return path_; }
  std::filesystem::path operator/(std::string_view name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

inline EmbeddingVector Unit(std::vector<double> v) {
  return EmbeddingVector::Normalize(std::move(v));
}

inline double UniformDouble(std::mt19937_64 &gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Random unit vector from normal-ish coordinates (sum of uniforms).
inline EmbeddingVector RandomUnit(std::mt19937_64 &gen, std::size_t dim) {
  std::vector<double> v(dim);
  for (double &x : v) {
    x = UniformDouble(gen) + UniformDouble(gen) + UniformDouble(gen) - 1.5;
  }
  return Unit(std::move(v));
}

// Gold labels for the planted corpus: each document gets the label whose
// name contains a word from its topic vocabulary. Topics with no such label
// are left out, so a broken space shows up as missing gold.
inline std::map<std::string, std::string> PlantedGold(const LabelSpace &space) {
  const auto truth = ReadJsonFile(FixturePath("planted_truth.json"));
  std::map<std::string, std::string> topic_label;
  for (const Label &label : space.labels()) {
    for (const auto &[topic, words] : truth.at("vocabularies").items()) {
      for (const auto &w : words) {
        if (label.name.find(w.get<std::string>()) != std::string::npos &&
            !topic_label.contains(topic)) {
          topic_label[topic] = label.name;
        }
      }
    }
  }
  std::map<std::string, std::string> gold;
  for (const auto &[id, topic] : truth.at("documents").items()) {
    auto it = topic_label.find(topic.get<std::string>());
    if (it != topic_label.end()) gold[id] = it->second;
  }
  return gold;
}

}  // namespace labeler::testing

#endif  // LABELER_TESTS_FIXTURE_UTIL_H_
