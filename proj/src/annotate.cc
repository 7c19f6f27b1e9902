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

#include "labeler/annotate.h"

#include <charconv>
#include <chrono>
#include <ctime>

namespace labeler {
namespace {

std::string Trim(const std::string &s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

std::string UtcTimestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

AnnotateSummary RunAnnotation(const Corpus &corpus, const LabelSpace &space,
                              AnnotationStore &store, std::istream &in,
                              std::ostream &out, const AnnotateOptions &options) {
  const std::string space_id = space.Id();
  const auto clock = options.clock ? options.clock : UtcTimestamp;
  AnnotateSummary summary;
  std::size_t pending = 0;
  for (const Document &doc : corpus.documents()) {
    if (!store.Contains(space_id, doc.id)) ++pending;
  }
  summary.resumed = corpus.size() - pending;
  if (summary.resumed > 0) {
    out << summary.resumed << " document(s) already annotated; resuming.\n";
  }

  std::size_t shown = 0;
  for (const Document &doc : corpus.documents()) {
    if (store.Contains(space_id, doc.id)) continue;
    ++shown;
    out << "\n[" << shown << "/" << pending << "] " << doc.id << " (" << doc.year
        << ")\n"
        << doc.clean_text << "\n\n";
    for (std::size_t i = 0; i < space.size(); ++i) {
      out << "  " << (i + 1) << ". " << space.labels()[i].name << "\n";
    }
    while (true) {
      out << "Label number, s to leave unlabeled, q to quit: " << std::flush;
      std::string line;
      if (!std::getline(in, line)) {
        summary.quit = true;
        return summary;
      }
      const std::string answer = Trim(line);
      if (answer == "q") {
        summary.quit = true;
        return summary;
      }
      std::string label;
      if (answer == "s") {
        label = kUnlabeled;
      } else {
        std::size_t choice = 0;
        const auto [ptr, ec] = std::from_chars(
            answer.data(), answer.data() + answer.size(), choice);
        if (ec != std::errc() || ptr != answer.data() + answer.size() ||
            choice < 1 || choice > space.size()) {
          out << "Please enter a number between 1 and " << space.size()
              << ", s or q.\n";
          continue;
        }
        label = space.labels()[choice - 1].name;
      }
      store.Append({space_id, doc.id, label, options.annotator, clock()});
      if (label == kUnlabeled) {
        ++summary.unlabeled;
      } else {
        ++summary.labeled;
      }
      break;
    }
  }
  out << "\nAll documents annotated.\n";
  return summary;
}

}  // namespace labeler
