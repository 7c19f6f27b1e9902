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

#ifndef LABELER_ANNOTATE_H_
#define LABELER_ANNOTATE_H_

#include <cstddef>
#include <functional>
#include <istream>
#include <ostream>
#include <string>

#include "labeler/corpus.h"
#include "labeler/evaluation.h"
#include "labeler/labelspace.h"

namespace labeler {

struct AnnotateOptions {
  std::string annotator = "anonymous";
  // Returns the timestamp stored with each annotation; UTC now by default.
  std::function<std::string()> clock;
};

struct AnnotateSummary {
  std::size_t labeled = 0;
  std::size_t unlabeled = 0;
  // Documents already in the store for this space and not shown again.
  std::size_t resumed = 0;
  bool quit = false;
};

// Shows each document not yet annotated against `space` with the numbered
// label list and reads one answer per document: a label number, "s" to
// leave it unlabeled, or "q" (or end of input) to stop. Anything else
// re-prompts. Every answer is appended to the store immediately.
AnnotateSummary RunAnnotation(const Corpus &corpus, const LabelSpace &space,
                              AnnotationStore &store, std::istream &in,
                              std::ostream &out,
                              const AnnotateOptions &options = {});

std::string UtcTimestamp();

}  // namespace labeler

#endif  // LABELER_ANNOTATE_H_
