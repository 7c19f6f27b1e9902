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

#ifndef LABELER_ENGLISH_STOPWORDS_H_
#define LABELER_ENGLISH_STOPWORDS_H_

#include "labeler/corpus.h"

namespace labeler {

// General English stopword list (the 318-word Glasgow IR list). Keyword
// candidates may not begin or end with one of these.
const StopwordSet &EnglishStopwords();

}  // namespace labeler

#endif  // LABELER_ENGLISH_STOPWORDS_H_
