#!/usr/bin/env python3
# Copyright 2026 The Labeler Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Freezes reference keyword rankings for the extraction fidelity test.

Runs the yake package (0.7.3) over the preprocessed text of each abstract and
writes the top candidates per document. Preprocessing is re-implemented here
so the oracle does not depend on the C++ code.

usage: reference_yake.py ABSTRACTS.jsonl OUT.json
"""
import importlib.metadata
import json
import string
import sys

import yake

ROOT = __file__.rsplit("/scripts/", 1)[0]
CLAUSE = set(".,;:!?")


def load_words(path):
    words = set()
    for line in open(path, encoding="utf-8"):
        line = line.split("#", 1)[0].strip().lower()
        if line:
            words.add(line)
    return words


def clean(raw, stopwords):
    kept = []
    for token in raw.split():
        form = token.lower().strip(string.punctuation)
        if not form or form not in stopwords:
            kept.append(token.lower())
            continue
        trailing = [c for c in token[len(token.rstrip(string.punctuation)):]
                    if c in CLAUSE]
        if trailing and kept and kept[-1][-1] not in CLAUSE:
            kept[-1] += trailing[0]
    return " ".join(kept)


def main():
    src, out = sys.argv[1], sys.argv[2]
    domain = load_words(f"{ROOT}/data/domain_stopwords.txt")
    english = load_words(f"{ROOT}/data/english_stopwords.txt")
    extractor = yake.KeywordExtractor(lan="en", n=3, top=10, dedup_lim=0.9,
                                      dedup_func="levs", window_size=1,
                                      stopwords=english)
    result = {}
    for line in open(src, encoding="utf-8"):
        record = json.loads(line)
        text = clean(record["abstract"], domain)
        ranked = extractor.extract_keywords(text)
        result[record["id"]] = [kw for kw, _ in ranked]
    with open(out, "w", encoding="utf-8") as f:
        json.dump({"yake_version": importlib.metadata.version("yake"),
                   "top": result}, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
