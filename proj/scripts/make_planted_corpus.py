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
"""Generates the planted-topic corpus used by the end-to-end tests.

Every document draws its content words from exactly one of four disjoint
topic vocabularies. All other words are English or domain stopwords, so
every keyword candidate comes from the document's own topic.

usage: make_planted_corpus.py OUT_DIR
"""
import json
import random
import sys

ROOT = __file__.rsplit("/scripts/", 1)[0]

TOPICS = {
    "propulsion": ["ion thruster", "hall effect", "xenon propellant",
                   "plasma plume", "grid erosion", "cathode lifetime"],
    "earth_observation": ["lidar canopy", "hyperspectral imager",
                          "coastal phytoplankton", "forest biomass",
                          "radiometer calibration", "sediment turbidity"],
    "life_support": ["water recovery", "osmosis membrane", "brine concentrate",
                     "urine processor", "humidity condensate",
                     "oxygen generation"],
    "thermal_protection": ["ablative heatshield", "phenolic resin", "arc jet",
                           "carbon felt", "recession sensor", "entry heating"],
}

FILLER = ["the", "of", "and", "with", "for", "this", "is", "we", "a", "an",
          "to", "in", "on", "by", "from", "which", "that", "are", "be", "will",
          "can", "also", "has", "its", "their", "into", "over", "these",
          "nasa", "space", "mission", "research", "sbir", "spacecraft",
          "future", "science"]

PREFIX = {"propulsion": "prop", "earth_observation": "eobs",
          "life_support": "life", "thermal_protection": "tprot"}
DOCS_PER_TOPIC = 15
SEED = 20260115


def load_words(path):
    words = set()
    for line in open(path, encoding="utf-8"):
        line = line.split("#", 1)[0].strip().lower()
        if line:
            words.add(line)
    return words


def filler(rng, lo, hi):
    return rng.sample(FILLER, rng.randint(lo, hi))


def sentence(rng, phrases):
    a, b = rng.sample(phrases, 2)
    words = filler(rng, 1, 3) + a.split() + filler(rng, 1, 3) + b.split()
    words += filler(rng, 0, 2)
    return " ".join(words).capitalize() + "."


def main():
    out_dir = sys.argv[1]
    stop = (load_words(f"{ROOT}/data/english_stopwords.txt")
            | load_words(f"{ROOT}/data/domain_stopwords.txt"))
    missing = [w for w in FILLER if w not in stop]
    assert not missing, f"filler words that are not stopwords: {missing}"
    seen = {}
    for topic, phrases in TOPICS.items():
        for word in " ".join(phrases).split():
            assert word not in stop, f"topic word {word!r} is a stopword"
            assert seen.setdefault(word, topic) == topic, f"{word!r} shared"

    rng = random.Random(SEED)
    records, truth = [], {}
    for topic, phrases in TOPICS.items():
        for i in range(DOCS_PER_TOPIC):
            doc_id = f"{PREFIX[topic]}-{i + 1:02d}"
            text = " ".join(sentence(rng, phrases)
                            for _ in range(rng.randint(6, 8)))
            records.append({"id": doc_id, "year": 2010 + i % 6,
                            "title": rng.choice(phrases).title(),
                            "abstract": text})
            truth[doc_id] = topic
    rng.shuffle(records)

    with open(f"{out_dir}/planted_corpus.jsonl", "w", encoding="utf-8") as f:
        for record in records:
            f.write(json.dumps(record) + "\n")
    with open(f"{out_dir}/planted_truth.json", "w", encoding="utf-8") as f:
        vocab = {t: sorted(set(" ".join(p).split())) for t, p in TOPICS.items()}
        json.dump({"seed": SEED, "vocabularies": vocab, "documents": truth},
                  f, indent=2, sort_keys=True)
        f.write("\n")


if __name__ == "__main__":
    main()
