// Copyright 2026 The topicscope Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TOPICSCOPE_SYNTHETIC_HPP
#define TOPICSCOPE_SYNTHETIC_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "topicscope/corpus.hpp"
#include "topicscope/numeric.hpp"

namespace topicscope::synthetic {

// Corpus whose topics have disjoint vocabulary blocks; every document is
// drawn from exactly one topic.
struct BlockCorpusSpec {
    std::size_t num_topics = 5;
    std::size_t terms_per_topic = 50;
    std::size_t num_docs = 500;
    std::size_t min_length = 40;
    std::size_t max_length = 80;
    std::uint64_t seed = 7;
};

struct BlockCorpus {
    DocumentTermMatrix dtm;
    Matrix topics;                       // planted K x V term distributions
    std::vector<std::size_t> doc_topic;  // planted topic of each document
};

BlockCorpus block_corpus(const BlockCorpusSpec& spec);

// Greedy matching: repeatedly pair the closest (Hellinger) unmatched fitted
// and planted rows. Returns planted index -> fitted index.
std::vector<std::size_t> match_topics(const Matrix& planted, const Matrix& fitted);

// Ten research topics with twenty characteristic words each, plus generic
// filler vocabulary shared by every document.
const std::vector<std::vector<std::string>>& demo_topic_words();
const std::vector<std::string>& demo_filler_words();

struct DemoCorpusSpec {
    std::size_t docs_per_venue_year = 10;
    int first_year = 1995;
    int last_year = 2014;
    std::uint64_t seed = 2024;
};

// Planted structure of the demo corpus. Venue i ("J01".."J10") favours
// topic i. One venue stops publishing for a few years; another takes up a
// second topic half way through the series.
struct DemoTruth {
    std::vector<std::string> venues;
    std::string gap_venue;
    int gap_first = 0;
    int gap_last = 0;
    std::string shift_venue;
    std::size_t shift_topic = 0;
    int shift_year = 0;
};

struct DemoCorpus {
    std::vector<Document> docs;
    DemoTruth truth;
};

DemoCorpus demo_corpus(const DemoCorpusSpec& spec = {});

// A short abstract written mostly from one demo topic's words.
std::string topic_abstract(std::size_t topic, std::size_t length, std::mt19937_64& rng);

// One JSON object per line in the corpus input format.
std::string to_json_lines(const std::vector<Document>& docs);

}  // namespace topicscope::synthetic

#endif  // TOPICSCOPE_SYNTHETIC_HPP
