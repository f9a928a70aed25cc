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

#ifndef TOPICSCOPE_CORPUS_HPP
#define TOPICSCOPE_CORPUS_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "topicscope/stopwords.hpp"

namespace topicscope {

inline constexpr int kMinYear = 1900;
inline constexpr int kMaxYear = 2100;

struct Document {
    std::string id;
    std::string venue;
    int year = 0;
    std::string text;
};

// (id, venue, year) tags carried alongside every matrix row.
struct DocMeta {
    std::string id;
    std::string venue;
    int year = 0;

    bool operator==(const DocMeta&) const = default;
};

struct TokenizedDocument {
    DocMeta meta;
    std::vector<std::string> tokens;
};

enum class CorpusFormat {
    // One JSON object per line: {"id", "journal", "title"?, "year", "abstract"}.
    JsonLines,
};

// Reads a corpus file. Blank lines are skipped; any malformed record or
// duplicate id throws InputError naming the 1-based line number.
std::vector<Document> load_corpus(const std::filesystem::path& path,
                                  CorpusFormat format = CorpusFormat::JsonLines);
std::vector<Document> parse_corpus(std::istream& in, CorpusFormat format = CorpusFormat::JsonLines);

std::vector<TokenizedDocument> tokenize_corpus(std::span<const Document> docs,
                                               const StopwordSet& stopwords);

class Vocabulary {
public:
    Vocabulary() = default;
    // `terms` must be unique; positions follow the given order.
    explicit Vocabulary(std::vector<std::string> terms);

    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    const std::string& term(std::size_t i) const { return terms_.at(i); }
    const std::vector<std::string>& terms() const { return terms_; }
    std::optional<std::size_t> find(const std::string& term) const;

    bool operator==(const Vocabulary& other) const { return terms_ == other.terms_; }

private:
    std::vector<std::string> terms_;
    std::unordered_map<std::string, std::size_t> index_;
};

// Keeps terms occurring at least `min_term_count` times across `docs`,
// ordered lexicographically. Throws ValidationError if nothing survives.
Vocabulary build_vocabulary(std::span<const TokenizedDocument> docs, std::size_t min_term_count = 3);

struct TermCount {
    std::uint32_t term = 0;
    std::uint32_t count = 0;

    bool operator==(const TermCount&) const = default;
};

// Sorted by term index, no duplicates.
using SparseRow = std::vector<TermCount>;

std::size_t row_length(const SparseRow& row);

struct DocumentTermMatrix {
    std::vector<SparseRow> rows;
    std::vector<DocMeta> docs;
    Vocabulary vocab;

    std::size_t num_docs() const { return rows.size(); }
    std::size_t num_terms() const { return vocab.size(); }
};

struct DtmBuild {
    DocumentTermMatrix dtm;
    std::vector<std::string> dropped_ids;
};

// Drops out-of-vocabulary tokens, then documents with fewer than
// `min_doc_words` surviving tokens. Throws ValidationError if every
// document is dropped.
DtmBuild to_dtm(std::span<const TokenizedDocument> docs, const Vocabulary& vocab,
                std::size_t min_doc_words = 10);

// Counts the in-vocabulary tokens of a single document.
SparseRow to_sparse_row(std::span<const std::string> tokens, const Vocabulary& vocab);

// Sparse triplet text layout:
//   D V
//   doc term count      (one line per nonzero, rows in order, terms ascending)
void write_triplets(std::ostream& out, const DocumentTermMatrix& dtm);
std::vector<SparseRow> read_triplets(std::istream& in, std::size_t expected_terms);

// One term per line.
void write_vocabulary(std::ostream& out, const Vocabulary& vocab);
Vocabulary read_vocabulary(std::istream& in);

// CSV with header `index,id,journal,year`.
void write_doc_meta(std::ostream& out, std::span<const DocMeta> docs);
std::vector<DocMeta> read_doc_meta(std::istream& in);

}  // namespace topicscope

#endif  // TOPICSCOPE_CORPUS_HPP
