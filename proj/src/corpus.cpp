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

#include "topicscope/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "topicscope/csv.hpp"
#include "topicscope/error.hpp"
#include "topicscope/tokenizer.hpp"

namespace topicscope {

namespace {

std::string line_error(std::size_t line, const std::string& what)
{
    return "corpus line " + std::to_string(line) + ": " + what;
}

std::string required_string(const nlohmann::json& rec, const char* key, std::size_t line)
{
    const auto it = rec.find(key);
    if (it == rec.end())
        throw InputError(line_error(line, std::string("missing field '") + key + "'"));
    if (!it->is_string())
        throw InputError(line_error(line, std::string("field '") + key + "' must be a string"));
    return it->get<std::string>();
}

Document parse_record(const std::string& text, std::size_t line)
{
    nlohmann::json rec;
    try {
        rec = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(line_error(line, std::string("invalid JSON: ") + e.what()));
    }
    if (!rec.is_object())
        throw InputError(line_error(line, "record must be a JSON object"));

    Document doc;
    doc.id = required_string(rec, "id", line);
    doc.venue = required_string(rec, "journal", line);
    doc.text = required_string(rec, "abstract", line);
    if (const auto t = rec.find("title"); t != rec.end() && !t->is_string() && !t->is_null())
        throw InputError(line_error(line, "field 'title' must be a string"));

    const auto y = rec.find("year");
    if (y == rec.end())
        throw InputError(line_error(line, "missing field 'year'"));
    if (!y->is_number_integer())
        throw InputError(line_error(line, "field 'year' must be an integer"));
    const auto year = y->get<long long>();
    if (year < kMinYear || year > kMaxYear)
        throw InputError(line_error(line, "year " + std::to_string(year) + " outside [" +
                                              std::to_string(kMinYear) + ", " +
                                              std::to_string(kMaxYear) + "]"));
    doc.year = static_cast<int>(year);

    if (doc.id.empty())
        throw InputError(line_error(line, "empty id"));
    if (doc.venue.empty())
        throw InputError(line_error(line, "empty journal"));
    if (doc.text.empty())
        throw InputError(line_error(line, "empty abstract"));
    return doc;
}

}  // namespace

std::vector<Document> parse_corpus(std::istream& in, CorpusFormat format)
{
    if (format != CorpusFormat::JsonLines)
        throw ValidationError("unsupported corpus format");
    std::vector<Document> docs;
    std::unordered_set<std::string> seen;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (text.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        Document doc = parse_record(text, line);
        if (!seen.insert(doc.id).second)
            throw InputError(line_error(line, "duplicate id '" + doc.id + "'"));
        docs.push_back(std::move(doc));
    }
    if (in.bad())
        throw InputError("read error after corpus line " + std::to_string(line));
    return docs;
}

std::vector<Document> load_corpus(const std::filesystem::path& path, CorpusFormat format)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open corpus file: " + path.string());
    return parse_corpus(in, format);
}

std::vector<TokenizedDocument> tokenize_corpus(std::span<const Document> docs,
                                               const StopwordSet& stopwords)
{
    std::vector<TokenizedDocument> out;
    out.reserve(docs.size());
    for (const Document& d : docs)
        out.push_back({{d.id, d.venue, d.year}, tokenize(d.text, stopwords)});
    return out;
}

Vocabulary::Vocabulary(std::vector<std::string> terms) : terms_(std::move(terms))
{
    index_.reserve(terms_.size());
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (!index_.emplace(terms_[i], i).second)
            throw ValidationError("duplicate vocabulary term '" + terms_[i] + "'");
    }
}

std::optional<std::size_t> Vocabulary::find(const std::string& term) const
{
    const auto it = index_.find(term);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

Vocabulary build_vocabulary(std::span<const TokenizedDocument> docs, std::size_t min_term_count)
{
    if (min_term_count < 1)
        throw ValidationError("min_term_count must be >= 1");
    std::map<std::string, std::size_t> counts;
    for (const auto& d : docs)
        for (const auto& t : d.tokens)
            ++counts[t];
    std::vector<std::string> terms;
    for (const auto& [term, n] : counts)
        if (n >= min_term_count)
            terms.push_back(term);
    if (terms.empty())
        throw ValidationError("empty vocabulary: no term occurs at least " +
                              std::to_string(min_term_count) + " times");
    return Vocabulary(std::move(terms));
}

std::size_t row_length(const SparseRow& row)
{
    std::size_t n = 0;
    for (const auto& tc : row)
        n += tc.count;
    return n;
}

SparseRow to_sparse_row(std::span<const std::string> tokens, const Vocabulary& vocab)
{
    std::map<std::uint32_t, std::uint32_t> counts;
    for (const auto& t : tokens)
        if (const auto idx = vocab.find(t))
            ++counts[static_cast<std::uint32_t>(*idx)];
    SparseRow row;
    row.reserve(counts.size());
    for (const auto& [term, n] : counts)
        row.push_back({term, n});
    return row;
}

DtmBuild to_dtm(std::span<const TokenizedDocument> docs, const Vocabulary& vocab,
                std::size_t min_doc_words)
{
    if (min_doc_words < 1)
        throw ValidationError("min_doc_words must be >= 1");
    DtmBuild out;
    out.dtm.vocab = vocab;
    for (const auto& d : docs) {
        SparseRow row = to_sparse_row(d.tokens, vocab);
        if (row_length(row) < min_doc_words) {
            out.dropped_ids.push_back(d.meta.id);
            continue;
        }
        out.dtm.rows.push_back(std::move(row));
        out.dtm.docs.push_back(d.meta);
    }
    if (out.dtm.rows.empty())
        throw ValidationError("all documents dropped: none has " + std::to_string(min_doc_words) +
                              " in-vocabulary words");
    return out;
}

void write_triplets(std::ostream& out, const DocumentTermMatrix& dtm)
{
    out << dtm.num_docs() << ' ' << dtm.num_terms() << '\n';
    for (std::size_t d = 0; d < dtm.rows.size(); ++d)
        for (const auto& tc : dtm.rows[d])
            out << d << ' ' << tc.term << ' ' << tc.count << '\n';
}

std::vector<SparseRow> read_triplets(std::istream& in, std::size_t expected_terms)
{
    std::size_t num_docs = 0, num_terms = 0;
    if (!(in >> num_docs >> num_terms))
        throw InputError("document-term matrix: missing 'D V' header");
    if (num_terms != expected_terms)
        throw InputError("document-term matrix has V=" + std::to_string(num_terms) +
                         " but vocabulary has " + std::to_string(expected_terms) + " terms");
    std::vector<SparseRow> rows(num_docs);
    std::size_t d = 0, t = 0, c = 0;
    while (in >> d >> t >> c) {
        if (d >= num_docs || t >= num_terms || c == 0)
            throw InputError("document-term matrix: invalid triplet " + std::to_string(d) + ' ' +
                             std::to_string(t) + ' ' + std::to_string(c));
        auto& row = rows[d];
        if (!row.empty() && row.back().term >= t)
            throw InputError("document-term matrix: terms not ascending in row " + std::to_string(d));
        row.push_back({static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(c)});
    }
    if (!in.eof())
        throw InputError("document-term matrix: trailing garbage");
    return rows;
}

void write_vocabulary(std::ostream& out, const Vocabulary& vocab)
{
    for (const auto& t : vocab.terms())
        out << t << '\n';
}

Vocabulary read_vocabulary(std::istream& in)
{
    std::vector<std::string> terms;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty())
            terms.push_back(line);
    return Vocabulary(std::move(terms));
}

void write_doc_meta(std::ostream& out, std::span<const DocMeta> docs)
{
    out << "index,id,journal,year\n";
    for (std::size_t i = 0; i < docs.size(); ++i)
        out << i << ',' << csv::escape(docs[i].id) << ',' << csv::escape(docs[i].venue) << ','
            << docs[i].year << '\n';
}

std::vector<DocMeta> read_doc_meta(std::istream& in)
{
    const auto rows = csv::read(in);
    if (rows.empty() || rows.front() != std::vector<std::string>{"index", "id", "journal", "year"})
        throw InputError("document metadata: bad header");
    std::vector<DocMeta> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.size() != 4 || csv::parse_int(r[0]) != static_cast<long long>(i - 1))
            throw InputError("document metadata: malformed row " + std::to_string(i));
        out.push_back({r[1], r[2], static_cast<int>(csv::parse_int(r[3]))});
    }
    return out;
}

}  // namespace topicscope
