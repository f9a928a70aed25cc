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

#include "topicscope/pipeline.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>

#include "topicscope/cluster.hpp"
#include "topicscope/csv.hpp"
#include "topicscope/error.hpp"
#include "topicscope/stopwords.hpp"
#include "topicscope/tokenizer.hpp"
#include "topicscope/trends.hpp"

namespace fs = std::filesystem;

namespace topicscope {

void PipelineConfig::validate() const
{
    if (min_term_count < 1)
        throw ValidationError("min_term_count must be >= 1");
    if (min_doc_words < 1)
        throw ValidationError("min_doc_words must be >= 1");
    if (top_terms < 1)
        throw ValidationError("top_terms must be >= 1");
    if (!(slope_eps >= 0.0))
        throw ValidationError("slope_eps must be >= 0");
    if (!windows.empty() && windows.size() != 2)
        throw ValidationError("give exactly two windows (or none for the default split)");
    for (const auto& w : windows)
        if (w.first > w.last)
            throw ValidationError("empty window " + std::to_string(w.first) + ":" + std::to_string(w.last));
    for (std::size_t k : excluded_topics)
        if (k >= lda.num_topics)
            throw ValidationError("excluded topic " + std::to_string(k + 1) + " exceeds K = " +
                                  std::to_string(lda.num_topics));
    if (out.empty())
        throw ValidationError("output directory not set");
    lda.validate();
}

namespace {

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

long long to_integer(const std::string& key, const std::string& v)
{
    try {
        return csv::parse_int(v);
    } catch (const InputError&) {
        throw ValidationError("setting '" + key + "' expects an integer, got '" + v + "'");
    }
}

std::size_t to_count(const std::string& key, const std::string& v)
{
    const long long n = to_integer(key, v);
    if (n < 0)
        throw ValidationError("setting '" + key + "' must be non-negative");
    return static_cast<std::size_t>(n);
}

double to_real(const std::string& key, const std::string& v)
{
    try {
        return csv::parse_double(v);
    } catch (const InputError&) {
        throw ValidationError("setting '" + key + "' expects a number, got '" + v + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep))
        if (!trim(item).empty())
            out.push_back(trim(item));
    return out;
}

}  // namespace

YearRange parse_window(const std::string& text)
{
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw ValidationError("window '" + text + "' is not of the form A:B");
    YearRange r;
    r.first = static_cast<int>(to_integer("window", trim(text.substr(0, colon))));
    r.last = static_cast<int>(to_integer("window", trim(text.substr(colon + 1))));
    if (r.first > r.last)
        throw ValidationError("empty window " + text);
    return r;
}

TopicMask parse_topic_list(const std::string& text)
{
    TopicMask out;
    for (const auto& item : split(text, ',')) {
        const long long k = to_integer("exclude_topics", item);
        if (k < 1)
            throw ValidationError("topic numbers start at 1, got " + item);
        out.insert(static_cast<std::size_t>(k - 1));
    }
    return out;
}

void apply_settings(PipelineConfig& config, const std::map<std::string, std::string>& settings)
{
    for (const auto& [key, value] : settings) {
        if (key == "corpus")
            config.corpus = value;
        else if (key == "stopwords")
            config.stopwords = value;
        else if (key == "out")
            config.out = value;
        else if (key == "min_term_count")
            config.min_term_count = to_count(key, value);
        else if (key == "min_doc_words")
            config.min_doc_words = to_count(key, value);
        else if (key == "topics")
            config.lda.num_topics = to_count(key, value);
        else if (key == "alpha")
            config.lda.alpha = to_real(key, value);
        else if (key == "seed")
            config.lda.seed = static_cast<std::uint64_t>(to_count(key, value));
        else if (key == "backend")
            config.lda.backend = parse_backend(value);
        else if (key == "max_em_iters")
            config.lda.max_em_iters = to_count(key, value);
        else if (key == "em_rel_tol")
            config.lda.em_rel_tol = to_real(key, value);
        else if (key == "max_doc_iters")
            config.lda.max_doc_iters = to_count(key, value);
        else if (key == "doc_rel_tol")
            config.lda.doc_rel_tol = to_real(key, value);
        else if (key == "gibbs_sweeps")
            config.lda.gibbs_sweeps = to_count(key, value);
        else if (key == "burn_in")
            config.lda.burn_in = to_count(key, value);
        else if (key == "thin")
            config.lda.thin = to_count(key, value);
        else if (key == "eta")
            config.lda.eta = to_real(key, value);
        else if (key == "exclude_topics")
            config.excluded_topics = parse_topic_list(value);
        else if (key == "windows") {
            config.windows.clear();
            for (const auto& w : split(value, ','))
                config.windows.push_back(parse_window(w));
        } else if (key == "top_terms")
            config.top_terms = to_count(key, value);
        else if (key == "slope_eps")
            config.slope_eps = to_real(key, value);
        else
            throw ValidationError("unknown setting '" + key + "'");
    }
}

std::map<std::string, std::string> read_settings_file(const fs::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open config file: " + path.string());
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        if (trim(line).empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError(path.string() + ":" + std::to_string(n) + ": expected key = value");
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

namespace {

// Exclusive ownership of an output directory for the duration of a command.
class OutputLock {
public:
    explicit OutputLock(const fs::path& dir) : path_(dir / ".topicscope.lock")
    {
        fs::create_directories(dir);
        fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
        if (fd_ < 0) {
            if (errno == EEXIST)
                throw std::runtime_error("output directory is locked by another run: " + path_.string());
            throw std::runtime_error("cannot create lock file " + path_.string() + ": " +
                                     std::strerror(errno));
        }
    }
    ~OutputLock()
    {
        ::close(fd_);
        std::error_code ec;
        fs::remove(path_, ec);
    }
    OutputLock(const OutputLock&) = delete;
    OutputLock& operator=(const OutputLock&) = delete;

private:
    fs::path path_;
    int fd_ = -1;
};

// Builds a stage directory next to its final location and swaps it in only
// when every file was written.
class StagedDirectory {
public:
    explicit StagedDirectory(fs::path target) : target_(std::move(target)), staging_(target_)
    {
        staging_ += ".partial";
        fs::remove_all(staging_);
        fs::create_directories(staging_);
    }
    ~StagedDirectory()
    {
        if (!committed_) {
            std::error_code ec;
            fs::remove_all(staging_, ec);
        }
    }
    StagedDirectory(const StagedDirectory&) = delete;
    StagedDirectory& operator=(const StagedDirectory&) = delete;

    const fs::path& path() const { return staging_; }

    void commit()
    {
        fs::remove_all(target_);
        fs::rename(staging_, target_);
        committed_ = true;
    }

private:
    fs::path target_;
    fs::path staging_;
    bool committed_ = false;
};

std::ofstream open_output(const fs::path& path)
{
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    return out;
}

std::ifstream open_input(const fs::path& path, const char* what)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError(std::string("cannot open ") + what + ": " + path.string() +
                         " (run the earlier pipeline stage first)");
    return in;
}

void close_checked(std::ofstream& out, const fs::path& path)
{
    out.close();
    if (!out)
        throw std::runtime_error("failed writing " + path.string());
}

StopwordSet stopwords_for(const PipelineConfig& config)
{
    if (config.stopwords.empty())
        return smart_stopwords();
    return load_stopwords(config.stopwords);
}

}  // namespace

DocumentTermMatrix load_dtm(const ArtifactPaths& paths)
{
    DocumentTermMatrix dtm;
    {
        auto in = open_input(paths.vocab(), "vocabulary");
        dtm.vocab = read_vocabulary(in);
    }
    {
        auto in = open_input(paths.docs(), "document metadata");
        dtm.docs = read_doc_meta(in);
    }
    auto in = open_input(paths.dtm(), "document-term matrix");
    dtm.rows = read_triplets(in, dtm.vocab.size());
    if (dtm.rows.size() != dtm.docs.size())
        throw InputError("document-term matrix and metadata disagree on the document count");
    return dtm;
}

PreprocessSummary cmd_preprocess(const PipelineConfig& config)
{
    config.validate();
    if (config.corpus.empty())
        throw ValidationError("no corpus file given");
    if (!fs::is_regular_file(config.corpus))
        throw ValidationError("corpus file not found: " + config.corpus.string());
    if (!config.stopwords.empty() && !fs::is_regular_file(config.stopwords))
        throw ValidationError("stopword file not found: " + config.stopwords.string());

    const ArtifactPaths paths{config.out};
    OutputLock lock(config.out);
    const auto docs = load_corpus(config.corpus);
    const auto tokenized = tokenize_corpus(docs, stopwords_for(config));
    const Vocabulary vocab = build_vocabulary(tokenized, config.min_term_count);
    const DtmBuild built = to_dtm(tokenized, vocab, config.min_doc_words);

    StagedDirectory stage(paths.preprocess());
    auto write = [&](const char* name, auto&& body) {
        const fs::path p = stage.path() / name;
        auto out = open_output(p);
        body(out);
        close_checked(out, p);
    };
    write("vocab.txt", [&](std::ostream& o) { write_vocabulary(o, built.dtm.vocab); });
    write("docs.csv", [&](std::ostream& o) { write_doc_meta(o, built.dtm.docs); });
    write("dtm.txt", [&](std::ostream& o) { write_triplets(o, built.dtm); });
    write("dropped.txt", [&](std::ostream& o) {
        for (const auto& id : built.dropped_ids)
            o << id << '\n';
    });
    stage.commit();

    PreprocessSummary s;
    s.documents_read = docs.size();
    s.documents_kept = built.dtm.num_docs();
    s.documents_dropped = built.dropped_ids.size();
    s.vocabulary_size = vocab.size();
    return s;
}

TrainSummary cmd_train(const PipelineConfig& config)
{
    config.validate();
    const ArtifactPaths paths{config.out};
    OutputLock lock(config.out);
    const DocumentTermMatrix dtm = load_dtm(paths);
    const TopicModel model = fit(dtm, config.lda);

    StagedDirectory stage(paths.model_dir());
    {
        const fs::path p = stage.path() / "model.txt";
        auto out = open_output(p);
        save_model(out, model);
        close_checked(out, p);
    }
    {
        const fs::path p = stage.path() / "elbo.csv";
        auto out = open_output(p);
        out << "iteration,elbo\n";
        for (std::size_t i = 0; i < model.elbo_trace.size(); ++i)
            out << i + 1 << ',' << csv::exact(model.elbo_trace[i]) << '\n';
        close_checked(out, p);
    }
    stage.commit();

    TrainSummary s;
    s.num_topics = model.num_topics();
    s.iterations = model.iterations;
    s.converged = model.converged;
    s.final_elbo = model.elbo_trace.empty() ? 0.0 : model.elbo_trace.back();
    return s;
}

namespace {

struct LoadedModel {
    TopicModel model;
    std::vector<DocMeta> docs;
    std::vector<TaggedSimplex> tagged;
};

LoadedModel load_trained(const ArtifactPaths& paths)
{
    LoadedModel m;
    {
        auto in = open_input(paths.model(), "model");
        m.model = load_model(in);
    }
    auto in = open_input(paths.docs(), "document metadata");
    m.docs = read_doc_meta(in);
    m.tagged = tag_documents(m.model, m.docs);
    return m;
}

std::vector<YearRange> default_windows(const std::vector<TaggedSimplex>& docs)
{
    int lo = kMaxYear, hi = kMinYear;
    for (const auto& d : docs) {
        lo = std::min(lo, d.year);
        hi = std::max(hi, d.year);
    }
    const int span = hi - lo + 1;
    if (span >= 10)
        return {{hi - 9, hi - 5}, {hi - 4, hi}};
    if (span == 1)
        return {{lo, hi}, {lo, hi}};
    const int mid = lo + span / 2;
    return {{lo, mid - 1}, {mid, hi}};
}

std::string window_label(const YearRange& w)
{
    return std::to_string(w.first) + ":" + std::to_string(w.last);
}

std::string file_stem(const std::string& venue, std::set<std::string>& taken)
{
    std::string s;
    for (unsigned char c : venue)
        s += (std::isalnum(c) || c == '-' || c == '_' || c == '.') ? static_cast<char>(c) : '_';
    if (s.empty() || s.front() == '.')
        s.insert(s.begin(), '_');
    std::string candidate = s;
    for (int i = 2; !taken.insert(candidate).second; ++i)
        candidate = s + "_" + std::to_string(i);
    return candidate;
}

}  // namespace

AnalyzeSummary cmd_analyze(const PipelineConfig& config)
{
    config.validate();
    const ArtifactPaths paths{config.out};
    OutputLock lock(config.out);
    const LoadedModel loaded = load_trained(paths);
    const TopicModel& model = loaded.model;
    const auto& tagged = loaded.tagged;
    const std::size_t K = model.num_topics();
    for (std::size_t k : config.excluded_topics)
        if (k >= K)
            throw ValidationError("excluded topic " + std::to_string(k + 1) + " exceeds the model's K = " +
                                  std::to_string(K));
    const auto windows = config.windows.empty() ? default_windows(tagged) : config.windows;

    const DistributionTable years = year_distribution(tagged);
    const DistributionTable venues = venue_distribution(tagged);
    const DistributionTable venue_years = venue_year_distribution(tagged);

    StagedDirectory stage(paths.analysis());
    AnalyzeSummary summary;
    summary.venues = venues.entries.size();
    summary.years = years.entries.size();
    auto write = [&](const fs::path& rel, auto&& body) {
        const fs::path p = stage.path() / rel;
        auto out = open_output(p);
        body(out);
        close_checked(out, p);
        summary.files.push_back(paths.analysis() / rel);
    };

    // Field-wide composition per year.
    write("year_topics.csv", [&](std::ostream& o) { write_table_csv(o, years); });

    // Top topics of two year windows side by side.
    std::vector<std::vector<double>> window_means;
    for (const auto& w : windows)
        window_means.push_back(window_distribution(tagged, w));
    write("window_comparison.csv", [&](std::ostream& o) {
        o << "window,rank,topic,proportion\n";
        const std::size_t top = std::min<std::size_t>(10, K);
        for (std::size_t i = 0; i < windows.size(); ++i) {
            std::vector<std::size_t> order(K);
            for (std::size_t k = 0; k < K; ++k)
                order[k] = k;
            const auto& mean = window_means[i];
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return mean[a] > mean[b]; });
            for (std::size_t r = 0; r < top; ++r)
                o << window_label(windows[i]) << ',' << r + 1 << ',' << order[r] + 1 << ','
                  << csv::number(mean[order[r]]) << '\n';
        }
    });

    // Venue heatmap, entropy and uniqueness.
    write("venue_topics.csv", [&](std::ostream& o) { write_table_csv(o, venues); });
    write("venue_entropy.csv", [&](std::ostream& o) { write_metric_csv(o, entropies(venues), true); });
    if (venues.entries.size() >= 2)
        write("venue_uniqueness.csv", [&](std::ostream& o) { write_metric_csv(o, uniqueness(venues)); });

    // Hierarchical clustering of venues.
    if (venues.entries.size() >= 2) {
        const Dendrogram tree = agglomerate_average_link(pairwise_euclidean(venues));
        write("dendrogram.nwk",
              [&](std::ostream& o) { o << export_dendrogram(tree, DendrogramFormat::Newick); });
        write("dendrogram_merges.csv",
              [&](std::ostream& o) { o << export_dendrogram(tree, DendrogramFormat::MergeTable); });
        write("dendrogram_leaves.csv", [&](std::ostream& o) {
            o << "node,venue\n";
            for (std::size_t i = 0; i < tree.leaves.size(); ++i)
                o << i << ',' << csv::escape(tree.leaves[i]) << '\n';
        });
    }

    // Uniqueness within each window, for a slopegraph.
    write("uniqueness_windows.csv", [&](std::ostream& o) {
        std::vector<std::map<std::string, double>> per_window;
        for (const auto& w : windows) {
            std::vector<TaggedSimplex> inside;
            for (const auto& d : tagged)
                if (w.contains(d.year))
                    inside.push_back(d);
            const DistributionTable t = venue_distribution(inside);
            per_window.push_back(t.entries.size() >= 2 ? uniqueness(t).values
                                                        : std::map<std::string, double>{});
        }
        o << "venue," << csv::escape("uniqueness_" + window_label(windows[0])) << ','
          << csv::escape("uniqueness_" + window_label(windows[1])) << '\n';
        for (const auto& [key, c] : venues.entries) {
            o << csv::escape(key.venue);
            for (const auto& m : per_window) {
                o << ',';
                if (const auto it = m.find(key.venue); it != m.end())
                    o << csv::number(it->second);
            }
            o << '\n';
        }
    });

    // Per-venue composition over time.
    write("venue_year_topics.csv", [&](std::ostream& o) { write_table_csv(o, venue_years); });
    {
        std::set<std::string> taken;
        std::string current;
        DistributionTable sub;
        auto flush = [&] {
            if (sub.entries.empty())
                return;
            write(fs::path("venue_years") / (file_stem(current, taken) + ".csv"),
                  [&](std::ostream& o) { write_table_csv(o, sub); });
        };
        for (const auto& [key, c] : venue_years.entries) {
            if (key.venue != current || sub.entries.empty()) {
                flush();
                current = key.venue;
                sub = DistributionTable{KeyKind::Year, K, {}};
            }
            sub.entries[GroupKey{"", key.year}] = c;
        }
        flush();
    }

    // Topic dynamics per venue plus the field-wide row.
    std::vector<TopicDynamicsReport> reports = all_venue_dynamics(venue_years, config.excluded_topics);
    const auto tally = tally_metrics(reports);
    reports.push_back(field_dynamics(years, config.excluded_topics));
    write("dynamics.csv", [&](std::ostream& o) { write_dynamics_csv(o, reports); });
    write("dynamics_tally.csv", [&](std::ostream& o) { write_tally_csv(o, tally); });

    // Uniqueness over time and its linear trend.
    const UniquenessSeries series = uniqueness_over_time(venue_years);
    write("uniqueness_over_time.csv", [&](std::ostream& o) { write_uniqueness_series_csv(o, series); });
    write("trends.csv",
          [&](std::ostream& o) { write_trends_csv(o, trend_suite(series, config.slope_eps)); });

    // Term weights for topic wordclouds.
    const std::size_t n_terms = std::min(config.top_terms, model.num_terms());
    for (std::size_t k = 0; k < K; ++k) {
        char name[32];
        std::snprintf(name, sizeof name, "topic_%02zu.csv", k + 1);
        write(fs::path("top_terms") / name, [&](std::ostream& o) {
            o << "term,probability\n";
            for (const auto& tw : top_terms(model, k, n_terms))
                o << csv::escape(tw.term) << ',' << csv::number(tw.probability) << '\n';
        });
    }

    stage.commit();
    return summary;
}

std::vector<VenueMatch> cmd_recommend(const PipelineConfig& config, const fs::path& abstract_path)
{
    config.validate();
    std::ifstream in(abstract_path);
    if (!in)
        throw ValidationError("cannot open abstract file: " + abstract_path.string());
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (text.find_first_not_of(" \t\r\n") == std::string::npos)
        throw ValidationError("abstract is empty");

    const LoadedModel loaded = load_trained(ArtifactPaths{config.out});
    const auto tokens = tokenize(text, stopwords_for(config));
    const std::vector<double> theta = infer_document(loaded.model, tokens);
    const DistributionTable venues = venue_distribution(loaded.tagged);

    std::vector<VenueMatch> ranked;
    for (const auto& [key, c] : venues.entries)
        ranked.push_back({key.venue, hellinger(theta, c.mean)});
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const VenueMatch& a, const VenueMatch& b) { return a.distance < b.distance; });
    return ranked;
}

void write_recommendations_csv(std::ostream& out, const std::vector<VenueMatch>& ranked)
{
    out << "rank,venue,hellinger\n";
    for (std::size_t i = 0; i < ranked.size(); ++i)
        out << i + 1 << ',' << csv::escape(ranked[i].venue) << ',' << csv::number(ranked[i].distance)
            << '\n';
}

}  // namespace topicscope
