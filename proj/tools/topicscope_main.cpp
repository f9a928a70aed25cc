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

// topicscope: fit a topic model to a venue/year-tagged corpus and export
// venue similarity, uniqueness, dynamics and trend tables.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "topicscope/error.hpp"
#include "topicscope/lda.hpp"
#include "topicscope/pipeline.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct Flags {
    std::string config;
    std::string corpus;
    std::string stopwords;
    std::string out;
    std::optional<std::size_t> topics;
    std::optional<double> alpha;
    std::optional<std::uint64_t> seed;
    std::string backend;
    std::string exclude_topics;
    std::vector<std::string> windows;
    std::optional<std::size_t> min_term_count;
    std::optional<std::size_t> min_doc_words;
    std::optional<std::size_t> top_terms;
};

void add_common(CLI::App* cmd, Flags& f)
{
    cmd->add_option("--config", f.config, "Flat key = value settings file (flags win)");
    cmd->add_option("--corpus", f.corpus, "Corpus file, one JSON record per line");
    cmd->add_option("--stopwords", f.stopwords, "Stopword list, one term per line (default: SMART)");
    cmd->add_option("--out", f.out, "Output directory for all artifacts");
    cmd->add_option("--topics", f.topics, "Number of topics K");
    cmd->add_option("--alpha", f.alpha, "Dirichlet prior on topic proportions");
    cmd->add_option("--seed", f.seed, "Random seed");
    cmd->add_option("--backend", f.backend, "variational-em | collapsed-gibbs");
    cmd->add_option("--exclude-topics", f.exclude_topics, "Comma-separated 1-based topics to mask");
    cmd->add_option("--window", f.windows, "Year window A:B (give two)");
    cmd->add_option("--min-term-count", f.min_term_count, "Drop terms rarer than this");
    cmd->add_option("--min-doc-words", f.min_doc_words, "Drop documents shorter than this");
    cmd->add_option("--top-terms", f.top_terms, "Terms per topic in the wordcloud export");
}

topicscope::PipelineConfig resolve(const Flags& f)
{
    topicscope::PipelineConfig config;
    if (!f.config.empty())
        topicscope::apply_settings(config, topicscope::read_settings_file(f.config));

    std::map<std::string, std::string> s;
    if (!f.corpus.empty())
        s["corpus"] = f.corpus;
    if (!f.stopwords.empty())
        s["stopwords"] = f.stopwords;
    if (!f.out.empty())
        s["out"] = f.out;
    if (f.topics)
        s["topics"] = std::to_string(*f.topics);
    if (f.seed)
        s["seed"] = std::to_string(*f.seed);
    if (!f.backend.empty())
        s["backend"] = f.backend;
    if (!f.exclude_topics.empty())
        s["exclude_topics"] = f.exclude_topics;
    if (f.min_term_count)
        s["min_term_count"] = std::to_string(*f.min_term_count);
    if (f.min_doc_words)
        s["min_doc_words"] = std::to_string(*f.min_doc_words);
    if (f.top_terms)
        s["top_terms"] = std::to_string(*f.top_terms);
    if (!f.windows.empty()) {
        std::string joined;
        for (const auto& w : f.windows)
            joined += (joined.empty() ? "" : ",") + w;
        s["windows"] = joined;
    }
    topicscope::apply_settings(config, s);
    if (f.alpha)
        config.lda.alpha = *f.alpha;
    config.validate();
    return config;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Topic-model analytics for venue- and year-tagged document corpora"};
    app.require_subcommand(1);
    Flags flags;
    std::string abstract_path;
    std::string recommend_out;

    auto* preprocess = app.add_subcommand("preprocess", "Tokenize the corpus and build the document-term matrix");
    auto* train = app.add_subcommand("train", "Fit the topic model");
    auto* analyze = app.add_subcommand("analyze", "Write every analysis export");
    auto* recommend = app.add_subcommand("recommend", "Rank venues for a new abstract");
    for (auto* cmd : {preprocess, train, analyze, recommend})
        add_common(cmd, flags);
    recommend->add_option("--abstract", abstract_path, "Text file holding the abstract")->required();
    recommend->add_option("--output", recommend_out, "Write the ranking here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        const topicscope::PipelineConfig config = resolve(flags);
        if (preprocess->parsed()) {
            const auto s = topicscope::cmd_preprocess(config);
            std::printf("documents read %zu, kept %zu, dropped %zu; vocabulary V = %zu\n", s.documents_read,
                        s.documents_kept, s.documents_dropped, s.vocabulary_size);
        } else if (train->parsed()) {
            const auto s = topicscope::cmd_train(config);
            std::printf("K = %zu, %s after %zu iterations, final bound %.6f\n", s.num_topics,
                        s.converged ? "converged" : "NOT converged", s.iterations, s.final_elbo);
        } else if (analyze->parsed()) {
            const auto s = topicscope::cmd_analyze(config);
            std::printf("%zu venues, %zu years; wrote %zu files under %s\n", s.venues, s.years, s.files.size(),
                        (config.out / "analysis").c_str());
        } else if (recommend->parsed()) {
            const auto ranked = topicscope::cmd_recommend(config, abstract_path);
            if (recommend_out.empty()) {
                topicscope::write_recommendations_csv(std::cout, ranked);
            } else {
                std::ofstream out(recommend_out);
                if (!out)
                    throw std::runtime_error("cannot write " + recommend_out);
                topicscope::write_recommendations_csv(out, ranked);
            }
        }
    } catch (const topicscope::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRuntime;
    }
    return 0;
}
