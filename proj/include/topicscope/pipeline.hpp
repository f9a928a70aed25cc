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

#ifndef TOPICSCOPE_PIPELINE_HPP
#define TOPICSCOPE_PIPELINE_HPP

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "topicscope/aggregate.hpp"
#include "topicscope/dynamics.hpp"
#include "topicscope/lda.hpp"

namespace topicscope {

struct PipelineConfig {
    std::filesystem::path corpus;
    std::filesystem::path stopwords;  // empty: bundled SMART list
    std::filesystem::path out = "topicscope-out";

    std::size_t min_term_count = 3;
    std::size_t min_doc_words = 10;
    LdaConfig lda;

    TopicMask excluded_topics;      // 0-based; 1-based on the command line
    std::vector<YearRange> windows;  // two windows, or empty for the default split
    std::size_t top_terms = 20;
    double slope_eps = 0.0;

    // Throws ValidationError on inconsistent settings. Paths are checked by
    // the commands that read them.
    void validate() const;
};

// Applies flat `key = value` settings (the config file keys) on top of
// `config`. Unknown keys throw ValidationError.
void apply_settings(PipelineConfig& config, const std::map<std::string, std::string>& settings);

// Parses a config file: one `key = value` per line, `#` starts a comment.
std::map<std::string, std::string> read_settings_file(const std::filesystem::path& path);

// "A:B" with A <= B.
YearRange parse_window(const std::string& text);
// Comma-separated 1-based topic numbers.
TopicMask parse_topic_list(const std::string& text);

// Artifact locations under the output directory.
struct ArtifactPaths {
    std::filesystem::path root;

    std::filesystem::path preprocess() const { return root / "preprocess"; }
    std::filesystem::path dtm() const { return preprocess() / "dtm.txt"; }
    std::filesystem::path vocab() const { return preprocess() / "vocab.txt"; }
    std::filesystem::path docs() const { return preprocess() / "docs.csv"; }
    std::filesystem::path dropped() const { return preprocess() / "dropped.txt"; }
    std::filesystem::path model_dir() const { return root / "model"; }
    std::filesystem::path model() const { return model_dir() / "model.txt"; }
    std::filesystem::path elbo() const { return model_dir() / "elbo.csv"; }
    std::filesystem::path analysis() const { return root / "analysis"; }
};

struct PreprocessSummary {
    std::size_t documents_read = 0;
    std::size_t documents_kept = 0;
    std::size_t documents_dropped = 0;
    std::size_t vocabulary_size = 0;
};

struct TrainSummary {
    std::size_t num_topics = 0;
    std::size_t iterations = 0;
    bool converged = false;
    double final_elbo = 0.0;
};

struct AnalyzeSummary {
    std::size_t venues = 0;
    std::size_t years = 0;
    std::vector<std::filesystem::path> files;
};

struct VenueMatch {
    std::string venue;
    double distance = 0.0;
};

PreprocessSummary cmd_preprocess(const PipelineConfig& config);
TrainSummary cmd_train(const PipelineConfig& config);
AnalyzeSummary cmd_analyze(const PipelineConfig& config);
// Venues ranked by Hellinger distance between their composite and the
// abstract's inferred topic proportions; ties ordered by venue key.
std::vector<VenueMatch> cmd_recommend(const PipelineConfig& config,
                                      const std::filesystem::path& abstract_path);

// Reads the preprocess artifacts back into a matrix.
DocumentTermMatrix load_dtm(const ArtifactPaths& paths);

void write_recommendations_csv(std::ostream& out, const std::vector<VenueMatch>& ranked);

}  // namespace topicscope

#endif  // TOPICSCOPE_PIPELINE_HPP
