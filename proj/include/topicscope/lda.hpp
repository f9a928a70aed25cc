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

#ifndef TOPICSCOPE_LDA_HPP
#define TOPICSCOPE_LDA_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "topicscope/corpus.hpp"
#include "topicscope/numeric.hpp"

namespace topicscope {

enum class Backend {
    VariationalEm,
    CollapsedGibbs,
};

enum class TopicInit {
    // Topics seeded from well-separated documents (k-means++ style D^2
    // sampling, best of several draws), blended with a Dirichlet draw.
    SpreadDocuments,
    // Independent Dirichlet(1) draws.
    RandomDirichlet,
};

std::string_view to_string(Backend backend);
// Accepts "variational-em" / "vem" and "collapsed-gibbs" / "gibbs".
Backend parse_backend(std::string_view name);

struct LdaConfig {
    std::size_t num_topics = 40;
    // Symmetric Dirichlet prior on document topic proportions; held fixed.
    double alpha = 0.1;

    std::size_t max_em_iters = 200;
    double em_rel_tol = 1e-5;
    std::size_t max_doc_iters = 100;
    double doc_rel_tol = 1e-6;

    std::uint64_t seed = 1;
    Backend backend = Backend::VariationalEm;
    TopicInit init = TopicInit::SpreadDocuments;

    std::size_t gibbs_sweeps = 500;
    std::size_t burn_in = 200;
    std::size_t thin = 10;
    // Symmetric topic-term prior for the Gibbs sampler.
    double eta = 0.01;

    // Throws ValidationError on an out-of-range field.
    void validate() const;
};

// Added to every expected topic-term count before the M-step normalization.
inline constexpr double kBetaSmoothing = 1e-9;

struct TopicModel {
    LdaConfig config;
    Vocabulary vocab;
    std::vector<std::string> doc_ids;

    Matrix beta;       // K x V, rows are term distributions
    Matrix gamma;      // D x K, rows are normalized topic proportions
    Matrix gamma_raw;  // D x K, unnormalized variational Dirichlet parameters

    std::vector<double> elbo_trace;
    bool converged = false;
    std::size_t iterations = 0;

    std::size_t num_topics() const { return beta.rows(); }
    std::size_t num_terms() const { return beta.cols(); }
    std::size_t num_docs() const { return gamma.rows(); }
};

struct DocPosterior {
    std::vector<double> gamma;      // normalized
    std::vector<double> gamma_raw;  // alpha + expected topic counts
    Matrix phi;                     // one K-simplex per nonzero entry of the row
    double bound = 0.0;             // this document's ELBO contribution
    std::size_t iterations = 0;
};

// Coordinate ascent on one document's variational parameters against a fixed
// beta. Starts from `initial_gamma_raw` when given, otherwise alpha + N/K.
// The returned phi and bound are evaluated at the final gamma.
DocPosterior e_step(const SparseRow& row, const Matrix& beta, double alpha, const LdaConfig& config,
                    std::optional<std::span<const double>> initial_gamma_raw = std::nullopt);

// Variational lower bound with phi set to its optimum for the model's
// beta and gamma_raw.
double elbo(const TopicModel& model, const DocumentTermMatrix& dtm);

// Fits with the backend named in `config`.
TopicModel fit(const DocumentTermMatrix& dtm, const LdaConfig& config);

// Variational EM. `initial_beta` replaces the seeded Dirichlet initialization.
TopicModel fit_variational(const DocumentTermMatrix& dtm, const LdaConfig& config,
                           std::optional<Matrix> initial_beta = std::nullopt);

TopicModel fit_gibbs(const DocumentTermMatrix& dtm, const LdaConfig& config);

// Posterior topic proportions of an unseen document under a frozen beta.
// Throws ValidationError if no token is in the model vocabulary.
std::vector<double> infer_document(const TopicModel& model, std::span<const std::string> tokens);
std::vector<double> infer_row(const TopicModel& model, const SparseRow& row);

struct TermWeight {
    std::string term;
    double probability = 0.0;

    bool operator==(const TermWeight&) const = default;
};

// Highest-probability terms of a topic; equal probabilities in lexicographic order.
std::vector<TermWeight> top_terms(const TopicModel& model, std::size_t topic, std::size_t n);

// Versioned text layout; doubles are written in shortest round-trip form so
// load_model(save_model(m)) reproduces every value exactly.
void save_model(std::ostream& out, const TopicModel& model);
TopicModel load_model(std::istream& in);

// Seeded Dirichlet(1) draws, one row per topic.
Matrix random_topics(std::size_t num_topics, std::size_t num_terms, std::uint64_t seed);

// Initial topics from the term frequencies of K mutually distant documents.
Matrix spread_topics(const DocumentTermMatrix& dtm, std::size_t num_topics, std::uint64_t seed);

}  // namespace topicscope

#endif  // TOPICSCOPE_LDA_HPP
