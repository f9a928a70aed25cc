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

#include "topicscope/lda.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "topicscope/error.hpp"

namespace topicscope {

std::string_view to_string(Backend backend)
{
    switch (backend) {
    case Backend::VariationalEm:
        return "variational-em";
    case Backend::CollapsedGibbs:
        return "collapsed-gibbs";
    }
    return "unknown";
}

Backend parse_backend(std::string_view name)
{
    if (name == "variational-em" || name == "vem")
        return Backend::VariationalEm;
    if (name == "collapsed-gibbs" || name == "gibbs")
        return Backend::CollapsedGibbs;
    throw ValidationError("unknown backend '" + std::string(name) + "'");
}

void LdaConfig::validate() const
{
    if (num_topics < 1)
        throw ValidationError("number of topics must be >= 1");
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw ValidationError("alpha must be positive");
    if (!(em_rel_tol > 0.0) || !(doc_rel_tol > 0.0))
        throw ValidationError("tolerances must be positive");
    if (max_em_iters < 1 || max_doc_iters < 1)
        throw ValidationError("iteration caps must be >= 1");
    if (backend == Backend::CollapsedGibbs) {
        if (gibbs_sweeps < 1 || thin < 1)
            throw ValidationError("gibbs_sweeps and thin must be >= 1");
        if (burn_in >= gibbs_sweeps)
            throw ValidationError("burn_in must be smaller than gibbs_sweeps");
        if (!(eta > 0.0))
            throw ValidationError("eta must be positive");
    }
}

Matrix random_topics(std::size_t num_topics, std::size_t num_terms, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::gamma_distribution<double> draw(1.0, 1.0);
    Matrix beta(num_topics, num_terms);
    for (std::size_t k = 0; k < num_topics; ++k) {
        for (auto& b : beta.row(k))
            b = draw(rng) + 1e-12;
        normalize(beta.row(k));
    }
    return beta;
}

namespace {

// Squared Hellinger distance between two term-frequency rows.
double sparse_hellinger2(const SparseRow& a, double len_a, const SparseRow& b, double len_b)
{
    double bc = 0.0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->term < ib->term) {
            ++ia;
        } else if (ib->term < ia->term) {
            ++ib;
        } else {
            bc += std::sqrt(ia->count / len_a * ib->count / len_b);
            ++ia;
            ++ib;
        }
    }
    return std::max(0.0, 1.0 - bc);
}

}  // namespace

Matrix spread_topics(const DocumentTermMatrix& dtm, std::size_t num_topics, std::uint64_t seed)
{
    constexpr int kCandidates = 8;
    constexpr int kLloydIterations = 5;
    constexpr double kNoiseShare = 0.1;
    const std::size_t D = dtm.num_docs();
    const std::size_t V = dtm.num_terms();
    if (D < num_topics)
        throw ValidationError("spread initialization needs at least K documents");
    std::vector<double> lengths(D);
    for (std::size_t d = 0; d < D; ++d)
        lengths[d] = static_cast<double>(row_length(dtm.rows[d]));

    std::mt19937_64 rng(seed);
    Matrix best_centers;
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<double> nearest(D);
    std::vector<std::size_t> owner(D);
    for (int c = 0; c < kCandidates; ++c) {
        // D^2 sampling of seed documents.
        std::vector<std::size_t> seeds{std::uniform_int_distribution<std::size_t>(0, D - 1)(rng)};
        std::fill(nearest.begin(), nearest.end(), std::numeric_limits<double>::infinity());
        for (;;) {
            const std::size_t s = seeds.back();
            for (std::size_t d = 0; d < D; ++d)
                nearest[d] = std::min(nearest[d],
                                      sparse_hellinger2(dtm.rows[d], lengths[d], dtm.rows[s], lengths[s]));
            if (seeds.size() == num_topics)
                break;
            double total = 0.0;
            for (double n : nearest)
                total += n;
            if (total > 0.0) {
                std::discrete_distribution<std::size_t> pick(nearest.begin(), nearest.end());
                seeds.push_back(pick(rng));
            } else {
                seeds.push_back(std::uniform_int_distribution<std::size_t>(0, D - 1)(rng));
            }
        }

        // Lloyd iterations under Hellinger distance turn seeds into cluster means.
        Matrix centers(num_topics, V);
        for (std::size_t k = 0; k < num_topics; ++k)
            for (const auto& tc : dtm.rows[seeds[k]])
                centers(k, tc.term) = tc.count / lengths[seeds[k]];
        double cost = 0.0;
        for (int it = 0; it <= kLloydIterations; ++it) {
            cost = 0.0;
            for (std::size_t d = 0; d < D; ++d) {
                double best = -1.0;
                for (std::size_t k = 0; k < num_topics; ++k) {
                    double bc = 0.0;
                    for (const auto& tc : dtm.rows[d])
                        bc += std::sqrt(tc.count / lengths[d] * centers(k, tc.term));
                    if (bc > best) {
                        best = bc;
                        owner[d] = k;
                    }
                }
                cost += std::max(0.0, 1.0 - best);
            }
            if (it == kLloydIterations)
                break;
            Matrix next(num_topics, V);
            std::vector<std::size_t> members(num_topics, 0);
            for (std::size_t d = 0; d < D; ++d) {
                ++members[owner[d]];
                for (const auto& tc : dtm.rows[d])
                    next(owner[d], tc.term) += tc.count / lengths[d];
            }
            for (std::size_t k = 0; k < num_topics; ++k) {
                if (members[k] == 0)
                    continue;  // keep the previous center
                for (std::size_t w = 0; w < V; ++w)
                    centers(k, w) = next(k, w) / static_cast<double>(members[k]);
            }
        }
        if (cost < best_cost) {
            best_cost = cost;
            best_centers = std::move(centers);
        }
    }

    Matrix beta = random_topics(num_topics, V, rng());
    for (std::size_t k = 0; k < num_topics; ++k) {
        auto row = beta.row(k);
        for (std::size_t w = 0; w < V; ++w)
            row[w] = kNoiseShare * row[w] + (1.0 - kNoiseShare) * best_centers(k, w);
        normalize(row);
    }
    return beta;
}

namespace {

// Fills phi rows with exp(digamma(gamma_k)) * beta_kw, normalized, and
// returns sum_w n_w log Z_w where Z_w is the normalizer in log space.
double update_phi(const SparseRow& row, const Matrix& beta, std::span<const double> gamma_raw,
                  Matrix& phi, std::vector<double>& scratch)
{
    const std::size_t K = beta.rows();
    std::vector<double> dig(K);
    for (std::size_t k = 0; k < K; ++k)
        dig[k] = digamma(gamma_raw[k]);
    double log_norm = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
        const auto w = row[i].term;
        for (std::size_t k = 0; k < K; ++k)
            scratch[k] = std::log(beta(k, w)) + dig[k];
        const double lz = log_sum_exp(scratch);
        for (std::size_t k = 0; k < K; ++k)
            phi(i, k) = std::exp(scratch[k] - lz);
        log_norm += row[i].count * lz;
    }
    return log_norm;
}

// Document bound at the optimal phi for gamma_raw; `log_norm` is the
// value returned by update_phi for that gamma.
double document_bound(std::span<const double> gamma_raw, double alpha, double log_norm,
                      std::size_t length)
{
    const auto K = static_cast<double>(gamma_raw.size());
    double total = 0.0;
    for (double g : gamma_raw)
        total += g;
    const double dig_total = digamma(total);
    double b = std::lgamma(K * alpha) - K * std::lgamma(alpha) - std::lgamma(total);
    for (double g : gamma_raw)
        b += std::lgamma(g) + (alpha - g) * (digamma(g) - dig_total);
    return b + log_norm - static_cast<double>(length) * dig_total;
}

}  // namespace

DocPosterior e_step(const SparseRow& row, const Matrix& beta, double alpha, const LdaConfig& config,
                    std::optional<std::span<const double>> initial_gamma_raw)
{
    const std::size_t K = beta.rows();
    const std::size_t length = row_length(row);
    DocPosterior post;
    post.phi = Matrix(row.size(), K);
    if (initial_gamma_raw) {
        post.gamma_raw.assign(initial_gamma_raw->begin(), initial_gamma_raw->end());
    } else {
        post.gamma_raw.assign(K, alpha + static_cast<double>(length) / static_cast<double>(K));
    }

    std::vector<double> scratch(K);
    std::vector<double> next(K);
    for (std::size_t it = 1; it <= config.max_doc_iters; ++it) {
        update_phi(row, beta, post.gamma_raw, post.phi, scratch);
        std::fill(next.begin(), next.end(), alpha);
        for (std::size_t i = 0; i < row.size(); ++i)
            for (std::size_t k = 0; k < K; ++k)
                next[k] += row[i].count * post.phi(i, k);
        double change = 0.0, total = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            change += std::fabs(next[k] - post.gamma_raw[k]);
            total += next[k];
        }
        post.gamma_raw.swap(next);
        post.iterations = it;
        if (change / total < config.doc_rel_tol)
            break;
    }

    const double log_norm = update_phi(row, beta, post.gamma_raw, post.phi, scratch);
    post.bound = document_bound(post.gamma_raw, alpha, log_norm, length);
    post.gamma = post.gamma_raw;
    normalize(post.gamma);
    return post;
}

double elbo(const TopicModel& model, const DocumentTermMatrix& dtm)
{
    if (model.num_docs() != dtm.num_docs() || model.num_terms() != dtm.num_terms() ||
        model.gamma_raw.rows() != dtm.num_docs() || model.gamma_raw.cols() != model.num_topics())
        throw ValidationError("elbo: model and document-term matrix dimensions differ");
    const std::size_t K = model.num_topics();
    std::vector<double> scratch(K);
    double total = 0.0;
    for (std::size_t d = 0; d < dtm.num_docs(); ++d) {
        const auto& row = dtm.rows[d];
        Matrix phi(row.size(), K);
        const double log_norm = update_phi(row, model.beta, model.gamma_raw.row(d), phi, scratch);
        total += document_bound(model.gamma_raw.row(d), model.config.alpha, log_norm, row_length(row));
    }
    return total;
}

namespace {

void check_fit_inputs(const DocumentTermMatrix& dtm, const LdaConfig& config)
{
    config.validate();
    if (dtm.num_docs() == 0)
        throw ValidationError("cannot fit an empty document-term matrix");
    if (config.num_topics > dtm.num_terms())
        throw ValidationError("K = " + std::to_string(config.num_topics) +
                              " exceeds vocabulary size " + std::to_string(dtm.num_terms()));
    for (const auto& row : dtm.rows)
        if (row.empty())
            throw ValidationError("document-term matrix contains an empty document");
}

std::vector<std::string> ids_of(const DocumentTermMatrix& dtm)
{
    std::vector<std::string> ids;
    ids.reserve(dtm.docs.size());
    for (const auto& m : dtm.docs)
        ids.push_back(m.id);
    return ids;
}

}  // namespace

TopicModel fit(const DocumentTermMatrix& dtm, const LdaConfig& config)
{
    if (config.backend == Backend::CollapsedGibbs)
        return fit_gibbs(dtm, config);
    return fit_variational(dtm, config);
}

TopicModel fit_variational(const DocumentTermMatrix& dtm, const LdaConfig& config,
                           std::optional<Matrix> initial_beta)
{
    check_fit_inputs(dtm, config);
    const std::size_t K = config.num_topics;
    const std::size_t V = dtm.num_terms();
    const std::size_t D = dtm.num_docs();

    TopicModel model;
    model.config = config;
    model.config.backend = Backend::VariationalEm;
    model.vocab = dtm.vocab;
    model.doc_ids = ids_of(dtm);
    if (initial_beta) {
        if (initial_beta->rows() != K || initial_beta->cols() != V)
            throw ValidationError("initial beta has wrong shape");
        model.beta = std::move(*initial_beta);
    } else if (config.init == TopicInit::SpreadDocuments && D >= K) {
        model.beta = spread_topics(dtm, K, config.seed);
    } else {
        model.beta = random_topics(K, V, config.seed);
    }
    model.gamma_raw = Matrix(D, K);
    for (std::size_t d = 0; d < D; ++d) {
        const double len = static_cast<double>(row_length(dtm.rows[d]));
        for (auto& g : model.gamma_raw.row(d))
            g = config.alpha + len / static_cast<double>(K);
    }

    Matrix stats(K, V);
    for (std::size_t iter = 1; iter <= config.max_em_iters; ++iter) {
        stats.fill(0.0);
        double bound = 0.0;
        for (std::size_t d = 0; d < D; ++d) {
            const auto& row = dtm.rows[d];
            DocPosterior post = e_step(row, model.beta, config.alpha, config, model.gamma_raw.row(d));
            std::copy(post.gamma_raw.begin(), post.gamma_raw.end(), model.gamma_raw.row(d).begin());
            for (std::size_t i = 0; i < row.size(); ++i)
                for (std::size_t k = 0; k < K; ++k)
                    stats(k, row[i].term) += row[i].count * post.phi(i, k);
            bound += post.bound;
        }
        model.elbo_trace.push_back(bound);
        model.iterations = iter;

        if (iter > 1) {
            const double prev = model.elbo_trace[iter - 2];
            if (std::fabs(bound - prev) / std::fabs(prev) < config.em_rel_tol) {
                model.converged = true;
                break;
            }
        }
        if (iter == config.max_em_iters)
            break;

        for (std::size_t k = 0; k < K; ++k) {
            auto b = model.beta.row(k);
            const auto s = stats.row(k);
            for (std::size_t w = 0; w < V; ++w)
                b[w] = s[w] + kBetaSmoothing;
            normalize(b);
        }
    }

    model.gamma = model.gamma_raw;
    for (std::size_t d = 0; d < D; ++d)
        normalize(model.gamma.row(d));
    return model;
}

std::vector<double> infer_row(const TopicModel& model, const SparseRow& row)
{
    if (row.empty())
        throw ValidationError("document has no in-vocabulary tokens");
    return e_step(row, model.beta, model.config.alpha, model.config).gamma;
}

std::vector<double> infer_document(const TopicModel& model, std::span<const std::string> tokens)
{
    return infer_row(model, to_sparse_row(tokens, model.vocab));
}

std::vector<TermWeight> top_terms(const TopicModel& model, std::size_t topic, std::size_t n)
{
    if (topic >= model.num_topics())
        throw ValidationError("topic index " + std::to_string(topic) + " out of range");
    if (n > model.num_terms())
        throw ValidationError("requested more terms than the vocabulary holds");
    const auto probs = model.beta.row(topic);
    std::vector<std::size_t> order(probs.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n), order.end(),
                      [&](std::size_t a, std::size_t b) {
                          if (probs[a] != probs[b])
                              return probs[a] > probs[b];
                          return model.vocab.term(a) < model.vocab.term(b);
                      });
    std::vector<TermWeight> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back({model.vocab.term(order[i]), probs[order[i]]});
    return out;
}

}  // namespace topicscope
