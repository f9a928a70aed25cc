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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <boost/math/special_functions/digamma.hpp>

#include "oracles.hpp"
#include "topicscope/error.hpp"
#include "topicscope/gibbs.hpp"
#include "topicscope/lda.hpp"
#include "topicscope/synthetic.hpp"

using namespace topicscope;

namespace {

DocumentTermMatrix random_dtm(std::size_t D, std::size_t V, std::mt19937_64& rng)
{
    std::vector<std::string> terms;
    for (std::size_t v = 0; v < V; ++v)
        terms.push_back("w" + std::to_string(1000 + v));
    DocumentTermMatrix dtm;
    dtm.vocab = Vocabulary(terms);
    std::uniform_int_distribution<std::size_t> term(0, V - 1);
    std::uniform_int_distribution<int> len(5, 40);
    for (std::size_t d = 0; d < D; ++d) {
        std::vector<std::uint32_t> counts(V, 0);
        for (int i = len(rng); i > 0; --i)
            ++counts[term(rng)];
        SparseRow row;
        for (std::size_t v = 0; v < V; ++v)
            if (counts[v])
                row.push_back({static_cast<std::uint32_t>(v), counts[v]});
        dtm.rows.push_back(row);
        dtm.docs.push_back({"doc" + std::to_string(d), "J", 2000});
    }
    return dtm;
}

void check_rows_normalized(const Matrix& m)
{
    for (std::size_t r = 0; r < m.rows(); ++r) {
        double s = 0.0;
        for (double x : m.row(r)) {
            CHECK(x >= 0.0);
            s += x;
        }
        CHECK(std::fabs(s - 1.0) <= 1e-9);
    }
}

synthetic::BlockCorpus small_blocks()
{
    synthetic::BlockCorpusSpec spec;
    spec.num_docs = 200;
    spec.terms_per_topic = 20;
    spec.num_topics = 4;
    return synthetic::block_corpus(spec);
}

}  // namespace

TEST_CASE("digamma matches boost")
{
    for (double x : {1e-3, 0.1, 0.5, 1.0, 2.5, 5.9, 6.0, 9.99, 17.3, 1e4})
        CHECK(digamma(x) == doctest::Approx(boost::math::digamma(x)).epsilon(1e-12));
}

TEST_CASE("config validation and backend names")
{
    LdaConfig c;
    CHECK_NOTHROW(c.validate());
    c.num_topics = 0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = {};
    c.alpha = 0.0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = {};
    c.em_rel_tol = -1.0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = {};
    c.backend = Backend::CollapsedGibbs;
    c.burn_in = c.gibbs_sweeps;
    CHECK_THROWS_AS(c.validate(), ValidationError);

    CHECK(parse_backend("vem") == Backend::VariationalEm);
    CHECK(parse_backend("collapsed-gibbs") == Backend::CollapsedGibbs);
    CHECK(to_string(Backend::CollapsedGibbs) == "collapsed-gibbs");
    CHECK_THROWS_AS(parse_backend("mcmc"), ValidationError);
}

TEST_CASE("e_step concentrates on the only topic explaining a document")
{
    const std::size_t K = 5, V = 10;
    // Topic 3 covers the document's terms; the others sit on five unused terms.
    Matrix beta(K, V + 5, 1e-12);
    for (std::size_t k = 0; k < K; ++k) {
        auto row = beta.row(k);
        if (k == 3)
            for (std::size_t w = 0; w < V; ++w)
                row[w] = 1.0;
        else
            for (std::size_t w = V; w < V + 5; ++w)
                row[w] = 1.0;
        normalize(row);
    }
    SparseRow doc;
    for (std::uint32_t w = 0; w < V; ++w)
        doc.push_back({w, 2});
    LdaConfig cfg;
    cfg.num_topics = K;
    const auto post = e_step(doc, beta, 0.1, cfg);
    CHECK(post.gamma[3] > 0.95);
    CHECK(std::accumulate(post.gamma.begin(), post.gamma.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i < post.phi.rows(); ++i)
        CHECK(std::accumulate(post.phi.row(i).begin(), post.phi.row(i).end(), 0.0) ==
              doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("e_step with one topic")
{
    Matrix beta(1, 3, 1.0 / 3.0);
    LdaConfig cfg;
    cfg.num_topics = 1;
    const auto post = e_step({{0, 2}, {2, 1}}, beta, 0.1, cfg);
    CHECK(post.gamma == std::vector<double>{1.0});
    CHECK(post.gamma_raw[0] == doctest::Approx(3.1));
}

TEST_CASE("single-token document reaches the smoothed-column fixed point")
{
    std::mt19937_64 rng(3);
    const std::size_t K = 4, V = 6;
    Matrix beta(K, V);
    for (std::size_t k = 0; k < K; ++k) {
        auto p = oracle::random_simplex(V, rng);
        std::copy(p.begin(), p.end(), beta.row(k).begin());
    }
    LdaConfig cfg;
    cfg.num_topics = K;
    cfg.doc_rel_tol = 1e-12;
    cfg.max_doc_iters = 1000;
    const double alpha = 0.1;
    const auto post = e_step({{2, 1}}, beta, alpha, cfg);
    // gamma_k = alpha + phi_k with phi_k proportional to beta_k2 exp(digamma(gamma_k)).
    double g0 = 0.0;
    for (double g : post.gamma_raw)
        g0 += g;
    std::vector<double> phi(K);
    double z = 0.0;
    for (std::size_t k = 0; k < K; ++k)
        z += phi[k] = beta(k, 2) * std::exp(boost::math::digamma(post.gamma_raw[k]) - boost::math::digamma(g0));
    for (std::size_t k = 0; k < K; ++k)
        CHECK(post.gamma_raw[k] == doctest::Approx(alpha + phi[k] / z).epsilon(1e-9));
}

TEST_CASE("elbo matches an independent bound on a tiny instance")
{
    DocumentTermMatrix dtm;
    dtm.vocab = Vocabulary({"a", "b", "c"});
    dtm.rows = {{{0, 3}, {2, 1}}, {{1, 2}, {2, 2}}};
    dtm.docs = {{"d0", "J", 2000}, {"d1", "J", 2000}};
    TopicModel m;
    m.config.num_topics = 2;
    m.config.alpha = 0.3;
    m.vocab = dtm.vocab;
    m.beta = Matrix(2, 3);
    m.beta(0, 0) = 0.6, m.beta(0, 1) = 0.1, m.beta(0, 2) = 0.3;
    m.beta(1, 0) = 0.2, m.beta(1, 1) = 0.5, m.beta(1, 2) = 0.3;
    m.gamma = Matrix(2, 2, 0.5);
    m.gamma_raw = Matrix(2, 2);
    m.gamma_raw(0, 0) = 3.1, m.gamma_raw(0, 1) = 1.2;
    m.gamma_raw(1, 0) = 0.9, m.gamma_raw(1, 1) = 3.7;
    const double a = elbo(m, dtm);
    CHECK(a == elbo(m, dtm));
    CHECK(a == doctest::Approx(oracle::elbo(dtm, m.beta, m.gamma_raw, 0.3)).epsilon(1e-10));

    TopicModel bad = m;
    bad.beta = Matrix(2, 4, 0.25);
    CHECK_THROWS_AS(elbo(bad, dtm), ValidationError);
}

TEST_CASE("fitted models satisfy their invariants and match the bound oracle")
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 5; ++trial) {
        const auto dtm = random_dtm(30, 25, rng);
        LdaConfig cfg;
        cfg.num_topics = 3 + trial;
        cfg.seed = 100 + trial;
        cfg.max_em_iters = 30;
        const auto m = fit(dtm, cfg);
        check_rows_normalized(m.beta);
        check_rows_normalized(m.gamma);
        REQUIRE_FALSE(m.elbo_trace.empty());
        for (std::size_t i = 1; i < m.elbo_trace.size(); ++i)
            CHECK(m.elbo_trace[i] >= m.elbo_trace[i - 1] - 1e-6 * std::fabs(m.elbo_trace[i - 1]));
        const double direct = elbo(m, dtm);
        CHECK(direct == doctest::Approx(oracle::elbo(dtm, m.beta, m.gamma_raw, cfg.alpha)).epsilon(1e-10));
        CHECK(m.doc_ids.size() == dtm.num_docs());
    }
}

TEST_CASE("single-topic fit")
{
    std::mt19937_64 rng(4);
    const auto dtm = random_dtm(12, 8, rng);
    LdaConfig cfg;
    cfg.num_topics = 1;
    const auto m = fit(dtm, cfg);
    std::vector<double> tf(8, 0.0);
    double total = 0.0;
    for (const auto& row : dtm.rows)
        for (const auto& tc : row) {
            tf[tc.term] += tc.count;
            total += tc.count;
        }
    for (std::size_t d = 0; d < m.num_docs(); ++d)
        CHECK(m.gamma(d, 0) == 1.0);
    for (std::size_t w = 0; w < 8; ++w)
        CHECK(m.beta(0, w) == doctest::Approx((tf[w] + kBetaSmoothing) / (total + 8 * kBetaSmoothing)).epsilon(1e-12));

    cfg.backend = Backend::CollapsedGibbs;
    cfg.gibbs_sweeps = 20;
    cfg.burn_in = 10;
    cfg.thin = 2;
    const auto g = fit(dtm, cfg);
    for (std::size_t d = 0; d < g.num_docs(); ++d)
        CHECK(g.gamma(d, 0) == 1.0);
}

TEST_CASE("more topics than terms is rejected")
{
    std::mt19937_64 rng(4);
    const auto dtm = random_dtm(12, 4, rng);
    LdaConfig cfg;
    cfg.num_topics = 5;
    CHECK_THROWS_AS(fit(dtm, cfg), ValidationError);
}

TEST_CASE("fits are deterministic given the seed")
{
    std::mt19937_64 rng(8);
    const auto dtm = random_dtm(25, 20, rng);
    LdaConfig cfg;
    cfg.num_topics = 3;
    cfg.max_em_iters = 20;
    const auto a = fit(dtm, cfg);
    const auto b = fit(dtm, cfg);
    CHECK(a.beta == b.beta);
    CHECK(a.gamma_raw == b.gamma_raw);
    CHECK(a.elbo_trace == b.elbo_trace);

    cfg.backend = Backend::CollapsedGibbs;
    cfg.gibbs_sweeps = 40;
    cfg.burn_in = 20;
    CHECK(fit(dtm, cfg).beta == fit(dtm, cfg).beta);
}

TEST_CASE("permuting the initial topics permutes the fit")
{
    std::mt19937_64 rng(12);
    const auto dtm = random_dtm(30, 15, rng);
    LdaConfig cfg;
    cfg.num_topics = 3;
    cfg.max_em_iters = 15;
    const Matrix init = random_topics(3, 15, 77);
    const std::vector<std::size_t> perm{2, 0, 1};
    Matrix permuted(3, 15);
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t w = 0; w < 15; ++w)
            permuted(k, w) = init(perm[k], w);
    const auto a = fit_variational(dtm, cfg, init);
    const auto b = fit_variational(dtm, cfg, permuted);
    for (std::size_t k = 0; k < 3; ++k) {
        for (std::size_t w = 0; w < 15; ++w)
            CHECK(b.beta(k, w) == doctest::Approx(a.beta(perm[k], w)).epsilon(1e-9));
        for (std::size_t d = 0; d < dtm.num_docs(); ++d)
            CHECK(b.gamma(d, k) == doctest::Approx(a.gamma(d, perm[k])).epsilon(1e-9));
    }
}

TEST_CASE("gibbs count tables stay consistent")
{
    std::mt19937_64 rng(2);
    const auto dtm = random_dtm(20, 12, rng);
    LdaConfig cfg;
    cfg.num_topics = 4;
    GibbsSampler s(dtm, cfg);
    CHECK(s.consistent());
    for (int i = 0; i < 25; ++i) {
        s.sweep();
        REQUIRE(s.consistent());
        // Doc-topic rows sum to document lengths; topic-term rows to totals.
        for (std::size_t d = 0; d < dtm.num_docs(); ++d) {
            std::size_t sum = 0;
            for (std::size_t k = 0; k < 4; ++k)
                sum += s.doc_topic()[d * 4 + k];
            CHECK(sum == row_length(dtm.rows[d]));
        }
        for (std::size_t k = 0; k < 4; ++k) {
            std::size_t sum = 0;
            for (std::size_t w = 0; w < 12; ++w)
                sum += s.topic_term()[k * 12 + w];
            CHECK(sum == s.topic_totals()[k]);
        }
        s.accumulate();
    }
    check_rows_normalized(s.mean_theta());
    check_rows_normalized(s.mean_beta());
}

TEST_CASE("both backends recover a small block corpus")
{
    const auto corpus = small_blocks();
    for (auto backend : {Backend::VariationalEm, Backend::CollapsedGibbs}) {
        LdaConfig cfg;
        cfg.num_topics = 4;
        cfg.backend = backend;
        cfg.gibbs_sweeps = 200;
        cfg.burn_in = 100;
        const auto m = fit(corpus.dtm, cfg);
        const auto match = synthetic::match_topics(corpus.topics, m.beta);
        double mass = 0.0;
        for (std::size_t d = 0; d < corpus.dtm.num_docs(); ++d)
            mass += m.gamma(d, match[corpus.doc_topic[d]]);
        CHECK(mass / static_cast<double>(corpus.dtm.num_docs()) > 0.9);
    }
}

TEST_CASE("infer_document follows the planted block")
{
    const auto corpus = small_blocks();
    LdaConfig cfg;
    cfg.num_topics = 4;
    const auto m = fit(corpus.dtm, cfg);
    const auto match = synthetic::match_topics(corpus.topics, m.beta);
    std::vector<std::string> tokens;
    for (std::size_t i = 0; i < 15; ++i)
        tokens.push_back(corpus.dtm.vocab.term(2 * 20 + i));
    const auto g = infer_document(m, tokens);
    CHECK(std::max_element(g.begin(), g.end()) - g.begin() == static_cast<long>(match[2]));

    auto doubled = tokens;
    doubled.insert(doubled.end(), tokens.begin(), tokens.end());
    const auto g2 = infer_document(m, doubled);
    CHECK(std::max_element(g2.begin(), g2.end()) - g2.begin() == static_cast<long>(match[2]));

    CHECK_THROWS_AS(infer_document(m, std::vector<std::string>{"unknownword"}), ValidationError);
    CHECK_THROWS_AS(infer_document(m, std::vector<std::string>{}), ValidationError);
}

TEST_CASE("top_terms ordering")
{
    TopicModel m;
    m.vocab = Vocabulary({"c", "b", "a", "d"});
    m.beta = Matrix(1, 4);
    m.beta(0, 0) = 0.2, m.beta(0, 1) = 0.3, m.beta(0, 2) = 0.3, m.beta(0, 3) = 0.2;
    const auto top = top_terms(m, 0, 2);
    CHECK(top == std::vector<TermWeight>{{"a", 0.3}, {"b", 0.3}});
    const auto all = top_terms(m, 0, 4);
    CHECK(all.size() == 4);
    CHECK(all[2].term == "c");
    CHECK(all[3].term == "d");
    CHECK_THROWS_AS(top_terms(m, 1, 2), ValidationError);
}

TEST_CASE("model files round-trip exactly")
{
    std::mt19937_64 rng(6);
    const auto dtm = random_dtm(15, 10, rng);
    LdaConfig cfg;
    cfg.num_topics = 3;
    cfg.max_em_iters = 10;
    const auto m = fit(dtm, cfg);
    std::stringstream ss;
    save_model(ss, m);
    const auto text = ss.str();
    CHECK(text.rfind("topicscope-model 1\n", 0) == 0);
    const auto back = load_model(ss);
    CHECK(back.beta == m.beta);
    CHECK(back.gamma == m.gamma);
    CHECK(back.gamma_raw == m.gamma_raw);
    CHECK(back.elbo_trace == m.elbo_trace);
    CHECK(back.doc_ids == m.doc_ids);
    CHECK(back.vocab == m.vocab);
    CHECK(back.config.alpha == m.config.alpha);
    CHECK(back.config.backend == m.config.backend);
    std::ostringstream again;
    save_model(again, back);
    CHECK(again.str() == text);

    std::istringstream bad("topicscope-model 99\n");
    CHECK_THROWS(load_model(bad));
}
