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

#include "topicscope/gibbs.hpp"

#include <algorithm>

#include "topicscope/error.hpp"

namespace topicscope {

GibbsSampler::GibbsSampler(const DocumentTermMatrix& dtm, const LdaConfig& config)
    : K_(config.num_topics),
      V_(dtm.num_terms()),
      alpha_(config.alpha),
      eta_(config.eta),
      rng_(config.seed),
      doc_lengths_(dtm.num_docs(), 0),
      doc_topic_(dtm.num_docs() * K_, 0),
      topic_term_(K_ * V_, 0),
      topic_totals_(K_, 0),
      weights_(K_),
      theta_sum_(dtm.num_docs(), K_),
      beta_sum_(K_, V_)
{
    for (std::size_t d = 0; d < dtm.num_docs(); ++d) {
        for (const auto& tc : dtm.rows[d])
            for (std::uint32_t c = 0; c < tc.count; ++c)
                tokens_.push_back({static_cast<std::uint32_t>(d), tc.term});
        doc_lengths_[d] = row_length(dtm.rows[d]);
    }
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(K_ - 1));
    z_.resize(tokens_.size());
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
        const auto k = pick(rng_);
        z_[i] = k;
        ++doc_topic_[tokens_[i].doc * K_ + k];
        ++topic_term_[k * V_ + tokens_[i].term];
        ++topic_totals_[k];
    }
}

void GibbsSampler::sweep()
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double v_eta = static_cast<double>(V_) * eta_;
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
        const auto [d, w] = tokens_[i];
        std::uint32_t k = z_[i];
        --doc_topic_[d * K_ + k];
        --topic_term_[k * V_ + w];
        --topic_totals_[k];

        double total = 0.0;
        for (std::size_t t = 0; t < K_; ++t) {
            total += (doc_topic_[d * K_ + t] + alpha_) * (topic_term_[t * V_ + w] + eta_) /
                     (topic_totals_[t] + v_eta);
            weights_[t] = total;
        }
        const double u = unit(rng_) * total;
        k = static_cast<std::uint32_t>(std::upper_bound(weights_.begin(), weights_.end(), u) -
                                       weights_.begin());
        k = std::min<std::uint32_t>(k, static_cast<std::uint32_t>(K_ - 1));

        z_[i] = k;
        ++doc_topic_[d * K_ + k];
        ++topic_term_[k * V_ + w];
        ++topic_totals_[k];
    }
}

void GibbsSampler::accumulate()
{
    const double k_alpha = static_cast<double>(K_) * alpha_;
    const double v_eta = static_cast<double>(V_) * eta_;
    for (std::size_t d = 0; d < doc_lengths_.size(); ++d)
        for (std::size_t k = 0; k < K_; ++k)
            theta_sum_(d, k) += (doc_topic_[d * K_ + k] + alpha_) / (doc_lengths_[d] + k_alpha);
    for (std::size_t k = 0; k < K_; ++k)
        for (std::size_t w = 0; w < V_; ++w)
            beta_sum_(k, w) += (topic_term_[k * V_ + w] + eta_) / (topic_totals_[k] + v_eta);
    ++samples_;
}

bool GibbsSampler::consistent() const
{
    std::vector<std::uint32_t> dt(doc_topic_.size(), 0), tt(topic_term_.size(), 0), tot(K_, 0);
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
        ++dt[tokens_[i].doc * K_ + z_[i]];
        ++tt[z_[i] * V_ + tokens_[i].term];
        ++tot[z_[i]];
    }
    if (dt != doc_topic_ || tt != topic_term_ || tot != topic_totals_)
        return false;
    for (std::size_t d = 0; d < doc_lengths_.size(); ++d) {
        std::size_t s = 0;
        for (std::size_t k = 0; k < K_; ++k)
            s += doc_topic_[d * K_ + k];
        if (s != doc_lengths_[d])
            return false;
    }
    for (std::size_t k = 0; k < K_; ++k) {
        std::size_t s = 0;
        for (std::size_t w = 0; w < V_; ++w)
            s += topic_term_[k * V_ + w];
        if (s != topic_totals_[k])
            return false;
    }
    return true;
}

Matrix GibbsSampler::mean_theta() const
{
    Matrix out = theta_sum_;
    for (std::size_t d = 0; d < out.rows(); ++d)
        normalize(out.row(d));
    return out;
}

Matrix GibbsSampler::mean_beta() const
{
    Matrix out = beta_sum_;
    for (std::size_t k = 0; k < out.rows(); ++k)
        normalize(out.row(k));
    return out;
}

TopicModel fit_gibbs(const DocumentTermMatrix& dtm, const LdaConfig& config)
{
    LdaConfig cfg = config;
    cfg.backend = Backend::CollapsedGibbs;
    cfg.validate();
    if (dtm.num_docs() == 0)
        throw ValidationError("cannot fit an empty document-term matrix");
    if (cfg.num_topics > dtm.num_terms())
        throw ValidationError("K = " + std::to_string(cfg.num_topics) + " exceeds vocabulary size " +
                              std::to_string(dtm.num_terms()));

    GibbsSampler sampler(dtm, cfg);
    for (std::size_t s = 1; s <= cfg.gibbs_sweeps; ++s) {
        sampler.sweep();
        if (s > cfg.burn_in && (s - cfg.burn_in) % cfg.thin == 0)
            sampler.accumulate();
    }
    if (sampler.samples() == 0)
        sampler.accumulate();

    TopicModel model;
    model.config = cfg;
    model.vocab = dtm.vocab;
    for (const auto& m : dtm.docs)
        model.doc_ids.push_back(m.id);
    model.beta = sampler.mean_beta();
    model.gamma = sampler.mean_theta();
    model.gamma_raw = model.gamma;
    for (std::size_t d = 0; d < model.gamma_raw.rows(); ++d) {
        const double scale = static_cast<double>(sampler.doc_lengths()[d]) +
                             static_cast<double>(cfg.num_topics) * cfg.alpha;
        for (auto& g : model.gamma_raw.row(d))
            g *= scale;
    }
    model.converged = true;
    model.iterations = cfg.gibbs_sweeps;
    return model;
}

}  // namespace topicscope
