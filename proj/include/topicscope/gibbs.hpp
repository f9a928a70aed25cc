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

#ifndef TOPICSCOPE_GIBBS_HPP
#define TOPICSCOPE_GIBBS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "topicscope/corpus.hpp"
#include "topicscope/lda.hpp"

namespace topicscope {

// Collapsed Gibbs sampler over per-token topic assignments. theta and beta
// are integrated out; only the assignment z and its count tables are kept.
class GibbsSampler {
public:
    GibbsSampler(const DocumentTermMatrix& dtm, const LdaConfig& config);

    // Resamples every token once, documents in order.
    void sweep();

    // Adds the current smoothed estimates of theta and beta to the running sums.
    void accumulate();

    // True when the count tables agree with the assignments.
    bool consistent() const;

    std::size_t num_tokens() const { return tokens_.size(); }
    const std::vector<std::uint32_t>& assignments() const { return z_; }
    const std::vector<std::uint32_t>& doc_topic() const { return doc_topic_; }
    const std::vector<std::uint32_t>& topic_term() const { return topic_term_; }
    const std::vector<std::uint32_t>& topic_totals() const { return topic_totals_; }
    const std::vector<std::size_t>& doc_lengths() const { return doc_lengths_; }

    std::size_t samples() const { return samples_; }
    // Averages of the accumulated estimates; rows renormalized.
    Matrix mean_theta() const;
    Matrix mean_beta() const;

private:
    struct Token {
        std::uint32_t doc;
        std::uint32_t term;
    };

    std::size_t K_;
    std::size_t V_;
    double alpha_;
    double eta_;
    std::mt19937_64 rng_;
    std::vector<Token> tokens_;
    std::vector<std::uint32_t> z_;
    std::vector<std::size_t> doc_lengths_;
    std::vector<std::uint32_t> doc_topic_;     // D x K
    std::vector<std::uint32_t> topic_term_;    // K x V
    std::vector<std::uint32_t> topic_totals_;  // K
    std::vector<double> weights_;

    Matrix theta_sum_;
    Matrix beta_sum_;
    std::size_t samples_ = 0;
};

}  // namespace topicscope

#endif  // TOPICSCOPE_GIBBS_HPP
