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

#include "topicscope/synthetic.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "topicscope/aggregate.hpp"
#include "topicscope/error.hpp"

namespace topicscope::synthetic {

BlockCorpus block_corpus(const BlockCorpusSpec& spec)
{
    if (spec.num_topics == 0 || spec.terms_per_topic == 0 || spec.min_length == 0 ||
        spec.min_length > spec.max_length)
        throw ValidationError("invalid block corpus specification");
    const std::size_t V = spec.num_topics * spec.terms_per_topic;
    std::mt19937_64 rng(spec.seed);

    BlockCorpus out;
    out.topics = Matrix(spec.num_topics, V);
    std::gamma_distribution<double> weight(1.0, 1.0);
    for (std::size_t k = 0; k < spec.num_topics; ++k) {
        auto row = out.topics.row(k);
        for (std::size_t j = 0; j < spec.terms_per_topic; ++j)
            row[k * spec.terms_per_topic + j] = weight(rng) + 0.05;
        normalize(row);
    }

    std::vector<std::string> terms;
    for (std::size_t v = 0; v < V; ++v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "t%04zu", v);
        terms.emplace_back(buf);
    }
    out.dtm.vocab = Vocabulary(std::move(terms));

    std::uniform_int_distribution<std::size_t> length(spec.min_length, spec.max_length);
    std::vector<std::discrete_distribution<std::size_t>> word;
    for (std::size_t k = 0; k < spec.num_topics; ++k)
        word.emplace_back(out.topics.row(k).begin(), out.topics.row(k).end());
    for (std::size_t d = 0; d < spec.num_docs; ++d) {
        const std::size_t k = d % spec.num_topics;
        std::map<std::uint32_t, std::uint32_t> counts;
        const std::size_t n = length(rng);
        for (std::size_t i = 0; i < n; ++i)
            ++counts[static_cast<std::uint32_t>(word[k](rng))];
        SparseRow row;
        for (const auto& [t, c] : counts)
            row.push_back({t, c});
        out.dtm.rows.push_back(std::move(row));
        out.dtm.docs.push_back({"doc" + std::to_string(d), "V" + std::to_string(k), 2000});
        out.doc_topic.push_back(k);
    }
    return out;
}

std::vector<std::size_t> match_topics(const Matrix& planted, const Matrix& fitted)
{
    if (planted.cols() != fitted.cols() || fitted.rows() < planted.rows())
        throw ValidationError("match_topics: incompatible shapes");
    std::vector<std::size_t> out(planted.rows(), 0);
    std::vector<bool> used_p(planted.rows(), false), used_f(fitted.rows(), false);
    for (std::size_t round = 0; round < planted.rows(); ++round) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bp = 0, bf = 0;
        for (std::size_t p = 0; p < planted.rows(); ++p) {
            if (used_p[p])
                continue;
            for (std::size_t f = 0; f < fitted.rows(); ++f) {
                if (used_f[f])
                    continue;
                const double h = hellinger(planted.row(p), fitted.row(f));
                if (h < best) {
                    best = h;
                    bp = p;
                    bf = f;
                }
            }
        }
        used_p[bp] = used_f[bf] = true;
        out[bp] = bf;
    }
    return out;
}

const std::vector<std::vector<std::string>>& demo_topic_words()
{
    static const std::vector<std::vector<std::string>> topics = [] {
        const char* lists[] = {
            "scheduling machine job makespan tardiness shop sequencing flowshop setup processing due "
            "dates parallel release preemption batch completion dispatching jobshop lateness",
            "inventory stock ordering replenishment backorders lot sizing warehouse demand holding "
            "shortage newsvendor retailer supply chain safety reorder echelon lead perishable",
            "heuristic metaheuristic genetic tabu annealing neighborhood search algorithm evolutionary "
            "swarm particle colony population crossover mutation local iterated hybrid greedy randomized",
            "queue queueing server arrival waiting service customers poisson markovian congestion busy "
            "period retrial priority buffer blocking throughput exponential delay stationary",
            "game equilibrium nash players bargaining auction bidder cooperative coalition payoff "
            "strategic mechanism incentive stackelberg leader follower shapley core competition duopoly",
            "integer programming branch bound cutting planes polyhedral relaxation lagrangian "
            "decomposition column generation benders facet inequalities valid knapsack formulation "
            "mixed solver",
            "vehicle routing depot routes capacitated pickup delivery windows fleet travelling salesman "
            "tour tsp logistics distribution drivers arc transportation loading tours",
            "portfolio risk return investment asset volatility option pricing hedging stochastic finance "
            "credit bank insurance default market bonds interest rate capital",
            "hospital patients health care medical emergency nurse staffing surgery clinic appointment "
            "beds disease treatment physicians ambulance admission outpatient therapy vaccine",
            "decision criteria multicriteria preference ahp hierarchy pairwise comparisons weights fuzzy "
            "ranking alternatives outranking electre topsis utility judgments consistency group "
            "elicitation",
        };
        std::vector<std::vector<std::string>> out;
        for (const char* l : lists) {
            std::istringstream in(l);
            std::vector<std::string> words;
            for (std::string w; in >> w;)
                words.push_back(w);
            out.push_back(std::move(words));
        }
        return out;
    }();
    return topics;
}

const std::vector<std::string>& demo_filler_words()
{
    static const std::vector<std::string> words = {
        "paper",       "model",       "approach",    "results",     "problem",
        "method",      "study",       "analysis",    "propose",     "show",
        "proposed",    "numerical",   "computational", "performance", "framework",
        "optimal",     "efficient",   "literature",  "experiments", "application",
    };
    return words;
}

namespace {

const std::vector<std::string>& glue_words()
{
    static const std::vector<std::string> words = {"the", "of", "and", "we", "a",  "for", "is",
                                                   "in",  "this", "that", "to", "with", "on", "are",
                                                   "by",  "an", "which"};
    return words;
}

// Zipf-like weights so a few words dominate each topic.
std::discrete_distribution<std::size_t> zipf(std::size_t n)
{
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = 1.0 / static_cast<double>(i + 2);
    return {w.begin(), w.end()};
}

class AbstractWriter {
public:
    explicit AbstractWriter(std::mt19937_64& rng) : rng_(rng), topic_word_(zipf(20)), filler_(zipf(20)) {}

    // `weights` over topics; each content word picks a topic from it.
    std::string write(const std::vector<double>& weights, std::size_t length, double filler_share)
    {
        std::discrete_distribution<std::size_t> pick_topic(weights.begin(), weights.end());
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::uniform_int_distribution<std::size_t> glue(0, glue_words().size() - 1);
        const auto& topics = demo_topic_words();
        std::string text;
        bool capital = true;
        for (std::size_t i = 0; i < length; ++i) {
            if (!text.empty())
                text += ' ';
            if (unit(rng_) < 0.3)
                text += glue_words()[glue(rng_)] + ' ';
            std::string w = unit(rng_) < filler_share ? demo_filler_words()[filler_(rng_)]
                                                      : topics[pick_topic(rng_)][topic_word_(rng_)];
            if (capital) {
                w[0] = static_cast<char>(w[0] - 'a' + 'A');
                capital = false;
            }
            text += w;
            const double r = unit(rng_);
            if (r < 0.04) {
                // Hyphenated compound with the next word.
                text += '-';
                text += topics[pick_topic(rng_)][topic_word_(rng_)];
            } else if (r < 0.06) {
                text += " (" + std::to_string(1 + glue(rng_)) + ")";
            } else if (r < 0.12) {
                text += '.';
                capital = true;
            } else if (r < 0.16) {
                text += ',';
            }
        }
        text += '.';
        return text;
    }

private:
    std::mt19937_64& rng_;
    std::discrete_distribution<std::size_t> topic_word_;
    std::discrete_distribution<std::size_t> filler_;
};

}  // namespace

DemoCorpus demo_corpus(const DemoCorpusSpec& spec)
{
    if (spec.first_year > spec.last_year || spec.docs_per_venue_year == 0)
        throw ValidationError("invalid demo corpus specification");
    const std::size_t K = demo_topic_words().size();
    DemoCorpus out;
    auto& truth = out.truth;
    for (std::size_t v = 0; v < K; ++v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "J%02zu", v + 1);
        truth.venues.emplace_back(buf);
    }
    const int span = spec.last_year - spec.first_year + 1;
    truth.gap_venue = truth.venues[3];
    truth.gap_first = spec.first_year + span * 2 / 5;
    truth.gap_last = truth.gap_first + 3;
    truth.shift_venue = truth.venues[7];
    truth.shift_topic = 2;
    truth.shift_year = spec.first_year + span / 2;

    std::mt19937_64 rng(spec.seed);
    AbstractWriter writer(rng);
    std::uniform_int_distribution<std::size_t> length(45, 85);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::size_t serial = 0;
    for (int year = spec.first_year; year <= spec.last_year; ++year) {
        for (std::size_t v = 0; v < K; ++v) {
            const std::string& venue = truth.venues[v];
            if (venue == truth.gap_venue && year >= truth.gap_first && year <= truth.gap_last)
                continue;
            std::vector<double> mix(K, 0.45 / static_cast<double>(K - 1));
            mix[v] = 0.55;
            if (venue == truth.shift_venue && year >= truth.shift_year) {
                mix.assign(K, 0.2 / static_cast<double>(K - 2));
                mix[v] = 0.3;
                mix[truth.shift_topic] = 0.5;
            }
            std::discrete_distribution<std::size_t> pick(mix.begin(), mix.end());
            for (std::size_t i = 0; i < spec.docs_per_venue_year; ++i) {
                // One or two topics per abstract.
                std::vector<double> weights(K, 0.0);
                const std::size_t primary = pick(rng);
                weights[primary] = 1.0;
                if (unit(rng) < 0.4) {
                    std::size_t secondary = pick(rng);
                    if (secondary != primary) {
                        weights[primary] = 0.7;
                        weights[secondary] = 0.3;
                    }
                }
                Document doc;
                doc.id = venue + "-" + std::to_string(year) + "-" + std::to_string(++serial);
                doc.venue = venue;
                doc.year = year;
                doc.text = writer.write(weights, length(rng), 0.15);
                out.docs.push_back(std::move(doc));
            }
        }
    }
    return out;
}

std::string topic_abstract(std::size_t topic, std::size_t length, std::mt19937_64& rng)
{
    const std::size_t K = demo_topic_words().size();
    if (topic >= K)
        throw ValidationError("no demo topic " + std::to_string(topic));
    std::vector<double> weights(K, 0.0);
    weights[topic] = 1.0;
    AbstractWriter writer(rng);
    return writer.write(weights, length, 0.15);
}

std::string to_json_lines(const std::vector<Document>& docs)
{
    std::string out;
    for (const auto& d : docs) {
        nlohmann::ordered_json rec;
        rec["id"] = d.id;
        rec["journal"] = d.venue;
        rec["year"] = d.year;
        rec["abstract"] = d.text;
        out += rec.dump();
        out += '\n';
    }
    return out;
}

}  // namespace topicscope::synthetic
