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

#ifndef TOPICSCOPE_AGGREGATE_HPP
#define TOPICSCOPE_AGGREGATE_HPP

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "topicscope/corpus.hpp"
#include "topicscope/lda.hpp"

namespace topicscope {

// One document's topic proportions with its venue and year.
struct TaggedSimplex {
    std::string venue;
    int year = 0;
    std::vector<double> p;
};

// Pairs model gamma rows with their metadata. Rows must align with `docs`.
std::vector<TaggedSimplex> tag_documents(const TopicModel& model, std::span<const DocMeta> docs);

enum class KeyKind {
    Venue,
    Year,
    VenueYear,
    Window,
};

struct GroupKey {
    std::string venue;  // empty for year keys
    int year = 0;       // 0 for venue keys

    auto operator<=>(const GroupKey&) const = default;
};

struct Composite {
    std::vector<double> mean;  // K-simplex
    std::size_t support = 0;   // number of documents averaged
};

// Composite topic distributions keyed by venue, year or venue-year. Groups
// without documents are absent, never zero-filled.
struct DistributionTable {
    KeyKind kind = KeyKind::Venue;
    std::size_t num_topics = 0;
    std::map<GroupKey, Composite> entries;

    const Composite* find(const GroupKey& key) const;
    // "venue", "1999" or "venue:1999".
    std::string label(const GroupKey& key) const;
};

DistributionTable venue_distribution(std::span<const TaggedSimplex> docs);
DistributionTable year_distribution(std::span<const TaggedSimplex> docs);
DistributionTable venue_year_distribution(std::span<const TaggedSimplex> docs);

struct YearRange {
    int first = 0;
    int last = 0;  // inclusive

    bool contains(int y) const { return y >= first && y <= last; }
};

// Document-weighted mean over every document published in `years`,
// optionally restricted to one venue. Throws ValidationError if no
// document qualifies or the range is empty.
std::vector<double> window_distribution(std::span<const TaggedSimplex> docs, YearRange years,
                                        const std::optional<std::string>& venue = std::nullopt);

// Hellinger distance between two topic distributions, in [0, 1].
double hellinger(std::span<const double> p, std::span<const double> q);

// Shannon entropy in nats with 0 ln 0 = 0.
double entropy(std::span<const double> p);

enum class MetricKind {
    Uniqueness,
    Entropy,
};

struct MetricVector {
    MetricKind kind = MetricKind::Uniqueness;
    std::map<std::string, double> values;
};

// u_j = sum_i H(i, j) over every venue in the table (the self term is zero).
// Throws ValidationError with fewer than two venues.
MetricVector uniqueness(const DistributionTable& venue_table);
MetricVector entropies(const DistributionTable& table);

// venue -> year -> uniqueness among the venues publishing that year.
using UniquenessSeries = std::map<std::string, std::map<int, double>>;

UniquenessSeries uniqueness_over_time(const DistributionTable& venue_year_table);

// CSV with header `key,topic_1,...,topic_K`, keys in sorted order.
void write_table_csv(std::ostream& out, const DistributionTable& table);
// CSV with header `key,value`; sorted by key, or ascending by value when asked.
void write_metric_csv(std::ostream& out, const MetricVector& metric, bool sort_by_value = false);

}  // namespace topicscope

#endif  // TOPICSCOPE_AGGREGATE_HPP
