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

#include "topicscope/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>

#include "topicscope/csv.hpp"
#include "topicscope/error.hpp"

namespace topicscope {

std::vector<TaggedSimplex> tag_documents(const TopicModel& model, std::span<const DocMeta> docs)
{
    if (docs.size() != model.num_docs())
        throw ValidationError("document metadata does not match the model's documents");
    std::vector<TaggedSimplex> out;
    out.reserve(docs.size());
    for (std::size_t d = 0; d < docs.size(); ++d) {
        if (docs[d].id != model.doc_ids[d])
            throw ValidationError("document " + std::to_string(d) + " id mismatch: '" + docs[d].id +
                                  "' vs model '" + model.doc_ids[d] + "'");
        const auto row = model.gamma.row(d);
        out.push_back({docs[d].venue, docs[d].year, {row.begin(), row.end()}});
    }
    return out;
}

const Composite* DistributionTable::find(const GroupKey& key) const
{
    const auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
}

std::string DistributionTable::label(const GroupKey& key) const
{
    switch (kind) {
    case KeyKind::Venue:
        return key.venue;
    case KeyKind::Year:
        return std::to_string(key.year);
    case KeyKind::VenueYear:
        return key.venue + ":" + std::to_string(key.year);
    case KeyKind::Window:
        return key.venue.empty() ? std::to_string(key.year) : key.venue;
    }
    return {};
}

namespace {

std::size_t common_dimension(std::span<const TaggedSimplex> docs)
{
    if (docs.empty())
        return 0;
    const std::size_t K = docs.front().p.size();
    for (const auto& d : docs)
        if (d.p.size() != K)
            throw ValidationError("documents have topic vectors of different lengths");
    return K;
}

DistributionTable group_mean(std::span<const TaggedSimplex> docs, KeyKind kind,
                             const std::function<GroupKey(const TaggedSimplex&)>& key_of)
{
    DistributionTable table;
    table.kind = kind;
    table.num_topics = common_dimension(docs);
    for (const auto& d : docs) {
        auto& c = table.entries[key_of(d)];
        if (c.mean.empty())
            c.mean.assign(table.num_topics, 0.0);
        for (std::size_t k = 0; k < table.num_topics; ++k)
            c.mean[k] += d.p[k];
        ++c.support;
    }
    for (auto& [key, c] : table.entries)
        for (auto& v : c.mean)
            v /= static_cast<double>(c.support);
    return table;
}

}  // namespace

DistributionTable venue_distribution(std::span<const TaggedSimplex> docs)
{
    return group_mean(docs, KeyKind::Venue, [](const TaggedSimplex& d) { return GroupKey{d.venue, 0}; });
}

DistributionTable year_distribution(std::span<const TaggedSimplex> docs)
{
    return group_mean(docs, KeyKind::Year, [](const TaggedSimplex& d) { return GroupKey{"", d.year}; });
}

DistributionTable venue_year_distribution(std::span<const TaggedSimplex> docs)
{
    return group_mean(docs, KeyKind::VenueYear,
                      [](const TaggedSimplex& d) { return GroupKey{d.venue, d.year}; });
}

std::vector<double> window_distribution(std::span<const TaggedSimplex> docs, YearRange years,
                                        const std::optional<std::string>& venue)
{
    if (years.first > years.last)
        throw ValidationError("empty year window " + std::to_string(years.first) + ":" +
                              std::to_string(years.last));
    const std::size_t K = common_dimension(docs);
    std::vector<double> mean(K, 0.0);
    std::size_t n = 0;
    for (const auto& d : docs) {
        if (!years.contains(d.year) || (venue && d.venue != *venue))
            continue;
        for (std::size_t k = 0; k < K; ++k)
            mean[k] += d.p[k];
        ++n;
    }
    if (n == 0)
        throw ValidationError("no documents in year window " + std::to_string(years.first) + ":" +
                              std::to_string(years.last));
    for (auto& v : mean)
        v /= static_cast<double>(n);
    return mean;
}

double hellinger(std::span<const double> p, std::span<const double> q)
{
    if (p.size() != q.size())
        throw ValidationError("hellinger: distributions have different lengths");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double d = std::sqrt(p[i]) - std::sqrt(q[i]);
        s += d * d;
    }
    return std::min(1.0, std::sqrt(0.5 * s));
}

double entropy(std::span<const double> p)
{
    double h = 0.0;
    for (double x : p)
        if (x > 0.0)
            h -= x * std::log(x);
    return h;
}

MetricVector uniqueness(const DistributionTable& venue_table)
{
    if (venue_table.entries.size() < 2)
        throw ValidationError("uniqueness needs at least two venues");
    MetricVector out;
    out.kind = MetricKind::Uniqueness;
    for (const auto& [kj, cj] : venue_table.entries) {
        double u = 0.0;
        for (const auto& [ki, ci] : venue_table.entries)
            u += hellinger(ci.mean, cj.mean);
        out.values[venue_table.label(kj)] = u;
    }
    return out;
}

MetricVector entropies(const DistributionTable& table)
{
    MetricVector out;
    out.kind = MetricKind::Entropy;
    for (const auto& [key, c] : table.entries)
        out.values[table.label(key)] = entropy(c.mean);
    return out;
}

UniquenessSeries uniqueness_over_time(const DistributionTable& venue_year_table)
{
    if (venue_year_table.kind != KeyKind::VenueYear)
        throw ValidationError("uniqueness_over_time needs a venue-year table");
    std::map<int, std::vector<std::pair<std::string, const std::vector<double>*>>> by_year;
    for (const auto& [key, c] : venue_year_table.entries)
        by_year[key.year].emplace_back(key.venue, &c.mean);

    UniquenessSeries out;
    for (const auto& [year, venues] : by_year) {
        if (venues.size() < 2)
            continue;
        for (const auto& [vj, pj] : venues) {
            double u = 0.0;
            for (const auto& [vi, pi] : venues)
                u += hellinger(*pi, *pj);
            out[vj][year] = u;
        }
    }
    return out;
}

void write_table_csv(std::ostream& out, const DistributionTable& table)
{
    out << "key";
    for (std::size_t k = 1; k <= table.num_topics; ++k)
        out << ",topic_" << k;
    out << '\n';
    for (const auto& [key, c] : table.entries) {
        out << csv::escape(table.label(key));
        for (double v : c.mean)
            out << ',' << csv::number(v);
        out << '\n';
    }
}

void write_metric_csv(std::ostream& out, const MetricVector& metric, bool sort_by_value)
{
    std::vector<std::pair<std::string, double>> rows(metric.values.begin(), metric.values.end());
    if (sort_by_value)
        std::stable_sort(rows.begin(), rows.end(),
                         [](const auto& a, const auto& b) { return a.second < b.second; });
    out << "key,value\n";
    for (const auto& [key, v] : rows)
        out << csv::escape(key) << ',' << csv::number(v) << '\n';
}

}  // namespace topicscope
