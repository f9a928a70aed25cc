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

#include "topicscope/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>
#include <map>
#include <ostream>

#include "topicscope/csv.hpp"
#include "topicscope/error.hpp"

namespace topicscope {

TopicSeries venue_series(const DistributionTable& venue_year_table, const std::string& venue)
{
    if (venue_year_table.kind != KeyKind::VenueYear)
        throw ValidationError("venue_series needs a venue-year table");
    std::vector<const Composite*> rows;
    TopicSeries s;
    for (auto it = venue_year_table.entries.lower_bound(GroupKey{venue, std::numeric_limits<int>::min()});
         it != venue_year_table.entries.end() && it->first.venue == venue; ++it) {
        s.years.push_back(it->first.year);
        rows.push_back(&it->second);
    }
    if (rows.empty())
        throw ValidationError("venue '" + venue + "' has no observed years");
    s.values = Matrix(rows.size(), venue_year_table.num_topics);
    for (std::size_t i = 0; i < rows.size(); ++i)
        std::copy(rows[i]->mean.begin(), rows[i]->mean.end(), s.values.row(i).begin());
    return s;
}

TopicSeries field_series(const DistributionTable& year_table)
{
    if (year_table.kind != KeyKind::Year)
        throw ValidationError("field_series needs a year table");
    if (year_table.entries.empty())
        throw ValidationError("year table is empty");
    TopicSeries s;
    s.values = Matrix(year_table.entries.size(), year_table.num_topics);
    std::size_t i = 0;
    for (const auto& [key, c] : year_table.entries) {
        s.years.push_back(key.year);
        std::copy(c.mean.begin(), c.mean.end(), s.values.row(i++).begin());
    }
    return s;
}

namespace {

std::vector<std::size_t> active_topics(std::size_t K, const TopicMask& excluded)
{
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < K; ++k)
        if (!excluded.contains(k))
            out.push_back(k);
    if (out.empty())
        throw ValidationError("every topic is excluded");
    return out;
}

void require_years(const TopicSeries& s, std::size_t n, const char* what)
{
    if (s.years.size() < n)
        throw ValidationError(std::string(what) + " needs at least " + std::to_string(n) +
                              " observed years, got " + std::to_string(s.years.size()));
}

// Lowest-index argmin and argmax of `values` over the active topics.
std::pair<TopicValue, TopicValue> extremes(const std::vector<double>& values,
                                           const std::vector<std::size_t>& active)
{
    TopicValue lo{active.front(), values[active.front()]};
    TopicValue hi = lo;
    for (std::size_t k : active) {
        if (values[k] < lo.value)
            lo = {k, values[k]};
        if (values[k] > hi.value)
            hi = {k, values[k]};
    }
    return {lo, hi};
}

}  // namespace

RangeSummary topic_ranges(const TopicSeries& series, const TopicMask& excluded)
{
    require_years(series, 2, "topic ranges");
    const std::size_t K = series.num_topics();
    const auto active = active_topics(K, excluded);
    RangeSummary out;
    out.ranges.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
        double lo = series.values(0, k), hi = lo;
        for (std::size_t y = 1; y < series.years.size(); ++y) {
            lo = std::min(lo, series.values(y, k));
            hi = std::max(hi, series.values(y, k));
        }
        out.ranges[k] = hi - lo;
    }
    std::tie(out.min, out.max) = extremes(out.ranges, active);
    return out;
}

ChangeSummary topic_changes(const TopicSeries& series, const TopicMask& excluded)
{
    require_years(series, 2, "topic changes");
    const std::size_t K = series.num_topics();
    const auto active = active_topics(K, excluded);
    const std::size_t last = series.years.size() - 1;
    ChangeSummary out;
    out.changes.resize(K);
    for (std::size_t k = 0; k < K; ++k)
        out.changes[k] = series.values(last, k) - series.values(0, k);
    for (std::size_t k : active) {
        const double c = out.changes[k];
        if (c < 0.0 && (!out.decrease || c < out.decrease->value))
            out.decrease = TopicValue{k, c};
        if (c > 0.0 && (!out.increase || c > out.increase->value))
            out.increase = TopicValue{k, c};
    }
    return out;
}

VolatilitySummary topic_volatility(const TopicSeries& series, const TopicMask& excluded)
{
    require_years(series, 3, "topic volatility");
    const std::size_t K = series.num_topics();
    const auto active = active_topics(K, excluded);
    const std::size_t n = series.years.size() - 1;
    VolatilitySummary out;
    out.sds.resize(K);
    std::vector<double> diffs(n);
    for (std::size_t k = 0; k < K; ++k) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            diffs[i] = series.values(i + 1, k) - series.values(i, k);
            mean += diffs[i];
        }
        mean /= static_cast<double>(n);
        double ss = 0.0;
        for (double d : diffs)
            ss += (d - mean) * (d - mean);
        out.sds[k] = std::sqrt(ss / static_cast<double>(n - 1));
    }
    std::tie(out.min, out.max) = extremes(out.sds, active);
    return out;
}

PeakSummary peak_topics(const TopicSeries& series, const TopicMask& excluded)
{
    require_years(series, 1, "peak topics");
    const auto active = active_topics(series.num_topics(), excluded);
    auto best_in_year = [&](std::size_t y) {
        TopicPeak p{active.front(), series.years[y], series.values(y, active.front())};
        for (std::size_t k : active)
            if (series.values(y, k) > p.value)
                p = {k, series.years[y], series.values(y, k)};
        return p;
    };
    PeakSummary out;
    out.overall = best_in_year(0);
    for (std::size_t y = 1; y < series.years.size(); ++y) {
        const TopicPeak p = best_in_year(y);
        if (p.value > out.overall.value)
            out.overall = p;
    }
    out.most_recent = best_in_year(series.years.size() - 1);
    return out;
}

TopicDynamicsReport dynamics_report(const std::string& key, const TopicSeries& series,
                                    const TopicMask& excluded)
{
    TopicDynamicsReport r;
    r.key = key;
    r.observed_years = series.years.size();
    r.excluded = excluded;
    const PeakSummary peaks = peak_topics(series, excluded);
    r.p_max = peaks.overall;
    r.p_max_mry = peaks.most_recent;
    if (series.years.size() >= 2) {
        const RangeSummary ranges = topic_ranges(series, excluded);
        r.phi_min = ranges.min;
        r.phi_max = ranges.max;
        const ChangeSummary changes = topic_changes(series, excluded);
        r.psi_dec = changes.decrease;
        r.psi_inc = changes.increase;
    }
    if (series.years.size() >= 3) {
        const VolatilitySummary vol = topic_volatility(series, excluded);
        r.tau_min = vol.min;
        r.tau_max = vol.max;
    }
    return r;
}

TopicDynamicsReport venue_dynamics(const DistributionTable& venue_year_table, const std::string& venue,
                                   const TopicMask& excluded)
{
    return dynamics_report(venue, venue_series(venue_year_table, venue), excluded);
}

std::vector<TopicDynamicsReport> all_venue_dynamics(const DistributionTable& venue_year_table,
                                                    const TopicMask& excluded)
{
    std::vector<TopicDynamicsReport> out;
    std::string previous;
    bool first = true;
    for (const auto& [key, c] : venue_year_table.entries) {
        if (!first && key.venue == previous)
            continue;
        out.push_back(venue_dynamics(venue_year_table, key.venue, excluded));
        previous = key.venue;
        first = false;
    }
    return out;
}

TopicDynamicsReport field_dynamics(const DistributionTable& year_table, const TopicMask& excluded)
{
    return dynamics_report("ALL", field_series(year_table), excluded);
}

std::vector<MetricTally> tally_metrics(const std::vector<TopicDynamicsReport>& reports)
{
    std::map<std::string, std::map<std::size_t, std::size_t>> counts;
    auto add = [&](const char* metric, std::optional<std::size_t> topic) {
        if (topic)
            ++counts[metric][*topic];
    };
    auto topic_of = [](const auto& opt) -> std::optional<std::size_t> {
        if (opt)
            return opt->topic;
        return std::nullopt;
    };
    for (const auto& r : reports) {
        add("phi_min", topic_of(r.phi_min));
        add("phi_max", topic_of(r.phi_max));
        add("psi_dec", topic_of(r.psi_dec));
        add("psi_inc", topic_of(r.psi_inc));
        add("tau_min", topic_of(r.tau_min));
        add("tau_max", topic_of(r.tau_max));
        add("p_max", topic_of(r.p_max));
        add("p_max_mry", topic_of(r.p_max_mry));
    }
    static const char* kOrder[] = {"phi_min", "phi_max", "psi_dec", "psi_inc",
                                   "tau_min", "tau_max", "p_max",   "p_max_mry"};
    std::vector<MetricTally> out;
    for (const char* metric : kOrder)
        for (const auto& [topic, n] : counts[metric])
            out.push_back({metric, topic, n});
    return out;
}

namespace {

std::string topic_cell(const std::optional<TopicValue>& v)
{
    return v ? std::to_string(v->topic + 1) : std::string();
}

}  // namespace

void write_dynamics_csv(std::ostream& out, const std::vector<TopicDynamicsReport>& reports)
{
    out << "venue,phi_min,phi_max,psi_dec,psi_inc,tau_min,tau_max,p_max,p_max_year,p_max_value,"
           "p_mry,p_mry_year,p_mry_value\n";
    for (const auto& r : reports) {
        out << csv::escape(r.key) << ',' << topic_cell(r.phi_min) << ',' << topic_cell(r.phi_max) << ','
            << topic_cell(r.psi_dec) << ',' << topic_cell(r.psi_inc) << ',' << topic_cell(r.tau_min)
            << ',' << topic_cell(r.tau_max);
        for (const auto* p : {&r.p_max, &r.p_max_mry}) {
            if (*p)
                out << ',' << (*p)->topic + 1 << ',' << (*p)->year << ',' << csv::number((*p)->value);
            else
                out << ",,,";
        }
        out << '\n';
    }
}

void write_tally_csv(std::ostream& out, const std::vector<MetricTally>& tally)
{
    out << "metric,topic,venue_count\n";
    for (const auto& t : tally)
        out << t.metric << ',' << t.topic + 1 << ',' << t.venues << '\n';
}

}  // namespace topicscope
