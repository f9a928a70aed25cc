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

#ifndef TOPICSCOPE_DYNAMICS_HPP
#define TOPICSCOPE_DYNAMICS_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "topicscope/aggregate.hpp"
#include "topicscope/numeric.hpp"

namespace topicscope {

// Observed composite distributions of one venue (or the whole field), one
// row per observed year in ascending order. Publication gaps are simply
// missing rows.
struct TopicSeries {
    std::vector<int> years;
    Matrix values;  // years x K

    std::size_t num_topics() const { return values.cols(); }
};

TopicSeries venue_series(const DistributionTable& venue_year_table, const std::string& venue);
TopicSeries field_series(const DistributionTable& year_table);

using TopicMask = std::set<std::size_t>;

struct TopicValue {
    std::size_t topic = 0;
    double value = 0.0;

    bool operator==(const TopicValue&) const = default;
};

struct TopicPeak {
    std::size_t topic = 0;
    int year = 0;
    double value = 0.0;

    bool operator==(const TopicPeak&) const = default;
};

struct RangeSummary {
    std::vector<double> ranges;  // per topic, max - min over observed years
    TopicValue min;              // phi_min
    TopicValue max;              // phi_max
};

struct ChangeSummary {
    std::vector<double> changes;        // latest minus first observed year
    std::optional<TopicValue> decrease;  // psi_dec, most negative change
    std::optional<TopicValue> increase;  // psi_inc, most positive change
};

struct VolatilitySummary {
    std::vector<double> sds;  // sample sd of adjacent-year differences
    TopicValue min;           // tau_min
    TopicValue max;           // tau_max
};

struct PeakSummary {
    TopicPeak overall;      // p_max
    TopicPeak most_recent;  // p_max at the latest observed year
};

// Every argmin/argmax skips masked topics and resolves ties to the lowest
// topic index (and, for peaks, the earliest year). Each throws
// ValidationError when the series is too short or every topic is masked.
RangeSummary topic_ranges(const TopicSeries& series, const TopicMask& excluded = {});
ChangeSummary topic_changes(const TopicSeries& series, const TopicMask& excluded = {});
VolatilitySummary topic_volatility(const TopicSeries& series, const TopicMask& excluded = {});
PeakSummary peak_topics(const TopicSeries& series, const TopicMask& excluded = {});

struct TopicDynamicsReport {
    std::string key;
    std::size_t observed_years = 0;
    std::optional<TopicValue> phi_min, phi_max;
    std::optional<TopicValue> psi_dec, psi_inc;
    std::optional<TopicValue> tau_min, tau_max;
    std::optional<TopicPeak> p_max, p_max_mry;
    TopicMask excluded;
};

// Computes whichever metrics the series length allows: ranges and changes
// need two observed years, volatility three, peaks one.
TopicDynamicsReport dynamics_report(const std::string& key, const TopicSeries& series,
                                    const TopicMask& excluded = {});
TopicDynamicsReport venue_dynamics(const DistributionTable& venue_year_table, const std::string& venue,
                                   const TopicMask& excluded = {});
std::vector<TopicDynamicsReport> all_venue_dynamics(const DistributionTable& venue_year_table,
                                                    const TopicMask& excluded = {});
// All venues combined, from the per-year composites.
TopicDynamicsReport field_dynamics(const DistributionTable& year_table, const TopicMask& excluded = {});

struct MetricTally {
    std::string metric;
    std::size_t topic = 0;
    std::size_t venues = 0;
};

// Per metric, how many venues report each topic.
std::vector<MetricTally> tally_metrics(const std::vector<TopicDynamicsReport>& reports);

// Topic numbers in the CSV exports are 1-based.
void write_dynamics_csv(std::ostream& out, const std::vector<TopicDynamicsReport>& reports);
void write_tally_csv(std::ostream& out, const std::vector<MetricTally>& tally);

}  // namespace topicscope

#endif  // TOPICSCOPE_DYNAMICS_HPP
