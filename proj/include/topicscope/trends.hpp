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

#ifndef TOPICSCOPE_TRENDS_HPP
#define TOPICSCOPE_TRENDS_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "topicscope/aggregate.hpp"

namespace topicscope {

struct OlsFit {
    double slope = 0.0;
    double intercept = 0.0;
    double t_stat = 0.0;
    double p_value = 1.0;  // two-sided, H0: slope = 0
    std::size_t n = 0;
    bool exact_fit = false;  // residuals vanish; p is 0 (or 1 for a flat series)
};

// Closed-form least squares y = intercept + slope * x with a t-test on the
// slope (n - 2 degrees of freedom). Throws ValidationError for fewer than
// three points or when every x is equal.
OlsFit ols_fit(std::span<const double> xs, std::span<const double> ys);

enum class TrendCategory {
    Decreasing,
    Neutral,
    Increasing,
};

std::string_view to_string(TrendCategory c);

inline constexpr double kSignificanceLevel = 0.05;

// Significant (p < 0.05) slopes beyond +-slope_eps are increasing or
// decreasing; everything else is neutral.
TrendCategory classify_trend(const OlsFit& fit, double slope_eps = 0.0);

struct TrendResult {
    std::string venue;
    OlsFit fit;
    bool significant = false;
    TrendCategory category = TrendCategory::Neutral;
};

struct TrendSuite {
    std::vector<TrendResult> fitted;
    std::vector<std::string> unfittable;  // fewer than three observed years
};

TrendSuite trend_suite(const UniquenessSeries& series, double slope_eps = 0.0);

// CSV with header `journal,m,p_value,significant,category`; slopes in
// scientific notation with 4 significant digits. Unfittable venues get
// empty numeric cells and category `unfittable`.
void write_trends_csv(std::ostream& out, const TrendSuite& suite);

// CSV with header `venue,year,uniqueness`.
void write_uniqueness_series_csv(std::ostream& out, const UniquenessSeries& series);

}  // namespace topicscope

#endif  // TOPICSCOPE_TRENDS_HPP
