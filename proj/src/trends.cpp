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

#include "topicscope/trends.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "topicscope/csv.hpp"
#include "topicscope/error.hpp"
#include "topicscope/numeric.hpp"

namespace topicscope {

OlsFit ols_fit(std::span<const double> xs, std::span<const double> ys)
{
    if (xs.size() != ys.size())
        throw ValidationError("ols_fit: xs and ys differ in length");
    const std::size_t n = xs.size();
    if (n < 3)
        throw ValidationError("ols_fit: needs at least 3 points");

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0))
        throw ValidationError("ols_fit: all x values are equal");

    OlsFit fit;
    fit.n = n;
    if (std::all_of(ys.begin(), ys.end(), [&](double y) { return y == ys[0]; })) {
        fit.slope = 0.0;
        fit.intercept = ys[0];
        fit.t_stat = 0.0;
        fit.p_value = 1.0;
        fit.exact_fit = true;
        return fit;
    }

    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        sse += r * r;
    }
    // Residual energy below rounding noise relative to the spread of y.
    if (sse <= 1e-20 * syy) {
        fit.exact_fit = true;
        fit.t_stat = std::copysign(std::numeric_limits<double>::infinity(), fit.slope);
        fit.p_value = fit.slope == 0.0 ? 1.0 : 0.0;
        return fit;
    }
    const double dof = static_cast<double>(n - 2);
    const double se = std::sqrt(sse / dof / sxx);
    fit.t_stat = fit.slope / se;
    fit.p_value = student_t_two_sided(fit.t_stat, dof);
    return fit;
}

std::string_view to_string(TrendCategory c)
{
    switch (c) {
    case TrendCategory::Decreasing:
        return "decreasing";
    case TrendCategory::Neutral:
        return "neutral";
    case TrendCategory::Increasing:
        return "increasing";
    }
    return "neutral";
}

TrendCategory classify_trend(const OlsFit& fit, double slope_eps)
{
    if (fit.p_value < kSignificanceLevel) {
        if (fit.slope < -slope_eps)
            return TrendCategory::Decreasing;
        if (fit.slope > slope_eps)
            return TrendCategory::Increasing;
    }
    return TrendCategory::Neutral;
}

TrendSuite trend_suite(const UniquenessSeries& series, double slope_eps)
{
    TrendSuite suite;
    for (const auto& [venue, by_year] : series) {
        if (by_year.size() < 3) {
            suite.unfittable.push_back(venue);
            continue;
        }
        std::vector<double> xs, ys;
        for (const auto& [year, u] : by_year) {
            xs.push_back(static_cast<double>(year));
            ys.push_back(u);
        }
        TrendResult r;
        r.venue = venue;
        r.fit = ols_fit(xs, ys);
        r.significant = r.fit.p_value < kSignificanceLevel;
        r.category = classify_trend(r.fit, slope_eps);
        suite.fitted.push_back(std::move(r));
    }
    return suite;
}

namespace {

std::string slope_text(double m)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", m);
    return buf;
}

}  // namespace

void write_trends_csv(std::ostream& out, const TrendSuite& suite)
{
    out << "journal,m,p_value,significant,category\n";
    for (const auto& r : suite.fitted)
        out << csv::escape(r.venue) << ',' << slope_text(r.fit.slope) << ','
            << csv::number(r.fit.p_value) << ',' << (r.significant ? "true" : "false") << ','
            << to_string(r.category) << '\n';
    for (const auto& v : suite.unfittable)
        out << csv::escape(v) << ",,,false,unfittable\n";
}

void write_uniqueness_series_csv(std::ostream& out, const UniquenessSeries& series)
{
    out << "venue,year,uniqueness\n";
    for (const auto& [venue, by_year] : series)
        for (const auto& [year, u] : by_year)
            out << csv::escape(venue) << ',' << year << ',' << csv::number(u) << '\n';
}

}  // namespace topicscope
