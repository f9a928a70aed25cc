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

// Schema checks for the analysis bundle, one per export family.

#ifndef TOPICSCOPE_TESTS_SCHEMA_HPP
#define TOPICSCOPE_TESTS_SCHEMA_HPP

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "topicscope/csv.hpp"

namespace schema {

namespace fs = std::filesystem;
using Rows = std::vector<std::vector<std::string>>;

struct Report {
    std::vector<std::string> problems;
    std::set<std::string> families;  // families that passed

    bool ok() const { return problems.empty() && families.size() == 9; }
};

inline bool read_rows(const fs::path& p, Rows& rows, Report& r)
{
    std::ifstream in(p);
    if (!in) {
        r.problems.push_back("missing " + p.string());
        return false;
    }
    try {
        rows = topicscope::csv::read(in);
    } catch (const std::exception& e) {
        r.problems.push_back(p.string() + ": " + e.what());
        return false;
    }
    if (rows.empty()) {
        r.problems.push_back(p.string() + ": empty");
        return false;
    }
    return true;
}

inline bool number(const std::string& s, double& v)
{
    try {
        v = topicscope::csv::parse_double(s);
        return std::isfinite(v);
    } catch (...) {
        return false;
    }
}

inline std::vector<std::string> topic_header(std::size_t K, const std::string& first)
{
    std::vector<std::string> h{first};
    for (std::size_t k = 1; k <= K; ++k)
        h.push_back("topic_" + std::to_string(k));
    return h;
}

// Header `key,topic_1..K`, every row a simplex after printed rounding.
inline bool simplex_table(const fs::path& p, std::size_t K, Report& r)
{
    Rows rows;
    if (!read_rows(p, rows, r))
        return false;
    if (rows[0] != topic_header(K, "key")) {
        r.problems.push_back(p.string() + ": bad header");
        return false;
    }
    if (rows.size() < 2) {
        r.problems.push_back(p.string() + ": no rows");
        return false;
    }
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != K + 1 || rows[i][0].empty()) {
            r.problems.push_back(p.string() + ": malformed row " + std::to_string(i));
            return false;
        }
        double s = 0.0;
        for (std::size_t k = 1; k <= K; ++k) {
            double v;
            if (!number(rows[i][k], v) || v < 0.0) {
                r.problems.push_back(p.string() + ": bad proportion in row " + std::to_string(i));
                return false;
            }
            s += v;
        }
        if (std::fabs(s - 1.0) > 1e-6) {
            r.problems.push_back(p.string() + ": row " + std::to_string(i) + " sums to " + std::to_string(s));
            return false;
        }
    }
    return true;
}

inline bool header_and_width(const fs::path& p, const std::vector<std::string>& header, Report& r, Rows& rows)
{
    if (!read_rows(p, rows, r))
        return false;
    if (rows[0] != header) {
        r.problems.push_back(p.string() + ": bad header");
        return false;
    }
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].size() != header.size()) {
            r.problems.push_back(p.string() + ": wrong width in row " + std::to_string(i));
            return false;
        }
    return true;
}

inline bool topic_number(const std::string& s, std::size_t K)
{
    if (s.empty())
        return true;  // metric absent for this venue
    double v;
    return number(s, v) && v >= 1 && v <= static_cast<double>(K) && v == std::floor(v);
}

// Validates the nine export families written by the analyze command.
inline Report validate_bundle(const fs::path& dir, std::size_t K)
{
    Report r;
    Rows rows;

    if (simplex_table(dir / "year_topics.csv", K, r))
        r.families.insert("year_topics");

    if (header_and_width(dir / "window_comparison.csv", {"window", "rank", "topic", "proportion"}, r, rows)) {
        std::set<std::string> windows;
        bool good = rows.size() == 1 + 2 * K;
        for (std::size_t i = 1; i < rows.size() && good; ++i) {
            windows.insert(rows[i][0]);
            good = topic_number(rows[i][2], K) && !rows[i][2].empty();
        }
        if (good && windows.size() == 2)
            r.families.insert("window_comparison");
        else
            r.problems.push_back("window_comparison.csv: expected K ranked rows for two windows");
    }

    if (simplex_table(dir / "venue_topics.csv", K, r) &&
        header_and_width(dir / "venue_entropy.csv", {"key", "value"}, r, rows)) {
        bool good = rows.size() >= 3;
        double prev = -1.0;
        for (std::size_t i = 1; i < rows.size() && good; ++i) {
            double v;
            good = number(rows[i][1], v) && v >= prev && v >= 0.0 && v <= std::log(static_cast<double>(K)) + 1e-9;
            prev = v;
        }
        if (good)
            r.families.insert("venue_heatmap_entropy");
        else
            r.problems.push_back("venue_entropy.csv: values out of range or unsorted");
    }

    {
        std::ifstream nwk(dir / "dendrogram.nwk");
        std::string tree((std::istreambuf_iterator<char>(nwk)), std::istreambuf_iterator<char>());
        int depth = 0;
        bool balanced = !tree.empty();
        for (char c : tree) {
            depth += c == '(' ? 1 : c == ')' ? -1 : 0;
            balanced = balanced && depth >= 0;
        }
        Rows leaves;
        const bool merges_ok =
            header_and_width(dir / "dendrogram_merges.csv", {"node_a", "node_b", "height", "new_node"}, r, rows) &&
            header_and_width(dir / "dendrogram_leaves.csv", {"node", "venue"}, r, leaves) &&
            rows.size() == leaves.size() - 1;
        bool heights = merges_ok;
        double prev = 0.0;
        for (std::size_t i = 1; heights && i < rows.size(); ++i) {
            double h;
            heights = number(rows[i][2], h) && h >= prev - 1e-12;
            prev = h;
        }
        const auto end = tree.find_last_not_of("\n");
        if (balanced && depth == 0 && end != std::string::npos && tree[end] == ';' && heights)
            r.families.insert("dendrogram");
        else
            r.problems.push_back("dendrogram: malformed newick or merge table");
    }

    if (read_rows(dir / "uniqueness_windows.csv", rows, r)) {
        bool good = rows[0].size() == 3 && rows[0][0] == "venue" && rows[0][1].rfind("uniqueness_", 0) == 0 &&
                    rows[0][2].rfind("uniqueness_", 0) == 0 && rows.size() >= 3;
        for (std::size_t i = 1; i < rows.size() && good; ++i) {
            double v;
            good = rows[i].size() == 3;
            for (std::size_t c = 1; good && c < 3; ++c)
                good = rows[i][c].empty() || (number(rows[i][c], v) && v >= 0.0);
        }
        if (good)
            r.families.insert("uniqueness_windows");
        else
            r.problems.push_back("uniqueness_windows.csv: bad layout");
    }

    {
        bool good = simplex_table(dir / "venue_year_topics.csv", K, r) && fs::is_directory(dir / "venue_years");
        std::size_t files = 0;
        if (good)
            for (const auto& e : fs::directory_iterator(dir / "venue_years")) {
                ++files;
                good = good && simplex_table(e.path(), K, r);
            }
        if (good && files > 0)
            r.families.insert("venue_years");
        else if (files == 0)
            r.problems.push_back("venue_years: no per-venue files");
    }

    {
        const std::vector<std::string> header{"venue", "phi_min", "phi_max", "psi_dec", "psi_inc",
                                              "tau_min", "tau_max", "p_max", "p_max_year", "p_max_value",
                                              "p_mry", "p_mry_year", "p_mry_value"};
        Rows tally;
        bool good = header_and_width(dir / "dynamics.csv", header, r, rows) &&
                    header_and_width(dir / "dynamics_tally.csv", {"metric", "topic", "venue_count"}, r, tally);
        for (std::size_t i = 1; good && i < rows.size(); ++i)
            for (std::size_t c : {1, 2, 3, 4, 5, 6, 7, 10})
                good = good && topic_number(rows[i][c], K);
        if (good && rows.size() >= 2 && rows.back()[0] == "ALL")
            r.families.insert("dynamics");
        else
            r.problems.push_back("dynamics: bad rows or missing field row");
    }

    {
        Rows trends;
        bool good = header_and_width(dir / "uniqueness_over_time.csv", {"venue", "year", "uniqueness"}, r, rows) &&
                    header_and_width(dir / "trends.csv", {"journal", "m", "p_value", "significant", "category"}, r,
                                     trends);
        const std::set<std::string> categories{"decreasing", "neutral", "increasing", "unfittable"};
        for (std::size_t i = 1; good && i < trends.size(); ++i) {
            double p;
            good = categories.count(trends[i][4]) &&
                   (trends[i][4] == "unfittable" || (number(trends[i][2], p) && p >= 0.0 && p <= 1.0));
        }
        if (good)
            r.families.insert("uniqueness_trends");
        else
            r.problems.push_back("trends.csv: bad rows");
    }

    {
        bool good = true;
        for (std::size_t k = 1; k <= K && good; ++k) {
            char name[32];
            std::snprintf(name, sizeof name, "topic_%02zu.csv", k);
            good = header_and_width(dir / "top_terms" / name, {"term", "probability"}, r, rows) && rows.size() > 1;
            double prev = 1.0;
            for (std::size_t i = 1; good && i < rows.size(); ++i) {
                double p;
                good = number(rows[i][1], p) && p <= prev;
                prev = p;
            }
        }
        if (good)
            r.families.insert("top_terms");
    }
    return r;
}

}  // namespace schema

#endif  // TOPICSCOPE_TESTS_SCHEMA_HPP
