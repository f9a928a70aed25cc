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

#include "topicscope/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "topicscope/csv.hpp"
#include "topicscope/error.hpp"

namespace topicscope {

LabeledDistances pairwise_euclidean(const DistributionTable& venue_table)
{
    const std::size_t N = venue_table.entries.size();
    if (N < 2)
        throw ValidationError("clustering needs at least two venues");
    LabeledDistances out;
    std::vector<const std::vector<double>*> rows;
    for (const auto& [key, c] : venue_table.entries) {
        out.labels.push_back(venue_table.label(key));
        rows.push_back(&c.mean);
    }
    out.distances = Matrix(N, N);
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = i + 1; j < N; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < venue_table.num_topics; ++k) {
                const double d = (*rows[i])[k] - (*rows[j])[k];
                s += d * d;
            }
            out.distances(i, j) = out.distances(j, i) = std::sqrt(s);
        }
    }
    return out;
}

std::vector<std::size_t> Dendrogram::members(std::size_t node) const
{
    const std::size_t N = leaves.size();
    if (node >= num_nodes())
        throw ValidationError("dendrogram node " + std::to_string(node) + " out of range");
    if (node < N)
        return {node};
    const Merge& m = merges[node - N];
    auto out = members(m.a);
    const auto right = members(m.b);
    out.insert(out.end(), right.begin(), right.end());
    std::sort(out.begin(), out.end());
    return out;
}

Dendrogram agglomerate_average_link(const Matrix& distances, std::vector<std::string> leaves)
{
    const std::size_t N = distances.rows();
    if (distances.cols() != N || leaves.size() != N)
        throw ValidationError("distance matrix must be square and match the leaf count");
    if (N == 0)
        throw ValidationError("cannot cluster an empty set");
    for (std::size_t i = 0; i < N; ++i) {
        if (distances(i, i) != 0.0)
            throw ValidationError("distance matrix diagonal must be zero");
        for (std::size_t j = 0; j < N; ++j) {
            const double d = distances(i, j);
            if (std::isnan(d) || d < 0.0)
                throw ValidationError("distances must be non-negative numbers");
            if (d != distances(j, i))
                throw ValidationError("distance matrix must be symmetric");
        }
    }

    // Cross-pair distance sums between active clusters, indexed by node id.
    const std::size_t total = 2 * N - 1;
    Matrix sums(total, total);
    std::vector<std::size_t> size(total, 0);
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < N; ++i) {
        size[i] = 1;
        active.push_back(i);
        for (std::size_t j = 0; j < N; ++j)
            sums(i, j) = distances(i, j);
    }

    Dendrogram tree;
    tree.leaves = std::move(leaves);
    for (std::size_t node = N; node < total; ++node) {
        std::size_t best_a = 0, best_b = 0;
        double best = std::numeric_limits<double>::infinity();
        // `active` stays sorted, so the first strict minimum is the smallest pair.
        for (std::size_t x = 0; x < active.size(); ++x) {
            for (std::size_t y = x + 1; y < active.size(); ++y) {
                const std::size_t a = active[x], b = active[y];
                const double avg = sums(a, b) / static_cast<double>(size[a] * size[b]);
                if (avg < best) {
                    best = avg;
                    best_a = a;
                    best_b = b;
                }
            }
        }
        tree.merges.push_back({best_a, best_b, best, node});
        size[node] = size[best_a] + size[best_b];
        std::erase(active, best_a);
        std::erase(active, best_b);
        for (std::size_t c : active)
            sums(c, node) = sums(node, c) = sums(c, best_a) + sums(c, best_b);
        active.push_back(node);
    }
    return tree;
}

Dendrogram agglomerate_average_link(const LabeledDistances& distances)
{
    return agglomerate_average_link(distances.distances, distances.labels);
}

DendrogramFormat parse_dendrogram_format(std::string_view name)
{
    if (name == "newick")
        return DendrogramFormat::Newick;
    if (name == "merge-table")
        return DendrogramFormat::MergeTable;
    throw ValidationError("unknown dendrogram format '" + std::string(name) + "'");
}

namespace {

std::string newick_label(const std::string& label)
{
    if (label.find_first_of(" \t\r\n()[]':;,") == std::string::npos && !label.empty())
        return label;
    std::string out = "'";
    for (char c : label) {
        if (c == '\'')
            out += '\'';
        out += c;
    }
    return out + "'";
}

}  // namespace

std::string to_newick(const Dendrogram& tree)
{
    const std::size_t N = tree.leaves.size();
    if (N == 0)
        throw ValidationError("cannot export an empty dendrogram");
    auto height = [&](std::size_t node) { return node < N ? 0.0 : tree.merges[node - N].height; };
    auto render = [&](auto&& self, std::size_t node) -> std::string {
        if (node < N)
            return newick_label(tree.leaves[node]);
        const Merge& m = tree.merges[node - N];
        return "(" + self(self, m.a) + ":" + csv::exact((m.height - height(m.a)) / 2.0) + "," +
               self(self, m.b) + ":" + csv::exact((m.height - height(m.b)) / 2.0) + ")";
    };
    return render(render, tree.num_nodes() - 1) + ";";
}

std::string to_merge_table(const Dendrogram& tree)
{
    std::ostringstream out;
    out << "node_a,node_b,height,new_node\n";
    for (const auto& m : tree.merges)
        out << m.a << ',' << m.b << ',' << csv::exact(m.height) << ',' << m.node << '\n';
    return out.str();
}

std::string export_dendrogram(const Dendrogram& tree, DendrogramFormat format)
{
    return format == DendrogramFormat::Newick ? to_newick(tree) + "\n" : to_merge_table(tree);
}

Dendrogram parse_merge_table(std::string_view csv_text, std::vector<std::string> leaves)
{
    std::istringstream in{std::string(csv_text)};
    const auto rows = csv::read(in);
    if (rows.empty() || rows.front() != std::vector<std::string>{"node_a", "node_b", "height", "new_node"})
        throw InputError("merge table: bad header");
    Dendrogram tree;
    tree.leaves = std::move(leaves);
    const std::size_t N = tree.leaves.size();
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.size() != 4)
            throw InputError("merge table: row " + std::to_string(i) + " needs 4 fields");
        Merge m;
        m.a = static_cast<std::size_t>(csv::parse_int(r[0]));
        m.b = static_cast<std::size_t>(csv::parse_int(r[1]));
        m.height = csv::parse_double(r[2]);
        m.node = static_cast<std::size_t>(csv::parse_int(r[3]));
        if (m.node != N + i - 1 || m.a >= m.node || m.b >= m.node)
            throw InputError("merge table: row " + std::to_string(i) + " has inconsistent node ids");
        tree.merges.push_back(m);
    }
    if (N > 0 && tree.merges.size() != N - 1)
        throw InputError("merge table: expected " + std::to_string(N - 1) + " merges");
    return tree;
}

}  // namespace topicscope
