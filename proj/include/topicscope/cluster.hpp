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

#ifndef TOPICSCOPE_CLUSTER_HPP
#define TOPICSCOPE_CLUSTER_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "topicscope/aggregate.hpp"
#include "topicscope/numeric.hpp"

namespace topicscope {

struct LabeledDistances {
    std::vector<std::string> labels;
    Matrix distances;  // symmetric, zero diagonal
};

// Euclidean distances between every pair of venue composites, venues in
// key order. Throws ValidationError with fewer than two venues.
LabeledDistances pairwise_euclidean(const DistributionTable& venue_table);

struct Merge {
    std::size_t a = 0;  // smaller node id
    std::size_t b = 0;
    double height = 0.0;
    std::size_t node = 0;  // id of the new cluster

    bool operator==(const Merge&) const = default;
};

// Leaves are nodes 0..N-1; merge i creates node N+i.
struct Dendrogram {
    std::vector<std::string> leaves;
    std::vector<Merge> merges;

    std::size_t num_nodes() const { return leaves.size() + merges.size(); }
    // Leaf ids below `node`, ascending.
    std::vector<std::size_t> members(std::size_t node) const;

    bool operator==(const Dendrogram&) const = default;
};

// Unweighted average linkage (UPGMA): the distance between two clusters is
// the mean distance over all cross pairs. The closest pair is merged first;
// ties go to the smallest (a, b) node-id pair.
Dendrogram agglomerate_average_link(const Matrix& distances, std::vector<std::string> leaves);
Dendrogram agglomerate_average_link(const LabeledDistances& distances);

enum class DendrogramFormat {
    Newick,
    MergeTable,
};

// "newick" or "merge-table"; throws ValidationError otherwise.
DendrogramFormat parse_dendrogram_format(std::string_view name);

// Newick branch lengths are half the height difference between a node and
// its parent, so every leaf sits at depth height/2 of the root.
std::string to_newick(const Dendrogram& tree);
// CSV with header `node_a,node_b,height,new_node`; heights in shortest
// round-trip form.
std::string to_merge_table(const Dendrogram& tree);
std::string export_dendrogram(const Dendrogram& tree, DendrogramFormat format);

// Inverse of to_merge_table; leaf labels are not part of the table.
Dendrogram parse_merge_table(std::string_view csv_text, std::vector<std::string> leaves);

}  // namespace topicscope

#endif  // TOPICSCOPE_CLUSTER_HPP
