#pragma once

#include <set>
#include <string>
#include <vector>

#include "rdffrag/pattern.hpp"
#include "rdffrag/query_graph.hpp"
#include "rdffrag/rdf_graph.hpp"

namespace rdffrag {

/// 1 iff pattern p is a subgraph of q (edge-injective embedding).
int usage(const QueryGraph& q, const Pattern& p);

/// acc(p): number of workload queries containing p, duplicates counted.
long long access_frequency(const Workload& workload, const Pattern& p);

/// Mines every connected all-variable pattern over the frequent properties
/// with 1..max_pattern_edges edges and acc >= min_sup, one representative
/// per canonical code. Single-edge patterns for every frequent property are
/// always included, whatever their acc, so fragmentation can cover the hot
/// graph. Match statistics are taken over `hot`. Output is sorted by
/// (edge count, canonical code).
std::vector<PatternStats> mine_frequent_patterns(
    const Workload& workload, const std::set<std::string>& frequent_properties,
    int min_sup, const RdfGraph& hot, int max_pattern_edges = 4);

}  // namespace rdffrag
