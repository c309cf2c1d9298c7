#pragma once

#include <vector>

#include "rdffrag/pattern.hpp"
#include "rdffrag/query_graph.hpp"

namespace rdffrag {

struct SelectionConfig {
  long long storage_capacity = 0;  // SC, in materialized edges
  int min_sup = 1;
  int theta = 1;
};

struct SelectionResult {
  std::vector<PatternStats> selected;  // sorted by (edge count, code)
  long long total_edge_cost = 0;
  long long benefit = 0;
};

/// Size-increasing benefit |E(p)| * use(Q, p).
long long benefit_single(const Pattern& p, const QueryGraph& q);

/// Sum over queries of the maximum single-pattern benefit in the set.
long long benefit_set(const std::vector<Pattern>& patterns, const Workload& workload);

/// Two-phase greedy selection under the edge-storage budget. Every
/// single-edge candidate is seeded unconditionally; the better of
/// {best single multi-edge pattern by benefit/cost} and {iterative greedy by
/// marginal benefit per cost} is kept, ties favoring the former. Ties inside
/// an argmax go to the smaller canonical code.
SelectionResult select_patterns(const std::vector<PatternStats>& candidates,
                                const Workload& workload, const SelectionConfig& cfg);

}  // namespace rdffrag
