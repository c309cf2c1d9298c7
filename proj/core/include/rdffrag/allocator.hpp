#pragma once

#include <map>
#include <string>
#include <vector>

#include "rdffrag/fragmenter.hpp"
#include "rdffrag/query_graph.hpp"

namespace rdffrag {

/// Affinity-weighted fragment graph; cold fragments are excluded. An edge
/// exists iff the affinity is positive.
struct AllocationGraph {
  std::vector<std::string> nodes;                  // fragment ids, ascending
  std::map<std::pair<int, int>, long long> edges;  // (i < j) -> weight > 0
};

struct Allocation {
  std::vector<std::vector<std::string>> clusters;  // length m, members ascending
  std::map<std::string, int> site_of;
  std::vector<std::string> warnings;
};

/// Number of workload queries using both fragments' sources (pattern or
/// minterm). Zero when either fragment is cold.
long long affinity(const Fragment& a, const Fragment& b, const Workload& workload);

AllocationGraph build_allocation_graph(const Fragmentation& frags,
                                       const Workload& workload);

/// Sum of intra-cluster edge weights over C(|cluster|, 2); 0 for singletons.
double density(const std::vector<std::string>& cluster, const AllocationGraph& ag);

struct MergeStep {
  std::string a, b;           // cluster representatives (smallest member id)
  long long weight_num = 0;   // cross weight between the two clusters
  long long weight_den = 1;   // C(|a| + |b|, 2)
};

/// Pairwise-nearest-neighbor agglomeration: repeatedly merges the two
/// clusters joined by the maximum weight, where the weight of a prospective
/// merge is its cross weight over C(size of union, 2). Ties break on the
/// lexicographically smallest representative pair. Clusters left over in a
/// disconnected graph are folded round-robin into the smallest kept
/// clusters. With fewer nodes than m the extra sites stay empty (warning).
Allocation allocate(const AllocationGraph& ag, int m,
                    std::vector<MergeStep>* trace = nullptr);

}  // namespace rdffrag
