#pragma once

#include <chrono>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rdffrag/allocator.hpp"
#include "rdffrag/dictionary.hpp"
#include "rdffrag/fragmenter.hpp"
#include "rdffrag/matcher.hpp"

namespace rdffrag {

struct SubQuery {
  enum class Kind { Pattern, Cold, Wildcard };

  QueryGraph graph;
  Kind kind = Kind::Pattern;
  std::string code;  // dictionary code for Kind::Pattern
};

/// An edge-disjoint, edge-covering split of a query into pattern-shaped hot
/// subqueries, maximal connected cold components and single wildcard edges,
/// scored by the worst-case product of subquery cardinalities.
struct Decomposition {
  std::vector<SubQuery> subqueries;
  long long cost = 1;
};

/// Left-deep join order; est_cost is the sum over join steps of the
/// worst-case intermediate size (prefix card products).
struct JoinPlan {
  std::vector<int> order;
  long long est_cost = 0;
};

struct ExecutionReport {
  MatchSet bindings;
  std::set<int> sites_touched;
  long long shipped_bindings = 0;
  long long shipped_cells = 0;  // bindings x binding width
  std::chrono::microseconds elapsed{0};
};

/// m in-process sites, each holding the fragment stores the allocation
/// assigns to it; the cold fragment sits at site 0. Read-only after
/// construction.
class SimulatedCluster {
 public:
  SimulatedCluster(const Fragmentation& frags, const std::map<std::string, int>& site_of,
                   int sites);
  SimulatedCluster(const Fragmentation& frags, const Allocation& alloc, int sites);

  int sites() const { return sites_; }
  const std::vector<std::string>& fragment_ids() const { return ids_; }
  const RdfGraph& fragment_graph(const std::string& id) const;
  int site_of(const std::string& id) const;

 private:
  int sites_;
  std::vector<std::string> ids_;
  std::map<std::string, RdfGraph> graphs_;
  std::map<std::string, int> site_of_;
};

/// Minimum-cost valid decomposition by exhaustive enumeration. Cold
/// components and wildcard edges are fixed units; hot edges are partitioned
/// into dictionary shapes. Ties prefer fewer subqueries, then the
/// lexicographically smallest sorted code list.
Decomposition decompose(const QueryGraph& q, const Dictionary& dict);

/// System-R style dynamic programming over subquery subsets; returns the
/// cheapest left-deep order, preferring variable-connected extensions on
/// cost ties.
JoinPlan optimize(const Decomposition& d, const Dictionary& dict);

/// Evaluates every subquery on the sites holding its relevant fragments
/// (site workers run concurrently), ships binding sets to the coordinator
/// and joins them in plan order. The result equals single-machine
/// evaluation of q over the whole graph.
ExecutionReport execute(const QueryGraph& q, const JoinPlan& plan,
                        const Decomposition& d, const SimulatedCluster& cluster,
                        const Dictionary& dict);

}  // namespace rdffrag
