#pragma once

// Independent reference implementations used to freeze expected values and
// cross-check the library. Nothing here may call into the code paths being
// verified: evaluation is plain enumeration, containment tries all edge
// injections, selection/planning optima come from exhaustive search.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "rdffrag/dictionary.hpp"
#include "rdffrag/matcher.hpp"
#include "rdffrag/pattern.hpp"
#include "rdffrag/query_graph.hpp"
#include "rdffrag/rdf_graph.hpp"

namespace oracles {

/// Tries every assignment of the query's variables to graph vertices (and
/// labels, for property variables) and keeps those realizing all edges.
std::set<rdffrag::Binding> brute_force_evaluate(const rdffrag::QueryGraph& q,
                                                const rdffrag::RdfGraph& g);

/// Edge-injective containment by enumerating all injective label-preserving
/// assignments of pattern edges to query edges and testing whether the
/// induced vertex correspondence is a function.
bool brute_force_contains(const rdffrag::QueryGraph& pattern,
                          const rdffrag::QueryGraph& q);

/// Labeled-digraph representation with dense int vertices, for universe
/// enumeration and isomorphism checks.
struct IntGraph {
  int vertices = 0;
  std::vector<std::tuple<int, int, std::string>> edges;  // sorted
};

bool graphs_isomorphic(const IntGraph& a, const IntGraph& b);
bool int_graph_connected(const IntGraph& g);

/// All connected labeled digraphs with 1..max_edges edges over the label
/// set, one representative per isomorphism class (dedup by pairwise
/// isomorphism testing, not by code).
std::vector<IntGraph> pattern_universe(const std::vector<std::string>& labels,
                                       int max_edges);

rdffrag::QueryGraph to_query_graph(const IntGraph& g);
IntGraph to_int_graph(const rdffrag::QueryGraph& q);

/// Exhaustive best benefit over all candidate subsets within the budget.
/// `use` holds use(Q_k, p_i) per candidate per query.
long long best_subset_benefit(const std::vector<int>& pattern_edges,
                              const std::vector<long long>& costs,
                              const std::vector<std::vector<char>>& use,
                              long long budget);

/// Minimum over all left-deep orders of the sum of prefix card products.
long long permutation_min_plan_cost(const std::vector<long long>& cards);

/// Minimum decomposition cost by direct recursive partition enumeration
/// (cold components fixed, hot edges partitioned into dictionary shapes).
long long enumerate_min_decomposition_cost(const rdffrag::QueryGraph& q,
                                           const rdffrag::Dictionary& dict);

struct Rng {
  unsigned long long state;
  explicit Rng(unsigned long long seed) : state(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
  unsigned long long next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
  int below(int n) { return static_cast<int>(next() % static_cast<unsigned>(n)); }
};

/// Seed for randomized tests; honors RDFFRAG_SEED when set.
unsigned long long test_seed(unsigned long long fallback);

rdffrag::RdfGraph random_graph(Rng& rng, int max_vertices, int max_edges,
                               int properties);
rdffrag::QueryGraph random_query(Rng& rng, const rdffrag::RdfGraph& g, int max_edges,
                                 bool allow_constants, bool allow_wildcards);
rdffrag::Workload random_workload(Rng& rng, const rdffrag::RdfGraph& g,
                                  int max_queries, int max_edges,
                                  bool allow_constants);

}  // namespace oracles
