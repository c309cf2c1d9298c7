#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "rdffrag/pattern.hpp"
#include "rdffrag/query_graph.hpp"
#include "rdffrag/rdf_graph.hpp"

namespace rdffrag {

/// One homomorphism, as a total assignment of the query's variables
/// (vertex and property variables alike) to Terms.
using Binding = std::map<std::string, Term>;

struct MatchSet {
  QueryGraph query;
  std::set<Binding> bindings;
};

/// All homomorphic matches of q over g. Vertex mapping need not be
/// injective; constants map to themselves; variable properties match any
/// edge label. Binding order is the set order, so output is deterministic.
MatchSet evaluate(const QueryGraph& q, const RdfGraph& g);

/// A pattern-into-query embedding: pattern variable -> query vertex.
using PatternEmbedding = std::map<std::string, QVertex>;

/// Edge-injective homomorphisms of an all-variable pattern into a query
/// graph: pattern edges map to distinct query edges with equal labels and
/// directions; vertex images may coincide. Constants of q are legal images.
std::vector<PatternEmbedding> pattern_embeddings(const QueryGraph& pattern,
                                                 const QueryGraph& q,
                                                 bool first_only = false);

/// True iff p embeds edge-injectively into q (equivalently into normalize(q);
/// constant removal does not change the shape).
bool contains_pattern(const QueryGraph& q, const Pattern& p);

/// The graph induced by a set of bindings of `pattern`: exactly the edges
/// (and thus vertices/labels) occurring in some binding's image.
RdfGraph induced_subgraph(const QueryGraph& pattern,
                          const std::set<Binding>& bindings);

/// induced_subgraph over all matches of p in g.
RdfGraph match_induced_subgraph(const Pattern& p, const RdfGraph& g);

}  // namespace rdffrag
