#pragma once

#include <string>

#include "rdffrag/query_graph.hpp"

namespace rdffrag {

/// Canonical minimum DFS code of a connected, all-variable, concrete-label
/// pattern graph. Two patterns receive the same code iff they are isomorphic
/// as labeled directed graphs.
std::string canonical_code(const QueryGraph& pattern);

/// Rebuilds the pattern graph a code describes, with vertices named
/// ?v0, ?v1, ... in code discovery order.
QueryGraph pattern_graph_from_code(const std::string& code);

/// A frequent access pattern: an all-variable connected query shape with its
/// canonical identity. `graph` always uses the canonical ?vN vertex names.
struct Pattern {
  QueryGraph graph;
  std::string id;

  /// Canonicalizes an arbitrary all-variable connected shape.
  static Pattern from_graph(const QueryGraph& shape);

  int edge_count() const { return static_cast<int>(graph.edges.size()); }

  friend bool operator==(const Pattern& a, const Pattern& b) { return a.id == b.id; }
  friend bool operator<(const Pattern& a, const Pattern& b) { return a.id < b.id; }
};

/// Mining/fragmentation statistics attached to a pattern. Match counts are
/// taken over the hot graph.
struct PatternStats {
  Pattern pattern;
  long long acc = 0;               // queries containing the pattern
  long long match_count = 0;       // |[[p]]| bindings over hot
  long long match_edge_count = 0;  // |E([[p]])| distinct edges over hot
};

}  // namespace rdffrag
