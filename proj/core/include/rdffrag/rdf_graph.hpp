#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "rdffrag/term.hpp"

namespace rdffrag {

struct Workload;

/// Immutable directed edge-labeled graph over Terms. The edge set is
/// duplicate-free and kept sorted by (subject, property, object); adjacency
/// indexes are built once at construction, so instances are safe to share
/// across threads.
class RdfGraph {
 public:
  RdfGraph() = default;
  explicit RdfGraph(std::vector<Triple> triples);

  const std::vector<Triple>& edges() const { return edges_; }
  const std::set<Term>& vertices() const { return vertices_; }
  const std::set<std::string>& labels() const { return labels_; }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  bool has_edge(const Triple& t) const;

  /// Edge indexes into edges(); the empty vector for unknown keys.
  const std::vector<int>& by_property(const std::string& p) const;
  const std::vector<int>& out_edges(const Term& v, const std::string& p) const;
  const std::vector<int>& in_edges(const Term& v, const std::string& p) const;
  const std::vector<int>& out_edges(const Term& v) const;
  const std::vector<int>& in_edges(const Term& v) const;

  std::size_t property_count(const std::string& p) const {
    return by_property(p).size();
  }

  friend bool operator==(const RdfGraph& a, const RdfGraph& b) {
    return a.edges_ == b.edges_;
  }

 private:
  std::vector<Triple> edges_;
  std::set<Term> vertices_;
  std::set<std::string> labels_;
  std::map<std::string, std::vector<int>> by_property_;
  std::map<std::pair<Term, std::string>, std::vector<int>> out_by_prop_;
  std::map<std::pair<Term, std::string>, std::vector<int>> in_by_prop_;
  std::map<Term, std::vector<int>> out_all_;
  std::map<Term, std::vector<int>> in_all_;
};

/// Disjoint edge split of a graph by workload property frequency.
struct GraphSplit {
  RdfGraph hot;
  RdfGraph cold;
  std::set<std::string> frequent_properties;
  int theta = 1;
};

/// Parses the N-Triples subset: one `<s> <p> <o> .` or `<s> <p> "lit" .`
/// per line, `#` comment lines, blank lines ignored. Duplicate triples
/// collapse. Literal subjects are rejected.
RdfGraph parse_ntriples(const std::string& text);

/// Emits one line per triple, sorted by (subject, property, object).
std::string serialize_ntriples(const RdfGraph& g);

/// A property is frequent iff it appears in at least `theta` distinct
/// workload queries. Hot = edges with frequent properties, cold = the rest.
GraphSplit split_hot_cold(const RdfGraph& g, const Workload& workload, int theta);

}  // namespace rdffrag
