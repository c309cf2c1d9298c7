#pragma once

#include <compare>
#include <string>
#include <vector>

#include "rdffrag/term.hpp"

namespace rdffrag {

/// A vertex of a query graph: a constant Term or a variable (name keeps
/// its leading '?').
struct QVertex {
  enum class Kind { Constant, Variable };

  Kind kind = Kind::Variable;
  Term term;        // meaningful for constants
  std::string var;  // meaningful for variables

  static QVertex constant(Term t) {
    return QVertex{Kind::Constant, std::move(t), {}};
  }
  static QVertex variable(std::string name) {
    return QVertex{Kind::Variable, {}, std::move(name)};
  }

  bool is_variable() const { return kind == Kind::Variable; }

  auto operator<=>(const QVertex&) const = default;
};

/// A triple pattern. The property position is a concrete label or a variable.
struct QEdge {
  QVertex from;
  QVertex to;
  bool label_is_variable = false;
  std::string label;  // property string, or variable name with '?'

  auto operator<=>(const QEdge&) const = default;
};

/// A connected basic graph pattern. Edges keep first-occurrence order
/// (duplicates dropped), which pins down normalization output.
struct QueryGraph {
  std::vector<QEdge> edges;

  std::vector<QVertex> vertices() const;       // sorted, unique
  std::vector<std::string> variables() const;  // vertex + property variables, sorted
  bool has_constants() const;
  bool is_connected() const;

  friend bool operator==(const QueryGraph& a, const QueryGraph& b);
  friend bool operator<(const QueryGraph& a, const QueryGraph& b);
};

/// Ordered list of queries; repeats carry demand information.
struct Workload {
  std::vector<QueryGraph> queries;
};

/// Parses `SELECT * WHERE { tp . tp ... }` and returns one QueryGraph per
/// connected component. FILTER is rejected. Zero triple patterns is an error.
std::vector<QueryGraph> parse_query(const std::string& text);

/// Workload file: query blocks separated by blank lines, `#` comments.
Workload parse_workload(const std::string& text);

/// Replaces every constant vertex with a fresh variable (?c0, ?c1, ... in
/// edge order; one shared variable per distinct constant). Shape, labels and
/// property variables are untouched.
QueryGraph normalize(const QueryGraph& q);

std::string to_string(const QueryGraph& q);

}  // namespace rdffrag
