#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rdffrag/matcher.hpp"
#include "rdffrag/pattern.hpp"
#include "rdffrag/query_graph.hpp"
#include "rdffrag/rdf_graph.hpp"
#include "rdffrag/selector.hpp"

namespace rdffrag {

/// One (in)equality constraint on a pattern variable. Values are harvested
/// from workload queries containing the pattern.
struct SimplePredicate {
  std::string variable;  // canonical ?vN name
  bool equals = true;    // '=' vs '!='
  Term value;

  auto operator<=>(const SimplePredicate&) const = default;
};

/// A polarity assignment over the harvested (variable, value) pairs of one
/// pattern. A residual minterm absorbs the matches of all pruned minterms;
/// `absorbed` keeps their conjunct lists for usage computation.
struct MintermPredicate {
  Pattern pattern;
  std::vector<SimplePredicate> conjuncts;  // sorted; empty = unconstrained
  bool residual = false;
  std::vector<std::vector<SimplePredicate>> absorbed;
  long long acc = 0;
};

struct Fragment {
  enum class Source { Vertical, Horizontal, Cold };

  std::string id;
  Source source = Source::Vertical;
  std::string pattern_code;                // empty for the cold fragment
  std::vector<SimplePredicate> conjuncts;  // horizontal, non-residual
  bool residual = false;
  std::vector<std::vector<SimplePredicate>> absorbed;  // residual only
  RdfGraph graph;
  long long match_count = 0;

  /// Manifest form: pattern code plus `|?v=<t>` / `|?v!=<t>` conjuncts in
  /// sorted order, `|residual` for the remainder fragment, `cold` for the
  /// cold graph.
  std::string descriptor() const;
};

struct Fragmentation {
  enum class Strategy { Vertical, Horizontal };

  Strategy strategy = Strategy::Vertical;
  std::vector<Fragment> fragments;  // sorted by id
};

/// One fragment per selected pattern: the subgraph induced by all of its
/// matches over the hot graph. Empty fragments are kept.
Fragmentation vertical_fragmentation(const SelectionResult& selection,
                                     const RdfGraph& hot);

/// Every (variable, constant) pair sitting at a pattern-variable image in a
/// containing workload query, in both polarities, deduplicated and sorted.
std::vector<SimplePredicate> harvest_simple_predicates(const Pattern& p,
                                                       const Workload& workload);

/// The full polarity grid over the distinct (variable, value) pairs, minus
/// unsatisfiable combinations. Minterms with acc < min_acc merge into one
/// residual minterm so coverage is preserved. Without simple predicates the
/// sole minterm is the unconstrained pattern.
std::vector<MintermPredicate> enumerate_minterms(const Pattern& p,
                                                 const std::vector<SimplePredicate>& sps,
                                                 const Workload& workload, int min_acc);

/// One fragment per (selected pattern, minterm): matches of the pattern
/// whose bindings satisfy the conjuncts. Empty fragments are kept.
Fragmentation horizontal_fragmentation(const SelectionResult& selection,
                                       const RdfGraph& hot, const Workload& workload,
                                       int min_acc);

/// Appends the cold graph as one opaque fragment with id "cold".
void append_cold_fragment(Fragmentation& frags, const RdfGraph& cold);

/// True iff the binding satisfies every conjunct of a non-residual minterm.
bool binding_satisfies(const Binding& b, const std::vector<SimplePredicate>& conjuncts);

std::string conjunct_descriptor(const SimplePredicate& sp);

/// Splits `s` on `sep`, ignoring separators inside double-quoted sections
/// (backslash escapes respected) and inside <...> IRI sections.
std::vector<std::string> split_outside_quotes(const std::string& s, char sep);

/// Parses a `?v=<t>` / `?v!="lit"` conjunct.
SimplePredicate parse_conjunct(const std::string& s);

/// Writes one `<id>.nt` file per fragment plus a `manifest` of
/// `<id> TAB <descriptor> TAB <matchCount> TAB <edgeCount>` lines.
void save_fragments(const Fragmentation& frags, const std::filesystem::path& dir);
Fragmentation load_fragments(const std::filesystem::path& dir);

}  // namespace rdffrag
