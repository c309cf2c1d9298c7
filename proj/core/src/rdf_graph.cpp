#include "rdffrag/rdf_graph.hpp"

#include <algorithm>
#include <sstream>

#include "rdffrag/error.hpp"
#include "rdffrag/query_graph.hpp"

namespace rdffrag {

namespace {

std::string escape_literal(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

const std::vector<int> kNoEdges;

}  // namespace

std::string to_ntriples(const Term& t) {
  if (t.is_iri()) return "<" + t.lexical + ">";
  return "\"" + escape_literal(t.lexical) + "\"";
}

RdfGraph::RdfGraph(std::vector<Triple> triples) : edges_(std::move(triples)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
    const Triple& t = edges_[i];
    vertices_.insert(t.subject);
    vertices_.insert(t.object);
    labels_.insert(t.property);
    by_property_[t.property].push_back(i);
    out_by_prop_[{t.subject, t.property}].push_back(i);
    in_by_prop_[{t.object, t.property}].push_back(i);
    out_all_[t.subject].push_back(i);
    in_all_[t.object].push_back(i);
  }
}

bool RdfGraph::has_edge(const Triple& t) const {
  return std::binary_search(edges_.begin(), edges_.end(), t);
}

const std::vector<int>& RdfGraph::by_property(const std::string& p) const {
  auto it = by_property_.find(p);
  return it == by_property_.end() ? kNoEdges : it->second;
}

const std::vector<int>& RdfGraph::out_edges(const Term& v, const std::string& p) const {
  auto it = out_by_prop_.find({v, p});
  return it == out_by_prop_.end() ? kNoEdges : it->second;
}

const std::vector<int>& RdfGraph::in_edges(const Term& v, const std::string& p) const {
  auto it = in_by_prop_.find({v, p});
  return it == in_by_prop_.end() ? kNoEdges : it->second;
}

const std::vector<int>& RdfGraph::out_edges(const Term& v) const {
  auto it = out_all_.find(v);
  return it == out_all_.end() ? kNoEdges : it->second;
}

const std::vector<int>& RdfGraph::in_edges(const Term& v) const {
  auto it = in_all_.find(v);
  return it == in_all_.end() ? kNoEdges : it->second;
}

namespace {

// Line-level token scanner for the N-Triples subset.
struct LineScanner {
  const std::string& s;
  std::size_t pos = 0;
  std::size_t line;

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= s.size();
  }

  [[noreturn]] void fail(const std::string& what) { throw ParseError(what, line); }

  Term term() {
    skip_ws();
    if (pos >= s.size()) fail("expected term");
    if (s[pos] == '<') {
      std::size_t close = s.find('>', pos + 1);
      if (close == std::string::npos) fail("unterminated IRI");
      std::string lex = s.substr(pos + 1, close - pos - 1);
      if (lex.empty()) fail("empty IRI");
      for (char c : lex)
        if (c == ' ' || c == '\t' || c == '<' || c == '"')
          fail("whitespace, '<' and '\"' are not allowed in IRIs");
      pos = close + 1;
      return Term::iri(std::move(lex));
    }
    if (s[pos] == '"') {
      std::string lex;
      ++pos;
      while (pos < s.size() && s[pos] != '"') {
        if (s[pos] == '\\') {
          ++pos;
          if (pos >= s.size()) fail("dangling escape in literal");
        }
        lex.push_back(s[pos]);
        ++pos;
      }
      if (pos >= s.size()) fail("unterminated literal");
      ++pos;
      if (lex.empty()) fail("empty literal");
      return Term::literal(std::move(lex));
    }
    fail("expected <iri> or \"literal\"");
  }

  void dot() {
    skip_ws();
    if (pos >= s.size() || s[pos] != '.') fail("expected terminal '.'");
    ++pos;
    skip_ws();
    if (pos < s.size()) fail("trailing content after '.'");
  }
};

}  // namespace

RdfGraph parse_ntriples(const std::string& text) {
  std::vector<Triple> triples;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    LineScanner sc{line, first, lineno};
    Term subj = sc.term();
    if (!subj.is_iri()) sc.fail("literal subject not allowed");
    Term prop = sc.term();
    if (!prop.is_iri()) sc.fail("property must be an IRI");
    Term obj = sc.term();
    sc.dot();
    triples.push_back(Triple{std::move(subj), std::move(prop.lexical), std::move(obj)});
  }
  return RdfGraph(std::move(triples));
}

std::string serialize_ntriples(const RdfGraph& g) {
  std::string out;
  for (const Triple& t : g.edges()) {
    out += to_ntriples(t.subject);
    out += " <" + t.property + "> ";
    out += to_ntriples(t.object);
    out += " .\n";
  }
  return out;
}

GraphSplit split_hot_cold(const RdfGraph& g, const Workload& workload, int theta) {
  if (theta < 1) throw ConfigError("theta must be >= 1");
  // Each query counts once per property it mentions, however often the
  // property repeats inside the query.
  std::map<std::string, int> query_count;
  for (const QueryGraph& q : workload.queries) {
    std::set<std::string> props;
    for (const QEdge& e : q.edges)
      if (!e.label_is_variable) props.insert(e.label);
    for (const std::string& p : props) ++query_count[p];
  }

  GraphSplit split;
  split.theta = theta;
  for (const auto& [prop, count] : query_count)
    if (count >= theta) split.frequent_properties.insert(prop);

  std::vector<Triple> hot, cold;
  for (const Triple& t : g.edges()) {
    if (split.frequent_properties.count(t.property))
      hot.push_back(t);
    else
      cold.push_back(t);
  }
  split.hot = RdfGraph(std::move(hot));
  split.cold = RdfGraph(std::move(cold));
  return split;
}

}  // namespace rdffrag
