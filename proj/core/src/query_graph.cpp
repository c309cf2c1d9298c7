#include "rdffrag/query_graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "rdffrag/error.hpp"

namespace rdffrag {

std::vector<QVertex> QueryGraph::vertices() const {
  std::set<QVertex> vs;
  for (const QEdge& e : edges) {
    vs.insert(e.from);
    vs.insert(e.to);
  }
  return {vs.begin(), vs.end()};
}

std::vector<std::string> QueryGraph::variables() const {
  std::set<std::string> vars;
  for (const QEdge& e : edges) {
    if (e.from.is_variable()) vars.insert(e.from.var);
    if (e.to.is_variable()) vars.insert(e.to.var);
    if (e.label_is_variable) vars.insert(e.label);
  }
  return {vars.begin(), vars.end()};
}

bool QueryGraph::has_constants() const {
  for (const QEdge& e : edges)
    if (!e.from.is_variable() || !e.to.is_variable()) return true;
  return false;
}

bool QueryGraph::is_connected() const {
  if (edges.empty()) return true;
  // A shared property variable joins triple patterns just like a shared
  // vertex, so it connects them here as well.
  std::map<QVertex, int> idx;
  std::vector<int> parent;
  auto id = [&](const QVertex& v) {
    auto [it, fresh] = idx.emplace(v, static_cast<int>(parent.size()));
    if (fresh) parent.push_back(it->second);
    return it->second;
  };
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const QEdge& e : edges) {
    int a = find(id(e.from)), b = find(id(e.to));
    if (a != b) parent[a] = b;
    if (e.label_is_variable) {
      int c = find(id(QVertex::variable(e.label)));
      int r = find(id(e.from));
      if (c != r) parent[c] = r;
    }
  }
  int root = find(0);
  for (std::size_t i = 1; i < parent.size(); ++i)
    if (find(static_cast<int>(i)) != root) return false;
  return true;
}

static std::vector<QEdge> sorted_edges(const QueryGraph& g) {
  std::vector<QEdge> es = g.edges;
  std::sort(es.begin(), es.end());
  return es;
}

bool operator==(const QueryGraph& a, const QueryGraph& b) {
  return sorted_edges(a) == sorted_edges(b);
}

bool operator<(const QueryGraph& a, const QueryGraph& b) {
  return sorted_edges(a) < sorted_edges(b);
}

namespace {

struct QueryScanner {
  const std::string& s;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(what + " at position " + std::to_string(pos));
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool keyword(const std::string& kw) {
    skip_ws();
    if (s.size() - pos < kw.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i)
      if (std::toupper(static_cast<unsigned char>(s[pos + i])) != kw[i]) return false;
    pos += kw.size();
    return true;
  }

  bool peek(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }

  void expect(char c, const std::string& what) {
    skip_ws();
    if (pos >= s.size() || s[pos] != c) fail("expected " + what);
    ++pos;
  }

  bool at_word_boundary(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '.' || c == '}' ||
           c == '{' || c == '<' || c == '"' || c == '?';
  }

  std::string variable() {
    // called with s[pos] == '?'
    std::size_t start = pos;
    ++pos;
    while (pos < s.size() && !at_word_boundary(s[pos])) ++pos;
    if (pos - start < 2) fail("empty variable name");
    return s.substr(start, pos - start);
  }

  QVertex term_vertex() {
    skip_ws();
    if (pos >= s.size()) fail("expected term");
    if (s[pos] == '?') return QVertex::variable(variable());
    if (s[pos] == '<') {
      std::size_t close = s.find('>', pos + 1);
      if (close == std::string::npos) fail("unterminated IRI");
      std::string lex = s.substr(pos + 1, close - pos - 1);
      if (lex.empty()) fail("empty IRI");
      for (char c : lex)
        if (std::isspace(static_cast<unsigned char>(c)) || c == '<' || c == '"')
          fail("whitespace, '<' and '\"' are not allowed in IRIs");
      pos = close + 1;
      return QVertex::constant(Term::iri(std::move(lex)));
    }
    if (s[pos] == '"') {
      std::string lex;
      ++pos;
      while (pos < s.size() && s[pos] != '"') {
        if (s[pos] == '\n' || s[pos] == '\r')
          fail("raw line breaks are not allowed in literals");
        if (s[pos] == '\\') {
          ++pos;
          if (pos >= s.size()) fail("dangling escape");
        }
        lex.push_back(s[pos]);
        ++pos;
      }
      if (pos >= s.size()) fail("unterminated literal");
      ++pos;
      return QVertex::constant(Term::literal(std::move(lex)));
    }
    fail("expected ?var, <iri> or \"literal\"");
  }
};

std::vector<QueryGraph> connected_components(const std::vector<QEdge>& edges) {
  std::map<QVertex, int> comp;
  std::vector<int> parent;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto vertex_id = [&](const QVertex& v) {
    auto [it, fresh] = comp.emplace(v, static_cast<int>(parent.size()));
    if (fresh) parent.push_back(it->second);
    return it->second;
  };
  for (const QEdge& e : edges) {
    int a = find(vertex_id(e.from)), b = find(vertex_id(e.to));
    if (a != b) parent[a] = b;
    // Property variables join components too.
    if (e.label_is_variable) {
      int c = find(vertex_id(QVertex::variable(e.label)));
      int r = find(vertex_id(e.from));
      if (c != r) parent[c] = r;
    }
  }
  // Components ordered by first appearance of any of their edges.
  std::vector<QueryGraph> out;
  std::map<int, int> root_to_out;
  for (const QEdge& e : edges) {
    int root = find(comp.at(e.from));
    auto [it, fresh] = root_to_out.emplace(root, static_cast<int>(out.size()));
    if (fresh) out.emplace_back();
    QueryGraph& g = out[it->second];
    if (std::find(g.edges.begin(), g.edges.end(), e) == g.edges.end())
      g.edges.push_back(e);
  }
  return out;
}

}  // namespace

std::vector<QueryGraph> parse_query(const std::string& text) {
  // FILTER is not supported; reject loudly rather than silently dropping.
  for (std::size_t i = 0; i + 6 <= text.size(); ++i) {
    bool hit = true;
    static const char kw[] = "FILTER";
    for (int k = 0; k < 6; ++k)
      if (std::toupper(static_cast<unsigned char>(text[i + k])) != kw[k]) {
        hit = false;
        break;
      }
    if (hit) throw ParseError("FILTER is not supported");
  }

  QueryScanner sc{text};
  if (!sc.keyword("SELECT")) sc.fail("expected SELECT");
  sc.expect('*', "'*' (projection lists are not supported)");
  if (!sc.keyword("WHERE")) sc.fail("expected WHERE");
  sc.expect('{', "'{'");

  std::vector<QEdge> edges;
  while (true) {
    if (sc.peek('}')) break;
    QVertex subj = sc.term_vertex();
    sc.skip_ws();
    QEdge e;
    e.from = std::move(subj);
    if (sc.peek('?')) {
      e.label_is_variable = true;
      e.label = sc.variable();
    } else {
      QVertex p = sc.term_vertex();
      if (p.is_variable() || !p.term.is_iri()) sc.fail("property must be <iri> or ?var");
      e.label = p.term.lexical;
    }
    e.to = sc.term_vertex();
    if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
    if (sc.peek('.')) {
      sc.expect('.', "'.'");
      continue;
    }
    break;
  }
  sc.expect('}', "'}'");
  sc.skip_ws();
  if (sc.pos < text.size()) sc.fail("trailing content after '}'");
  if (edges.empty()) throw ParseError("query has no triple patterns");
  return connected_components(edges);
}

Workload parse_workload(const std::string& text) {
  Workload w;
  std::istringstream in(text);
  std::string line, block;
  auto flush = [&] {
    if (block.find_first_not_of(" \t\r\n") == std::string::npos) {
      block.clear();
      return;
    }
    for (QueryGraph& q : parse_query(block)) w.queries.push_back(std::move(q));
    block.clear();
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first != std::string::npos && line[first] == '#') continue;
    if (first == std::string::npos) {
      flush();
    } else {
      block += line;
      block += '\n';
    }
  }
  flush();
  return w;
}

QueryGraph normalize(const QueryGraph& q) {
  const std::vector<std::string> vars = q.variables();
  std::set<std::string> taken(vars.begin(), vars.end());
  std::map<Term, std::string> fresh;  // same constant -> same variable
  int next = 0;
  auto rename = [&](const QVertex& v) -> QVertex {
    if (v.is_variable()) return v;
    auto it = fresh.find(v.term);
    if (it == fresh.end()) {
      std::string name;
      do {
        name = "?c" + std::to_string(next++);
      } while (taken.count(name));
      it = fresh.emplace(v.term, std::move(name)).first;
    }
    return QVertex::variable(it->second);
  };
  QueryGraph out;
  for (const QEdge& e : q.edges) {
    QEdge ne = e;
    ne.from = rename(e.from);
    ne.to = rename(e.to);
    if (std::find(out.edges.begin(), out.edges.end(), ne) == out.edges.end())
      out.edges.push_back(std::move(ne));
  }
  return out;
}

std::string to_string(const QueryGraph& q) {
  auto vertex = [](const QVertex& v) {
    return v.is_variable() ? v.var : to_ntriples(v.term);
  };
  std::string out = "SELECT * WHERE {";
  for (std::size_t i = 0; i < q.edges.size(); ++i) {
    const QEdge& e = q.edges[i];
    out += i ? " . " : " ";
    out += vertex(e.from) + " ";
    out += e.label_is_variable ? e.label : "<" + e.label + ">";
    out += " " + vertex(e.to);
  }
  out += " }";
  return out;
}

}  // namespace rdffrag
