#include <algorithm>
#include <map>
#include <tuple>
#include <vector>

#include "rdffrag/error.hpp"
#include "rdffrag/pattern.hpp"

namespace rdffrag {

namespace {

// One pattern edge with endpoints as dense vertex numbers.
struct CodeEdge {
  int from, to;
  std::string label;
};

// (subject discovery index, object discovery index, label)
using Tuple = std::tuple<int, int, std::string>;
using Seq = std::vector<Tuple>;

// Enumerates every connected edge sequence; each sequence assigns discovery
// indices as vertices first appear. The minimum sequence is the canonical
// code. Prefix comparison against the best sequence prunes the search.
struct CodeSearch {
  const std::vector<CodeEdge>& edges;
  std::vector<int> vidx;  // vertex -> discovery index, -1 while undiscovered
  std::vector<bool> used;
  Seq cur;
  Seq best;
  bool have_best = false;

  // cmp: 0 while cur equals best's prefix, -1 once cur is strictly smaller.
  void step(int next_index, int cmp) {
    std::size_t depth = cur.size();
    if (depth == edges.size()) {
      // Full comparison: `best` may have shrunk since cmp was computed.
      if (!have_best || cur < best) {
        best = cur;
        have_best = true;
      }
      return;
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (used[i]) continue;
      const CodeEdge& e = edges[i];
      int fi = vidx[e.from], ti = vidx[e.to];
      if (depth == 0) {
        used[i] = true;
        if (e.from == e.to) {
          vidx[e.from] = 0;
          try_tuple({0, 0, e.label}, 1, cmp);
          vidx[e.from] = -1;
        } else {
          vidx[e.from] = 0;
          vidx[e.to] = 1;
          try_tuple({0, 1, e.label}, 2, cmp);
          vidx[e.from] = 1;
          vidx[e.to] = 0;
          try_tuple({1, 0, e.label}, 2, cmp);
          vidx[e.from] = vidx[e.to] = -1;
        }
        used[i] = false;
        continue;
      }
      if (fi < 0 && ti < 0) continue;  // keep the discovered part connected
      used[i] = true;
      if (fi >= 0 && ti >= 0) {
        try_tuple({fi, ti, e.label}, next_index, cmp);
      } else if (fi >= 0) {
        vidx[e.to] = next_index;
        try_tuple({fi, next_index, e.label}, next_index + 1, cmp);
        vidx[e.to] = -1;
      } else {
        vidx[e.from] = next_index;
        try_tuple({next_index, ti, e.label}, next_index + 1, cmp);
        vidx[e.from] = -1;
      }
      used[i] = false;
    }
  }

  void try_tuple(Tuple t, int next_index, int cmp) {
    if (have_best && cmp == 0) {
      const Tuple& b = best[cur.size()];
      if (t > b) return;
      if (t < b) cmp = -1;
    }
    cur.push_back(std::move(t));
    step(next_index, cmp);
    cur.pop_back();
  }
};

std::string serialize(const Seq& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(std::get<0>(seq[i]));
    out += '>';
    out += std::to_string(std::get<1>(seq[i]));
    out += ':';
    out += std::get<2>(seq[i]);
  }
  return out;
}

}  // namespace

std::string canonical_code(const QueryGraph& pattern) {
  if (pattern.edges.empty()) return "";
  std::map<std::string, int> vid;
  std::vector<CodeEdge> edges;
  for (const QEdge& e : pattern.edges) {
    if (!e.from.is_variable() || !e.to.is_variable() || e.label_is_variable)
      throw ConfigError("canonical_code requires an all-variable pattern");
    int f = vid.emplace(e.from.var, static_cast<int>(vid.size())).first->second;
    int t = vid.emplace(e.to.var, static_cast<int>(vid.size())).first->second;
    edges.push_back({f, t, e.label});
  }
  CodeSearch search{edges, std::vector<int>(vid.size(), -1),
                    std::vector<bool>(edges.size(), false)};
  search.step(0, 0);
  return serialize(search.best);
}

QueryGraph pattern_graph_from_code(const std::string& code) {
  QueryGraph g;
  if (code.empty()) return g;
  std::size_t pos = 0;
  while (pos <= code.size()) {
    std::size_t end = code.find(' ', pos);
    std::string tok = code.substr(pos, end == std::string::npos ? end : end - pos);
    std::size_t gt = tok.find('>');
    std::size_t colon = tok.find(':', gt);
    if (gt == std::string::npos || colon == std::string::npos)
      throw ParseError("malformed pattern code: " + code);
    int a = std::stoi(tok.substr(0, gt));
    int b = std::stoi(tok.substr(gt + 1, colon - gt - 1));
    QEdge e;
    e.from = QVertex::variable("?v" + std::to_string(a));
    e.to = QVertex::variable("?v" + std::to_string(b));
    e.label = tok.substr(colon + 1);
    g.edges.push_back(std::move(e));
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  return g;
}

Pattern Pattern::from_graph(const QueryGraph& shape) {
  Pattern p;
  p.id = canonical_code(shape);
  p.graph = pattern_graph_from_code(p.id);
  return p;
}

}  // namespace rdffrag
