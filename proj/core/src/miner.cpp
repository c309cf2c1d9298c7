#include "rdffrag/miner.hpp"

#include <algorithm>
#include <deque>

#include "rdffrag/error.hpp"
#include "rdffrag/matcher.hpp"

namespace rdffrag {

int usage(const QueryGraph& q, const Pattern& p) {
  return contains_pattern(q, p) ? 1 : 0;
}

long long access_frequency(const Workload& workload, const Pattern& p) {
  long long acc = 0;
  for (const QueryGraph& q : workload.queries) acc += usage(q, p);
  return acc;
}

namespace {

PatternStats make_stats(Pattern p, long long acc, const RdfGraph& hot) {
  PatternStats st;
  st.acc = acc;
  MatchSet ms = evaluate(p.graph, hot);
  st.match_count = static_cast<long long>(ms.bindings.size());
  st.match_edge_count =
      static_cast<long long>(induced_subgraph(p.graph, ms.bindings).edge_count());
  st.pattern = std::move(p);
  return st;
}

// All one-edge extensions of a connected pattern: a fresh label between two
// existing vertices (loops allowed), or to/from one fresh vertex.
std::vector<QueryGraph> extensions(const QueryGraph& g,
                                   const std::set<std::string>& labels) {
  std::vector<QVertex> vs = g.vertices();
  QVertex fresh = QVertex::variable("?vx" + std::to_string(vs.size()));
  std::vector<QueryGraph> out;
  auto push = [&](const QVertex& a, const QVertex& b, const std::string& l) {
    QEdge e{a, b, false, l};
    if (std::find(g.edges.begin(), g.edges.end(), e) != g.edges.end()) return;
    QueryGraph child = g;
    child.edges.push_back(std::move(e));
    out.push_back(std::move(child));
  };
  for (const std::string& l : labels) {
    for (const QVertex& a : vs)
      for (const QVertex& b : vs) push(a, b, l);
    for (const QVertex& a : vs) {
      push(a, fresh, l);
      push(fresh, a, l);
    }
  }
  return out;
}

}  // namespace

std::vector<PatternStats> mine_frequent_patterns(
    const Workload& workload, const std::set<std::string>& frequent_properties,
    int min_sup, const RdfGraph& hot, int max_pattern_edges) {
  if (min_sup < 1) throw ConfigError("minSup must be >= 1");
  if (max_pattern_edges < 1) throw ConfigError("maxPatternEdges must be >= 1");

  std::vector<PatternStats> result;
  std::set<std::string> seen;
  std::deque<Pattern> frontier;

  auto consider = [&](const QueryGraph& shape, bool forced) {
    Pattern p = Pattern::from_graph(shape);
    if (!seen.insert(p.id).second) return;
    long long acc = access_frequency(workload, p);
    // Infrequent patterns cannot have frequent extensions (anti-monotone),
    // so only frequent ones grow.
    if (acc >= min_sup && p.edge_count() < max_pattern_edges)
      frontier.push_back(p);
    if (forced || acc >= min_sup) result.push_back(make_stats(std::move(p), acc, hot));
  };

  for (const std::string& prop : frequent_properties) {
    QueryGraph single;
    single.edges.push_back(
        {QVertex::variable("?a"), QVertex::variable("?b"), false, prop});
    consider(single, /*forced=*/true);
    QueryGraph loop;
    loop.edges.push_back(
        {QVertex::variable("?a"), QVertex::variable("?a"), false, prop});
    consider(loop, /*forced=*/false);
  }

  while (!frontier.empty()) {
    Pattern p = std::move(frontier.front());
    frontier.pop_front();
    for (const QueryGraph& child : extensions(p.graph, frequent_properties))
      consider(child, /*forced=*/false);
  }

  std::sort(result.begin(), result.end(),
            [](const PatternStats& a, const PatternStats& b) {
              int ea = a.pattern.edge_count(), eb = b.pattern.edge_count();
              return ea != eb ? ea < eb : a.pattern.id < b.pattern.id;
            });
  return result;
}

}  // namespace rdffrag
