#include "rdffrag/allocator.hpp"

#include <algorithm>

#include "rdffrag/error.hpp"
#include "rdffrag/matcher.hpp"

namespace rdffrag {

namespace {

int fragment_usage(const QueryGraph& q, const Fragment& f) {
  if (f.source == Fragment::Source::Cold) return 0;
  QueryGraph pattern = pattern_graph_from_code(f.pattern_code);
  std::vector<PatternEmbedding> embs = pattern_embeddings(pattern, q);
  if (f.source == Fragment::Source::Vertical) return embs.empty() ? 0 : 1;
  auto consistent = [&](const std::vector<SimplePredicate>& conjuncts) {
    for (const PatternEmbedding& emb : embs) {
      bool ok = true;
      for (const SimplePredicate& sp : conjuncts) {
        const QVertex& image = emb.at(sp.variable);
        bool is_value = !image.is_variable() && image.term == sp.value;
        if (sp.equals != is_value) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
    }
    return false;
  };
  if (!f.residual) return consistent(f.conjuncts) ? 1 : 0;
  for (const auto& conjuncts : f.absorbed)
    if (consistent(conjuncts)) return 1;
  return 0;
}

}  // namespace

long long affinity(const Fragment& a, const Fragment& b, const Workload& workload) {
  if (a.source == Fragment::Source::Cold || b.source == Fragment::Source::Cold)
    return 0;
  long long sum = 0;
  for (const QueryGraph& q : workload.queries)
    sum += static_cast<long long>(fragment_usage(q, a)) * fragment_usage(q, b);
  return sum;
}

AllocationGraph build_allocation_graph(const Fragmentation& frags,
                                       const Workload& workload) {
  std::vector<const Fragment*> nodes;
  for (const Fragment& f : frags.fragments)
    if (f.source != Fragment::Source::Cold) nodes.push_back(&f);
  std::sort(nodes.begin(), nodes.end(),
            [](const Fragment* a, const Fragment* b) { return a->id < b->id; });

  AllocationGraph ag;
  for (const Fragment* f : nodes) ag.nodes.push_back(f->id);

  // use(Q, f) per node per query, computed once.
  std::vector<std::vector<char>> use(nodes.size(),
                                     std::vector<char>(workload.queries.size(), 0));
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t k = 0; k < workload.queries.size(); ++k)
      use[i][k] = static_cast<char>(fragment_usage(workload.queries[k], *nodes[i]));

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      long long w = 0;
      for (std::size_t k = 0; k < workload.queries.size(); ++k)
        w += static_cast<long long>(use[i][k]) * use[j][k];
      if (w > 0) ag.edges[{static_cast<int>(i), static_cast<int>(j)}] = w;
    }
  }
  return ag;
}

namespace {

long long pairs_of(std::size_t n) {
  return static_cast<long long>(n) * (static_cast<long long>(n) - 1) / 2;
}

long long node_index(const AllocationGraph& ag, const std::string& id) {
  auto it = std::lower_bound(ag.nodes.begin(), ag.nodes.end(), id);
  if (it == ag.nodes.end() || *it != id)
    throw ConfigError("unknown fragment id in cluster: " + id);
  return it - ag.nodes.begin();
}

}  // namespace

double density(const std::vector<std::string>& cluster, const AllocationGraph& ag) {
  if (cluster.size() < 2) return 0.0;
  std::vector<int> idx;
  for (const std::string& id : cluster) idx.push_back(static_cast<int>(node_index(ag, id)));
  std::sort(idx.begin(), idx.end());
  long long sum = 0;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      auto it = ag.edges.find({idx[i], idx[j]});
      if (it != ag.edges.end()) sum += it->second;
    }
  return static_cast<double>(sum) / static_cast<double>(pairs_of(idx.size()));
}

Allocation allocate(const AllocationGraph& ag, int m, std::vector<MergeStep>* trace) {
  if (m < 1) throw ConfigError("site count must be >= 1");
  const std::size_t n = ag.nodes.size();

  Allocation result;
  if (n < static_cast<std::size_t>(m))
    result.warnings.push_back("fewer fragments than sites; " +
                              std::to_string(m - n) + " site(s) left empty");

  std::vector<std::vector<int>> clusters;
  for (std::size_t i = 0; i < n; ++i) clusters.push_back({static_cast<int>(i)});
  std::vector<bool> active(n, true);
  // Cross weights between clusters; merging just adds rows.
  std::vector<std::vector<long long>> cross(n, std::vector<long long>(n, 0));
  for (const auto& [e, w] : ag.edges) cross[e.first][e.second] = cross[e.second][e.first] = w;

  auto repr = [&](std::size_t c) { return ag.nodes[clusters[c][0]]; };

  std::size_t live = n;
  while (live > static_cast<std::size_t>(m)) {
    // Highest weight = cross / C(|union|, 2); exact fraction comparison.
    std::ptrdiff_t bi = -1, bj = -1;
    long long bnum = 0, bden = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!active[j] || cross[i][j] <= 0) continue;
        long long num = cross[i][j];
        long long den = pairs_of(clusters[i].size() + clusters[j].size());
        bool better;
        if (bi < 0) {
          better = true;
        } else {
          long long lhs = num * bden, rhs = bnum * den;
          if (lhs != rhs) {
            better = lhs > rhs;
          } else {
            auto ordered = [&](std::size_t a, std::size_t b) {
              std::pair<std::string, std::string> p{repr(a), repr(b)};
              if (p.second < p.first) std::swap(p.first, p.second);
              return p;
            };
            better = ordered(i, j) < ordered(static_cast<std::size_t>(bi),
                                             static_cast<std::size_t>(bj));
          }
        }
        if (better) {
          bi = static_cast<std::ptrdiff_t>(i);
          bj = static_cast<std::ptrdiff_t>(j);
          bnum = num;
          bden = den;
        }
      }
    }
    if (bi < 0) break;  // disconnected remainder
    std::size_t i = static_cast<std::size_t>(bi), j = static_cast<std::size_t>(bj);
    if (trace) trace->push_back({std::min(repr(i), repr(j)), std::max(repr(i), repr(j)),
                                 bnum, bden});
    clusters[i].insert(clusters[i].end(), clusters[j].begin(), clusters[j].end());
    std::sort(clusters[i].begin(), clusters[i].end());
    active[j] = false;
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == i) continue;
      cross[i][k] = cross[k][i] = cross[i][k] + cross[j][k];
    }
    --live;
  }

  // Fold disconnected leftovers into the smallest kept clusters.
  if (live > static_cast<std::size_t>(m)) {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < n; ++i)
      if (active[i]) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (clusters[a].size() != clusters[b].size())
        return clusters[a].size() > clusters[b].size();
      return repr(a) < repr(b);
    });
    for (std::size_t k = static_cast<std::size_t>(m); k < order.size(); ++k) {
      std::size_t target = order[0];
      for (std::size_t t = 0; t < static_cast<std::size_t>(m); ++t)
        if (clusters[order[t]].size() < clusters[target].size()) target = order[t];
      std::size_t victim = order[k];
      clusters[target].insert(clusters[target].end(), clusters[victim].begin(),
                              clusters[victim].end());
      std::sort(clusters[target].begin(), clusters[target].end());
      active[victim] = false;
    }
  }

  std::vector<std::vector<std::string>> named;
  for (std::size_t i = 0; i < n; ++i) {
    if (!active[i]) continue;
    std::vector<std::string> ids;
    for (int v : clusters[i]) ids.push_back(ag.nodes[v]);
    std::sort(ids.begin(), ids.end());
    named.push_back(std::move(ids));
  }
  std::sort(named.begin(), named.end());
  while (named.size() < static_cast<std::size_t>(m)) named.emplace_back();

  result.clusters = std::move(named);
  for (std::size_t site = 0; site < result.clusters.size(); ++site)
    for (const std::string& id : result.clusters[site])
      result.site_of[id] = static_cast<int>(site);
  return result;
}

}  // namespace rdffrag
